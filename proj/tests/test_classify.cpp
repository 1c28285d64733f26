#include <catch2/catch_amalgamated.hpp>

#include <scf/classify.hpp>

using namespace scf;

TEST_CASE("cube-free split") {
    CHECK(cubefree_split(Int(513)) == std::pair<Int, Int>{19, 3});
    CHECK(cubefree_split(Int(8)) == std::pair<Int, Int>{1, 2});
    // 1911 = 3 * 7^2 * 13 has no cube factor
    CHECK(cubefree_split(Int(1911)) == std::pair<Int, Int>{1911, 1});
    CHECK(cubefree_split(Int(1)) == std::pair<Int, Int>{1, 1});
    CHECK_THROWS_AS(cubefree_split(Int(0)), std::invalid_argument);
    // b always cube-free and n = b c^3
    for (int n = 1; n <= 600; ++n) {
        auto [b, c] = cubefree_split(Int(n));
        CHECK(b * c * c * c == n);
        for (Int p = 2; p * p * p <= b; ++p) CHECK_FALSE(divisible(b, p * p * p));
    }
}

TEST_CASE("conductor and module index") {
    CHECK(conductor(Int(21)) == 171);  // 19 * 3^2
    CHECK(conductor(Int(41)) == 259);  // 7 * 37 (Delta = 7^2 * 37)
    // a=90: Delta = 9 * 7^2 * 19, 3 | a, a = 9 (mod 27) => 9 * 7 * 19
    CHECK(conductor(Int(90)) == 1197);
    CHECK(module_index(Int(21)) == 3);
    CHECK(module_index(Int(41)) == 7);
    CHECK(module_index(Int(90)) == 7);
    // cross-check delta = 7 against B_7(4,3) membership at a = 90
    FieldElement g3(Int(90), Rat(4, 7), Rat(3, 7), Rat(1, 7));
    CHECK(g3.is_algebraic_integer());
}

TEST_CASE("monogenity criterion") {
    CHECK_FALSE(is_monogenic(Int(21)));  // delta = 3, not a cube
    CHECK(is_monogenic(Int(5)));         // exceptional list
    CHECK(is_monogenic(Int(4)));         // Delta = 37 square-free, delta = 1
    CHECK(is_monogenic(Int(54)));        // delta = 343 = 7^3
    CHECK_FALSE(is_monogenic(Int(41)));
    for (const auto& a : exceptional_a_list()) CHECK(is_monogenic(a));
}

TEST_CASE("find_kl") {
    CHECK(find_kl(Int(41), Int(7)) == std::pair<Int, Int>{4, 3});
    CHECK(find_kl(Int(21), Int(3)) == std::pair<Int, Int>{1, 1});
    CHECK(find_kl(Int(66), Int(13)) == std::pair<Int, Int>{3, 8});
    CHECK_FALSE(find_kl(Int(4), Int(5)).has_value());
    CHECK_THROWS_AS(find_kl(Int(41), Int(6)), std::invalid_argument);
    // uniqueness for a genuine B_p field: exactly one pair passes
    CHECK(find_kl_all(Int(41), Int(7)).size() == 1);
    CHECK(find_kl_all(Int(154), Int(19)).size() == 1);
}

TEST_CASE("family parameters and Table 1") {
    // (p, a mod p^2, (k,l)) rows for 7 <= p <= 103
    struct Row {
        int p, a, k, l;
    };
    const Row table[] = {
        {7, 5, 2, 6},      {7, 41, 4, 3},     {13, 66, 3, 8},    {13, 100, 9, 7},
        {19, 154, 11, 5},  {19, 204, 7, 16},  {31, 356, 25, 21}, {31, 602, 5, 12},
        {37, 374, 10, 22}, {37, 992, 26, 17}, {43, 577, 36, 31}, {43, 1269, 6, 14},
        {61, 1259, 47, 35}, {61, 2459, 13, 28}, {67, 2097, 37, 9}, {67, 2389, 29, 60},
        {73, 1265, 64, 57}, {73, 4061, 8, 18}, {79, 1096, 55, 33}, {79, 5142, 23, 48},
        {97, 4451, 35, 72}, {97, 4955, 61, 27}, {103, 271, 46, 94}, {103, 10335, 56, 11},
    };
    for (int i = 0; i < 24; i += 2) {
        Int p = table[i].p;
        auto fam = family_parameters(p);
        REQUIRE(fam.has_value());
        for (int j = 0; j < 2; ++j) {
            CHECK((*fam)[j].a == table[i + j].a);
            CHECK((*fam)[j].k == table[i + j].k);
            CHECK((*fam)[j].l == table[i + j].l);
        }
        // the two residues are exchanged by a -> a^2 + 2a + 6 mod p^2
        Int a1 = (*fam)[0].a, a2 = (*fam)[1].a;
        bool swapped = mod_floor(a1 * a1 + 2 * a1 + 6, p * p) == a2 ||
                       mod_floor(a2 * a2 + 2 * a2 + 6, p * p) == a1;
        CHECK(swapped);
    }
    CHECK_FALSE(family_parameters(Int(11)).has_value());  // 11 = 5 (mod 6)
    CHECK_THROWS_AS(family_parameters(Int(3)), std::invalid_argument);
}

TEST_CASE("classification") {
    Classification c21 = classify(Int(21));
    CHECK(c21.delta_disc == 513);
    CHECK(c21.conductor == 171);
    CHECK(c21.module_index == 3);
    CHECK_FALSE(c21.monogenic);
    CHECK(c21.basis.kind == BasisKind::Bp);
    CHECK(c21.basis.p == 3);
    CHECK(c21.basis.k == 1);
    CHECK(c21.basis.l == 1);

    // Delta(48) = 2457 = 27 * 91, 91 = 7 * 13 square-free, 48 = 21 (mod 27)
    Classification c48 = classify(Int(48));
    CHECK(c48.basis.kind == BasisKind::Bp);
    CHECK(c48.basis.p == 3);

    // a = 678: v7(Delta) = 2 keeps it out of the p=3 family despite 678 = 3 (mod 27)
    CHECK_FALSE(in_p3_family(Int(678)));
    Classification c678 = classify(Int(678));
    CHECK(c678.module_index == 21);
    CHECK(c678.basis.kind == BasisKind::UnsupportedGeneral);

    Classification c41 = classify(Int(41));
    CHECK(c41.module_index == 7);
    CHECK(c41.basis.kind == BasisKind::Bp);
    CHECK(c41.basis.p == 7);
    CHECK(c41.basis.k == 4);
    CHECK(c41.basis.l == 3);

    Classification c90 = classify(Int(90));
    CHECK(c90.basis.p == 7);
    CHECK(c90.basis.k == 4);
    CHECK(c90.basis.l == 3);

    Classification c4 = classify(Int(4));
    CHECK(c4.module_index == 1);
    CHECK(c4.basis.kind == BasisKind::PowerBasis);
    CHECK(c4.monogenic);
}

TEST_CASE("Canovas-Orvay form") {
    auto pq21 = to_canovas_form(Int(21));
    CHECK(pq21 == std::pair<Int, Int>{171, 5});
    CHECK(4 * pq21.first - 27 * pq21.second * pq21.second == 9);
    CHECK(to_canovas_form(Int(3)) == std::pair<Int, Int>{9, 1});  // q > 2 fails at the boundary
    auto pq48 = to_canovas_form(Int(48));
    CHECK(pq48 == std::pair<Int, Int>{819, 11});
    CHECK(4 * pq48.first - 27 * pq48.second * pq48.second == 9);
    CHECK_THROWS_AS(to_canovas_form(Int(20)), std::invalid_argument);
}

TEST_CASE("integral basis and coordinates") {
    Int a = 41;
    BasisDescriptor basis = classify(a).basis;
    auto g = integral_basis(a, basis);
    CHECK(g[2] == FieldElement(a, Rat(4, 7), Rat(3, 7), Rat(1, 7)));
    FieldElement x = Rat(2) * g[0] - Rat(5) * g[1] + Rat(3) * g[2];
    IntVec3 c = integral_coords(a, basis, x);
    CHECK(c == IntVec3{2, -5, 3});
    CHECK(from_integral_coords(a, basis, c) == x);
    CHECK_THROWS_AS(integral_coords(a, basis, FieldElement(a, Rat(1, 7), 0, 0)),
                    std::domain_error);
}

TEST_CASE("discriminant of B_p equals (Delta/p)^2") {
    // disc(g1, g2, g3) = det(Tr(g_i g_j)) must equal the conductor squared
    for (const Int& a : {Int(21), Int(41), Int(90)}) {
        Classification cl = classify(a);
        auto g = integral_basis(a, cl.basis);
        std::array<std::array<Rat, 3>, 3> M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M[i][j] = (g[i] * g[j]).trace();
        Rat det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                  M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        Rat expected = Rat(cl.delta_disc / cl.basis.p) * Rat(cl.delta_disc / cl.basis.p);
        CHECK(det == expected);
        CHECK(Rat(cl.conductor) * Rat(cl.conductor) == expected);
    }
}
