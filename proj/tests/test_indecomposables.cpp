#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <scf/indecomposables.hpp>

using namespace scf;

TEST_CASE("theorem list generation") {
    FieldContext ctx = FieldContext::make(21);
    auto list = generate_theorem_list(ctx);
    CHECK(list.size() == 72);  // (a^2+3a)/18 + 2a + 2 at a = 21

    // family (ii), r=1 is -rho + rho^2
    bool found = false;
    for (const auto& rec : list)
        if (rec.family == IndecFamily::II && rec.param_r == 1) {
            CHECK(rec.elem == FieldElement(ctx.a, 0, -1, 1));
            CHECK(rec.min_trace == 2);
            found = true;
        }
    CHECK(found);

    // family (vi), r=0 is -g2 + g3
    BasisDescriptor b3 = classify(ctx.a).basis;
    for (const auto& rec : list)
        if (rec.family == IndecFamily::VI && rec.param_r == 0)
            CHECK(rec.elem == from_integral_coords(ctx.a, b3, {0, -1, 1}));

    // trace strata as stated
    for (const auto& rec : list) {
        bool two = rec.family == IndecFamily::II || rec.family == IndecFamily::III ||
                   rec.family == IndecFamily::IV;
        CHECK(rec.min_trace == (two ? 2 : 1));
    }

    CHECK(generate_theorem_list(FieldContext::make(30)).size() == 117);
    CHECK_THROWS_AS(generate_theorem_list(FieldContext::make(20)), std::invalid_argument);
}

TEST_CASE("oracle basics") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    FieldElement g3(ctx, Rat(1, 3), Rat(1, 3), Rat(1, 3));

    auto r1 = is_indecomposable_bruteforce(ctx, basis, g3);
    CHECK(r1.indecomposable);

    auto r2 = is_indecomposable_bruteforce(ctx, basis, Rat(2) * g3);
    CHECK_FALSE(r2.indecomposable);
    REQUIRE(r2.witness.has_value());
    CHECK(r2.witness->first + r2.witness->second == Rat(2) * g3);
    CHECK(r2.witness->first.is_totally_positive());
    CHECK(r2.witness->second.is_totally_positive());
    CHECK(r2.witness->first.is_algebraic_integer());

    CHECK_THROWS_AS(is_indecomposable_bruteforce(ctx, basis, FieldElement::rho(ctx.a)),
                    std::invalid_argument);
}

TEST_CASE("displayed decomposition of alpha_0(0, r) for large r") {
    // alpha_0(0,r) with 2a/3+1 <= r <= a decomposes as alpha_1(0, 2a/3) plus
    // an S1/S2 point alpha_2(0, r - 2a/3 - 1)
    FieldContext ctx = FieldContext::make(21);
    Int a = ctx.a, A = a / 3;
    for (Int r = 2 * A + 1; r <= a; ++r) {
        FieldElement x = alpha_s_point_vr(ctx, 0, 0, r).elem;
        FieldElement p1 = alpha_s_point_vr(ctx, 1, 0, 2 * A).elem;
        FieldElement p2 = alpha_s_point_vr(ctx, 2, 0, r - 2 * A - 1).elem;
        CHECK(p1 + p2 == x);
        CHECK(p1.is_totally_positive());
        CHECK(p2.is_totally_positive());
        auto res = is_indecomposable_bruteforce(ctx, classify(a).basis, x);
        CHECK_FALSE(res.indecomposable);
    }
}

TEST_CASE("witness generators for the displayed s=0 decompositions") {
    // the four case families of the s=0 decomposition proof, checked for all
    // in-range (v, r): each displayed summand is totally positive and the sum
    // reconstructs alpha_0(v, r)
    for (const Int& a : {Int(21), Int(30)}) {
        FieldContext ctx = FieldContext::make(a);
        Int A = a / 3;
        // 0 <= v <= a/3-1, a/3+1 <= r <= 2a/3-v: alpha - g3 is a family (v) point
        FieldElement g3(ctx, Rat(1, 3), Rat(1, 3), Rat(1, 3));
        for (Int v = 0; v <= A - 1; ++v)
            for (Int r = A + 1; r <= 2 * A - v; ++r) {
                FieldElement x = alpha_s_point_vr(ctx, 0, v, r).elem;
                FieldElement rest = x - g3;
                CHECK(rest == alpha_s_point_vr(ctx, 1, v, r).elem);
                CHECK(rest.is_totally_positive());
            }
        // 1 <= v <= a/3-1, v+1 <= r <= a/3: alpha_1(0, a/3+1) + S9/S10/S11 point
        for (Int v = 1; v <= A - 1; ++v)
            for (Int r = v + 1; r <= A; ++r) {
                FieldElement x = alpha_s_point_vr(ctx, 0, v, r).elem;
                FieldElement p1 = alpha_s_point_vr(ctx, 1, 0, A + 1).elem;
                FieldElement p2 = alpha_s_point_vr(ctx, 2, v - 1, r + 2 * A).elem;
                CHECK(p1 + p2 == x);
                CHECK(p2.is_totally_positive());
            }
    }
}

TEST_CASE("verify classification end to end at a=21") {
    FieldContext ctx = FieldContext::make(21);
    VerifyReport rep = verify_classification(ctx);
    CHECK(rep.ok);
    CHECK(rep.candidate_count == 1525);  // 3(a+1)(a+2)+2 points plus 5 first-ppd points
    CHECK(Int(rep.indec_count) == rep.expected_count);
    CHECK(rep.expected_count == 72);
    CHECK(rep.mismatches.empty());
}

TEST_CASE("T1 maps the minimal-trace-2 families cyclically") {
    // T1 sends (ii) -> (iv) -> (iii) -> (ii) bijectively
    FieldContext ctx = FieldContext::make(21);
    auto list = generate_theorem_list(ctx);
    std::set<FieldElement> f2, f3, f4;
    for (const auto& rec : list) {
        if (rec.family == IndecFamily::II) f2.insert(rec.elem);
        if (rec.family == IndecFamily::III) f3.insert(rec.elem);
        if (rec.family == IndecFamily::IV) f4.insert(rec.elem);
    }
    auto image = [](const std::set<FieldElement>& src) {
        std::set<FieldElement> out;
        for (const auto& x : src) out.insert(transform_T1(x));
        return out;
    };
    CHECK(image(f2) == f4);
    CHECK(image(f4) == f3);
    CHECK(image(f3) == f2);
}

TEST_CASE("trace-1 records certify against the pairing") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    DualBasis db = dual_basis(ctx, basis);
    int checked = 0;
    for (const auto& rec : generate_theorem_list(ctx)) {
        if (rec.min_trace != 1 || checked >= 12) continue;
        MinTraceResult mt = minimal_trace(ctx, db, rec.elem);
        CHECK(mt.min_trace == 1);
        CHECK(trace_pairing(ctx, db, mt.witness, rec.gcoords) == 1);
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("distinctness spot check") {
    // no two records are associated by a small totally positive unit
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    auto list = generate_theorem_list(ctx);
    for (std::size_t i = 0; i < list.size(); i += 7)
        for (std::size_t j = i + 1; j < list.size(); j += 5)
            CHECK_FALSE(unit_equivalent(basis, list[i].elem, list[j].elem));
}

TEST_CASE("norm extremes") {
    NormExtremes n21 = norm_extremes(FieldContext::make(21));
    CHECK(n21.min_nonrational == 19);
    CHECK(n21.max_indec == 855);
    CHECK(n21.argmin.norm() == 19);

    NormExtremes n30 = norm_extremes(FieldContext::make(30));
    CHECK(n30.min_nonrational == 37);  // Delta/27 = 999/27
    CHECK(n30.max_indec == (2 * 27000 + 9 * 900 + 27 * 30 + 27) / 27);

    NormExtremes n57 = norm_extremes(FieldContext::make(57));
    CHECK(n57.min_nonrational == 117);  // 2a+3
    CHECK(n57.max_indec == 16129);      // Delta^2/729 = 127^2
}

TEST_CASE("first-parallelepiped tables for p=13") {
    auto rows = first_par_indec_table(Int(13));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].a_residue == 66);
    CHECK(rows[0].a == 235);  // 66 itself is exceptional (module index 351)
    CHECK(rows[0].k == 3);
    CHECK(rows[0].l == 8);
    std::vector<IntVec3> exp66 = {{-1, -3, 5}, {-1, -3, 6}, {0, -1, 2}};
    CHECK(rows[0].indecomposables == exp66);
    CHECK(rows[1].a == 100);
    std::vector<IntVec3> exp100 = {{-4, -3, 6}, {-3, -2, 5}, {-1, -1, 2}};
    CHECK(rows[1].indecomposables == exp100);
}

TEST_CASE("oracle agrees with minimal trace 1 implying indecomposability") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    DualBasis db = dual_basis(ctx, basis);
    // every element of minimal trace 1 is indecomposable
    for (const Int& w : {Int(3), Int(55), Int(100)}) {
        FieldElement x = alpha_s_point(ctx, Int(1), w).elem;
        if (minimal_trace(ctx, db, x).min_trace == 1)
            CHECK(is_indecomposable_bruteforce(ctx, basis, x).indecomposable);
    }
}
