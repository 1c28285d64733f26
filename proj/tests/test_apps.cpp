#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <scf/apps.hpp>

using namespace scf;

TEST_CASE("gamma construction") {
    FieldContext ctx = FieldContext::make(21);
    FieldElement gamma = build_gamma(ctx);
    CHECK(gamma.trace() == 279);  // (16a^2 - 24a + 981)/27 at a = 21
    CHECK(gamma.is_totally_positive());

    // g-coordinates 206 g1 + 163 g2 - 22 g3
    BasisDescriptor basis = classify(ctx.a).basis;
    CHECK(integral_coords(ctx.a, basis, gamma) == IntVec3{206, 163, -22});

    // all conjugates below a^2: a^2 - gamma totally positive
    FieldElement bound(ctx.a, Rat(ctx.a * ctx.a), 0, 0);
    CHECK((bound - gamma).is_totally_positive());

    CHECK_THROWS_AS(build_gamma(FieldContext::make(22)), std::invalid_argument);
}

TEST_CASE("squares below gamma at a=21") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    FieldElement gamma = build_gamma(ctx);
    auto sqs = squares_below(ctx, basis, gamma);
    CHECK(sqs.size() == 13);

    // includes 1; every rational omega satisfies |omega| < a
    bool has_one = false;
    int rational = 0;
    for (const auto& w : sqs) {
        if (w == FieldElement::one(ctx.a)) has_one = true;
        if (w.is_rational()) {
            ++rational;
            CHECK(abs(w.coord(0).get_num()) < ctx.a);
            CHECK_FALSE((w.is_unit() && !(w == FieldElement::one(ctx.a))));
        }
    }
    CHECK(has_one);
    CHECK(rational == 5);

    // no unit except 1 has its square below gamma
    for (const auto& w : sqs)
        if (!(w == FieldElement::one(ctx.a))) CHECK_FALSE(abs(w.norm().get_num()) == 1);

    // the irrational squares realized at a=21 are exactly four class-3 and
    // four class-5 elements; the class-2 square (rho' rho'' g3)^2 is NOT
    // below gamma here (the unit lemma is a conditional, not an existence
    // claim, and its hypotheses bind only for large a)
    std::set<IntVec3> c3set, c5set, got;
    for (const auto& c : class3_square_coords(ctx.a)) c3set.insert(c);
    for (const auto& c : class5_square_coords(ctx.a)) c5set.insert(c);
    int n3 = 0, n5 = 0;
    for (const auto& w : sqs) {
        if (w.is_rational()) continue;
        IntVec3 sg = integral_coords(ctx.a, basis, w * w);
        if (c3set.count(sg)) ++n3;
        if (c5set.count(sg)) ++n5;
        got.insert(sg);
    }
    CHECK(n3 == 4);
    CHECK(n5 == 4);
    CHECK(got.size() == 8);
    CHECK(got.count(class2_square_coords(ctx.a)) == 0);

    // verified closure: gamma - w^2 totally positive or zero for all entries
    for (const auto& w : sqs) {
        FieldElement d = gamma - w * w;
        CHECK((d.is_zero() || d.is_totally_positive()));
    }
}

TEST_CASE("parity isolates the class-5 squares") {
    for (const Int& a : {Int(21), Int(30)}) {
        FieldContext ctx = FieldContext::make(a);
        BasisDescriptor basis = classify(a).basis;
        FieldElement gamma = build_gamma(ctx);
        IntVec3 gg = integral_coords(a, basis, gamma);
        bool odd_a = mod_floor(a, Int(2)) == 1;
        std::set<IntVec3> c5;
        for (const auto& c : class5_square_coords(a)) c5.insert(c);
        for (const auto& w : squares_below(ctx, basis, gamma)) {
            IntVec3 sg = integral_coords(a, basis, w * w);
            // odd a: compare g2-coefficient parity; even a: g3-coefficient parity
            bool match = odd_a ? mod_floor(sg[1], Int(2)) == mod_floor(gg[1], Int(2))
                               : mod_floor(sg[2], Int(2)) == mod_floor(gg[2], Int(2));
            CHECK(match == (c5.count(sg) == 1));
        }
    }
}

TEST_CASE("minimal number of squares for gamma at a=21") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    FieldElement gamma = build_gamma(ctx);
    auto sqs = squares_below(ctx, basis, gamma);
    auto dec = min_squares_decomposition(ctx, basis, gamma, sqs);
    CHECK(dec.min_squares == 6);
    FieldElement sum = FieldElement::zero(ctx.a);
    for (const auto& w : dec.omegas) sum = sum + w * w;
    CHECK(sum == gamma);

    auto st = decomposition_structure(ctx, basis, dec.omegas);
    CHECK(st.class5_count == 1);
    CHECK(st.rational_count == 4);
    CHECK(st.rational_sum == 7);
}

TEST_CASE("rational 7 needs four squares") {
    FieldContext ctx = FieldContext::make(21);
    BasisDescriptor basis = classify(ctx.a).basis;
    FieldElement seven(ctx.a, 7, 0, 0);
    auto sqs = squares_below(ctx, basis, seven);
    auto dec = min_squares_decomposition(ctx, basis, seven, sqs);
    CHECK(dec.min_squares == 4);  // 7 = 4 + 1 + 1 + 1
}

TEST_CASE("the canonical six-square decomposition") {
    // class-3 square with r = 0, class-5 square with r = 5(a-3)/9, plus 7
    for (const Int& a : {Int(21), Int(30)}) {
        FieldContext ctx = FieldContext::make(a);
        BasisDescriptor basis = classify(a).basis;
        FieldElement gamma = build_gamma(ctx);
        FieldElement c3 = from_integral_coords(a, basis, class3_square_coords(a)[0]);
        IntVec3 c5c = class5_square_coords(a)[0];
        FieldElement c5 = from_integral_coords(a, basis, c5c);
        CHECK(gamma - c3 - c5 == FieldElement(a, 7, 0, 0));
    }
}

TEST_CASE("universal quadratic form bounds") {
    UqfBounds b21 = uqf_bounds(FieldContext::make(21));
    CHECK(b21.S_size == 72);
    CHECK(b21.n_trace1 == 28);
    CHECK(b21.diag_upper == 432);
    CHECK(b21.classical_lower == Rat(28, 3));
    CHECK_FALSE(b21.nonclassical_emitted);

    // non-classical bound only for n >= 240, i.e. family members with a > 64
    UqfBounds b57 = uqf_bounds(FieldContext::make(57));
    CHECK_FALSE(b57.nonclassical_emitted);
    UqfBounds b75 = uqf_bounds(FieldContext::make(75));
    CHECK(b75.nonclassical_emitted);
    CHECK(b75.n_trace1 == (75 * 75 + 3 * 75) / 18);
    // the bound itself is sqrt(n)/3: stored as its square n/9
    CHECK(b75.nonclassical_lower_sq == Rat(b75.n_trace1, 9));
}
