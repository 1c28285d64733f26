#pragma once

// Downstream consequences of the indecomposable classification for the p = 3
// family: the Pythagoras-number witness gamma (sum of six squares that cannot
// be written with fewer), the exhaustive square search below gamma, and rank
// bounds for universal quadratic forms.

#include <functional>
#include <map>

#include "indecomposables.hpp"

namespace scf {

// gamma = 1+1+1+4 + ((a+6)/3 g1 + a/3 g2 - g3)^2 + ((5a+3)/9 g1 + (2a+3)/3 g2 - 2 g3)^2
//       = (34a^2+15a+783)/81 + (11a^2-29a-39)/27 rho - (11a-33)/27 rho^2
// Both forms are computed and must agree; Tr(gamma) = (16a^2-24a+981)/27.
inline FieldElement build_gamma(const FieldContext& ctx) {
    const Int& a = ctx.a;
    if (!in_p3_family(a)) throw std::invalid_argument("gamma requires the p=3 family");
    FieldElement g1 = FieldElement::one(a);
    FieldElement g2 = FieldElement::rho(a);
    FieldElement g3(a, Rat(1, 3), Rat(1, 3), Rat(1, 3));
    FieldElement s1 = frac(a + 6, 3) * g1 + frac(a, 3) * g2 - g3;
    FieldElement s2 = frac(5 * a + 3, 9) * g1 + frac(2 * a + 3, 3) * g2 - Rat(2) * g3;
    FieldElement gamma = FieldElement(a, 7, 0, 0) + s1 * s1 + s2 * s2;
    FieldElement closed(a, frac(34 * a * a + 15 * a + 783, 81), frac(11 * a * a - 29 * a - 39, 27),
                        frac(-(11 * a - 33), 27));
    if (!(gamma == closed)) throw std::logic_error("gamma forms disagree");
    if (gamma.trace() != frac(16 * a * a - 24 * a + 981, 27))
        throw std::logic_error("Tr(gamma) mismatch");
    if (!gamma.is_totally_positive() || !gamma.is_algebraic_integer())
        throw std::logic_error("gamma not a totally positive integer");
    return gamma;
}

// All integral omega (up to sign, omega != 0) with gamma - omega^2 totally
// positive or zero, by exhaustive box search over the conjugate bounds
// |sigma_k(omega)| < sqrt(sigma_k(gamma)).
inline std::vector<FieldElement> squares_below(const FieldContext& ctx,
                                               const BasisDescriptor& basis,
                                               const FieldElement& gamma) {
    const Int& a = ctx.a;
    const Int p = basis.denominator();
    EmbeddingData emb = make_embedding(ctx, basis, Rat(Int(1), Int(1) << 64));
    IntVec3 pg;
    {
        IntVec3 y;
        Int den = gamma.scale_to_int(y);
        if (!divisible(p, den)) throw std::invalid_argument("gamma not in (1/p)Z[rho]");
        Int m = p / den;
        pg = {y[0] * m, y[1] * m, y[2] * m};
    }
    std::array<Rat, 3> lo, hi;
    for (int k = 0; k < 3; ++k) {
        Interval e = sigma_enclosure(emb, pg, k);
        if (!(e.lo > 0)) throw std::logic_error("gamma enclosure not positive");
        Rat u = Rat(p) * sqrt_upper(e.hi / Rat(p));  // bound for sigma_k(p omega)
        lo[k] = -u;
        hi[k] = u;
    }
    std::vector<FieldElement> out;
    scan_sigma_box(emb, lo, hi, [&](const IntVec3& z) {
        if (z[0] == 0 && z[1] == 0 && z[2] == 0) return false;
        if (!integral_div_int(z, a, p)) return false;
        FieldElement omega = FieldElement::from_int_coords(a, z, p);
        FieldElement diff = gamma - omega * omega;
        if (!(diff.is_zero() || diff.is_totally_positive())) return false;
        // keep one representative of {omega, -omega}
        for (int i = 0; i < 3; ++i) {
            if (omega.coord(i) > 0) break;
            if (omega.coord(i) < 0) {
                omega = -omega;
                break;
            }
        }
        out.push_back(std::move(omega));
        return false;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// the square classes from the classification proof, as g-coordinates
// (class 5 carries the parity obstruction; classes 2-4 are the other
// irrational squares that can sit below gamma)
inline std::vector<IntVec3> class5_square_coords(const Int& a) {
    std::vector<IntVec3> out;
    for (Int r = (5 * (a - 3)) / 9; r <= 2 * (a / 3) - 1; ++r)
        out.push_back({(15 - 8 * a + 36 * r + 9 * r * r) / 9,
                       (3 - 4 * a - 4 * a * a + (12 * a + 18) * r) / 9,
                       (4 * a - 3 - 12 * r) / 3});
    return out;
}
inline IntVec3 class2_square_coords(const Int& a) {
    return {(a * a + 4 * a + 6) / 9, (a * a + 2 * a + 3) / 9, -(a / 3)};
}
inline std::vector<IntVec3> class3_square_coords(const Int& a) {
    std::vector<IntVec3> out;
    for (Int r = 0; r <= a / 3 - 1; ++r)
        out.push_back({(a * a + 10 * a + 33 + (6 * a + 36) * r + 9 * r * r) / 9,
                       (a * a + 8 * a + 3 + 6 * a * r) / 9, -(a + 6 + 6 * r) / 3});
    return out;
}
inline std::vector<IntVec3> class4_square_coords(const Int& a) {
    std::vector<IntVec3> out;
    for (Int r = a / 3 + 1; 12 * r < 5 * a - 6; ++r)
        out.push_back({(4 * a * a + 10 * a + 6 - (12 * a + 18) * r + 9 * r * r) / 9,
                       (3 * a * a + 2 * a + 3 - 6 * a * r) / 9, -(a - 2 * r)});
    return out;
}

struct SquaresDecomposition {
    Int min_squares = 0;
    std::vector<FieldElement> omegas;  // one optimal decomposition, omega_i^2 summing to gamma
};

// Least k with gamma a sum of k squares from the given list (multisets
// allowed).  Depth-first search with iterative deepening; squares ordered by
// descending trace; pruning by trace additivity and total positivity of the
// remainder; memoization of failed (remainder, start, depth) states.
inline SquaresDecomposition min_squares_decomposition(const FieldContext& ctx,
                                                      const BasisDescriptor& basis,
                                                      const FieldElement& gamma,
                                                      const std::vector<FieldElement>& omegas) {
    const Int& a = ctx.a;
    struct Sq {
        FieldElement omega;
        IntVec3 g;  // g-coords of omega^2
        Int trace;
    };
    std::vector<Sq> sq;
    for (const auto& w : omegas) {
        FieldElement s = w * w;
        Sq e{w, integral_coords(a, basis, s), Int(0)};
        Rat t = s.trace();
        e.trace = t.get_num();
        sq.push_back(std::move(e));
    }
    std::sort(sq.begin(), sq.end(), [](const Sq& x, const Sq& y) { return x.trace > y.trace; });
    IntVec3 target = integral_coords(a, basis, gamma);

    auto g_trace = [&](const IntVec3& c) -> Int {
        // Tr over the integral basis; for B_p: Tr(g3) = (a^2+(l+2)a+3k+6)/p
        Int trg3num = a * a + (basis.l + 2) * a + 3 * basis.k + 6;
        return 3 * c[0] + a * c[1] + c[2] * trg3num / basis.denominator();
    };
    auto tp_or_zero = [&](const IntVec3& c) {
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) return true;
        IntVec3 y{basis.denominator() * c[0] + basis.k * c[2],
                  basis.denominator() * c[1] + basis.l * c[2], c[2]};
        return totally_positive_int(y, a);
    };

    std::map<std::tuple<std::string, std::size_t, int>, bool> failed;
    auto key_of = [](const IntVec3& c, std::size_t start, int left) {
        return std::make_tuple(c[0].get_str() + "," + c[1].get_str() + "," + c[2].get_str(),
                               start, left);
    };
    std::vector<std::size_t> chosen;
    std::function<bool(const IntVec3&, std::size_t, int)> dfs = [&](const IntVec3& rem,
                                                                    std::size_t start, int left) {
        if (rem[0] == 0 && rem[1] == 0 && rem[2] == 0) return true;
        if (left == 0) return false;
        Int trem = g_trace(rem);
        if (trem <= 0) return false;
        auto key = key_of(rem, start, left);
        if (auto it = failed.find(key); it != failed.end()) return false;
        for (std::size_t i = start; i < sq.size(); ++i) {
            if (sq[i].trace > trem) continue;
            if (sq[i].trace * left < trem) break;  // descending order: no hope from here
            IntVec3 nrem{rem[0] - sq[i].g[0], rem[1] - sq[i].g[1], rem[2] - sq[i].g[2]};
            if (!tp_or_zero(nrem)) continue;
            chosen.push_back(i);
            if (dfs(nrem, i, left - 1)) return true;
            chosen.pop_back();
        }
        failed.emplace(key, true);
        return false;
    };

    for (int limit = 1; limit <= 16; ++limit) {
        chosen.clear();
        failed.clear();
        if (dfs(target, 0, limit)) {
            SquaresDecomposition out;
            out.min_squares = limit;
            for (auto i : chosen) out.omegas.push_back(sq[i].omega);
            return out;
        }
    }
    throw std::logic_error("no decomposition into squares found");
}

// structure of a decomposition: class-5 usage and the rational-square remainder
struct DecompositionStructure {
    int class5_count = 0;
    int rational_count = 0;
    Rat rational_sum;  // sum of the rational squares used
};

inline DecompositionStructure decomposition_structure(const FieldContext& ctx,
                                                      const BasisDescriptor& basis,
                                                      const std::vector<FieldElement>& omegas) {
    DecompositionStructure st;
    st.rational_sum = 0;
    auto c5 = class5_square_coords(ctx.a);
    for (const auto& w : omegas) {
        if (w.is_rational()) {
            ++st.rational_count;
            st.rational_sum += w.coord(0) * w.coord(0);
            continue;
        }
        IntVec3 g = integral_coords(ctx.a, basis, w * w);
        for (const auto& c : c5)
            if (c == g) {
                ++st.class5_count;
                break;
            }
    }
    return st;
}

struct UqfBounds {
    Int a;
    Int S_size;            // indecomposables mod squares of units
    Int n_trace1;          // triangle size (a^2+3a)/18
    Int diag_upper;        // 6 * S_size
    Rat classical_lower;   // n_trace1 / 3
    bool nonclassical_emitted = false;
    Rat nonclassical_lower_sq;  // square of sqrt(n_trace1)/3 (the bound is irrational)
};

// Rank bounds for universal quadratic forms over O_K.  The non-classical
// bound applies only when n_trace1 >= 240 (family members with a > 64).
inline UqfBounds uqf_bounds(const FieldContext& ctx) {
    const Int& a = ctx.a;
    if (!in_p3_family(a)) throw std::invalid_argument("uqf bounds require the p=3 family");
    UqfBounds out;
    out.a = a;
    out.S_size = (a * a + 3 * a) / 18 + 2 * a + 2;
    out.n_trace1 = (a * a + 3 * a) / 18;
    out.diag_upper = 6 * out.S_size;
    out.classical_lower = frac(out.n_trace1, 3);
    out.nonclassical_emitted = out.n_trace1 >= 240;
    out.nonclassical_lower_sq = frac(out.n_trace1, 9);
    return out;
}

}  // namespace scf
