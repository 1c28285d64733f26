#pragma once

// Lattice points of O_K in the two candidate parallelepipeds
//   D(1, rho^2, 1 + 2 rho + rho^2)   and   D(1, rho^2, rho^2 rho''^2),
// the closed-form description of the second one for the p = 3 family
// (alpha_s(v,r) with ceiling corrections e1, e2), the region tables used in
// the classification, and the transformations T1, T2.

#include <vector>

#include "classify.hpp"

namespace scf {

enum class Region : int {
    P1, P2, P3, P4,
    R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15,
    S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, S11, S12, S13, S14, S15,
    FirstPar,
};

inline const char* region_name(Region r) {
    static const char* names[] = {
        "P1", "P2", "P3", "P4", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8",
        "R9", "R10", "R11", "R12", "R13", "R14", "R15", "S1", "S2", "S3", "S4",
        "S5", "S6", "S7", "S8", "S9", "S10", "S11", "S12", "S13", "S14", "S15",
        "FirstPar"};
    return names[static_cast<int>(r)];
}

struct LatticeCandidate {
    FieldElement elem;
    int parallelepiped = 2;  // 1 or 2
    Int s, v, r, w, t, l_aux, e1, e2;
    Region region = Region::FirstPar;
};

inline std::array<FieldElement, 3> first_parallelepiped_nodes(const Int& a) {
    return {FieldElement::one(a), FieldElement(a, 0, 0, 1), FieldElement(a, 1, 2, 1)};
}

inline std::array<FieldElement, 3> second_parallelepiped_nodes(const Int& a) {
    return {FieldElement::one(a), FieldElement(a, 0, 0, 1),
            FieldElement(a, -(1 + a), -(a * a + 3 * a + 3), a + 2)};
}

// exact membership test: x = t1 l1 + t2 l2 + t3 l3 with t_i in [0,1]
// (the node triangular structure makes the system solvable coordinatewise)
inline bool in_second_parallelepiped(const Int& a, const FieldElement& x) {
    // power coords: x1 = t1 - (1+a) t3, x2 = -(a^2+3a+3) t3, x3 = t2 + (a+2) t3
    Rat t3 = -x.coord(1) / Rat(a * a + 3 * a + 3);
    Rat t1 = x.coord(0) + Rat(1 + a) * t3;
    Rat t2 = x.coord(2) - Rat(a + 2) * t3;
    auto in01 = [](const Rat& t) { return t >= 0 && t <= 1; };
    return in01(t1) && in01(t2) && in01(t3);
}

inline bool in_first_parallelepiped(const Int& /*a*/, const FieldElement& x) {
    // x1 = t1 + t3, x2 = 2 t3, x3 = t2 + t3
    Rat t3 = x.coord(1) / 2;
    Rat t1 = x.coord(0) - t3;
    Rat t2 = x.coord(2) - t3;
    auto in01 = [](const Rat& t) { return t >= 0 && t <= 1; };
    return in01(t1) && in01(t2) && in01(t3);
}

// --- region tables (p = 3 family; A denotes a/3) ----------------------------

inline std::vector<Region> region_rows(const Int& a, const Int& s, const Int& v, const Int& r) {
    Int A = a / 3;
    std::vector<Region> rows;
    auto add = [&](bool cond, Region reg) {
        if (cond) rows.push_back(reg);
    };
    if (s == 0) {
        add(0 <= v && v <= a - 1 && 1 <= r && r <= a - v, Region::P1);
        add(0 <= v && v <= a && r == a - v + 1, Region::P2);
        add(0 <= v && v <= a && a - v + 2 <= r && r <= a + 1, Region::P3);
        add(1 <= v && v <= a + 1 && r == 0, Region::P4);  // (0,0) is the excluded zero slot
    } else if (s == 1) {
        add(0 <= v && v <= A && 1 <= r && r <= A, Region::R1);
        add(A + 1 <= v && v <= 2 * A - 1 && 1 <= r && r <= 2 * A - v, Region::R2);
        add(0 <= v && v <= 2 * A + 1 && r == 0, Region::R3);
        add(0 <= v && v <= A - 1 && A + 1 <= r && r <= 2 * A - v, Region::R4);
        add(A + 1 <= v && v <= 2 * A && 2 * A - v + 1 <= r && r <= A, Region::R5);
        add(2 * A + 1 <= v && v <= a - 1 && 1 <= r && r <= a - v, Region::R6);
        add(2 * A + 1 <= v && v <= a && r == a - v + 1, Region::R7);
        add(2 * A + 1 <= v && v <= a && a - v + 2 <= r && r <= A + 1, Region::R8);
        add(2 * A + 2 <= v && v <= a + 1 && r == 0, Region::R9);
        add(0 <= v && v <= A && 2 * A - v + 1 <= r && r <= a - v, Region::R10);
        add(A + 1 <= v && v <= 2 * A - 1 && A + 1 <= r && r <= a - v, Region::R11);
        add(0 <= v && v <= 2 * A && r == a - v + 1, Region::R12);
        add(1 <= v && v <= 2 * A && a - v + 2 <= r && r <= a + 1, Region::R13);
        add(2 * A + 1 <= v && v <= a && A + 2 <= r && r <= 5 * A - v + 2, Region::R14);
        add(2 * A + 2 <= v && v <= a && 5 * A - v + 3 <= r && r <= a + 1, Region::R15);
    } else {
        add(0 <= v && v <= A - 2 && 1 <= r && r <= A - v - 1, Region::S1);
        add(0 <= v && v <= A - 1 && r == 0, Region::S2);
        add(0 <= v && v <= A - 1 && A - v <= r && r <= 2 * A, Region::S3);
        add(A <= v && v <= a - 1 && 1 <= r && r <= a - v, Region::S4);
        add(A <= v && v <= a && r == a - v + 1, Region::S5);
        add(A + 1 <= v && v <= 2 * A && a - v + 2 <= r && r <= 2 * A + 1, Region::S6);
        add(2 * A + 1 <= v && v <= a && a - v + 2 <= r && r <= 4 * A - v + 1, Region::S7);
        add(A <= v && v <= a + 1 && r == 0, Region::S8);
        add(0 <= v && v <= A - 1 && 2 * A + 1 <= r && r <= a - v, Region::S9);
        add(0 <= v && v <= A - 1 && r == a - v + 1, Region::S10);
        add(1 <= v && v <= A - 1 && a - v + 2 <= r && r <= a + 1, Region::S11);
        add(A <= v && v <= 2 * A - 1 && 2 * A + 2 <= r && r <= 4 * A - v + 1, Region::S12);
        add(2 * A + 1 <= v && v <= a && 4 * A - v + 2 <= r && r <= 2 * A + 1, Region::S13);
        add(A + 1 <= v && v <= 2 * A && 4 * A - v + 2 <= r && r <= a + 1, Region::S14);
        add(2 * A + 1 <= v && v <= a && 2 * A + 2 <= r && r <= a + 1, Region::S15);
    }
    return rows;
}

// unique region of an index triple; a table-transcription bug shows up here
inline Region region_of(const Int& a, const Int& s, const Int& v, const Int& r) {
    auto rows = region_rows(a, s, v, r);
    if (rows.size() != 1)
        throw std::logic_error("region tables do not cover (s,v,r) exactly once");
    return rows[0];
}

// --- closed-form second-parallelepiped points (p = 3 family) ----------------

namespace detail {

// ceiling corrections of the closed form, with the bulleted case analysis as
// a second evaluator; the two must agree (double-entry against sign errors)
inline std::pair<Int, Int> e1_e2(const Int& a, const Int& s, const Int& v, const Int& r,
                                 const Int& t, const Int& l) {
    Int A2 = 3 * (a * a + 3 * a + 3);
    Int e1 = ceil_div(s * (a * a + 2 * a + 2) + 3 * (v - r * (a + 1)), A2);
    Int e2 = ceil_div(s * (a * a + 4 * a + 5) + 3 * (l * (a + 2) - t), A2);
    Int E1, E2;
    if (s == 0)
        E1 = (r == 0) ? 1 : 0;
    else if (s == 1)
        E1 = (3 * (r * (a + 1) - v) <= a * (a + 2)) ? 1 : 0;
    else
        E1 = (3 * (r * (a + 1) - v) <= 2 * a * (a + 2) + 3) ? 1 : 0;
    if (s == 0)
        E2 = (l == 0) ? 0 : 1;
    else if (s == 1)
        E2 = (3 * (l * (a + 2) - t) <= (2 * a + 3) * (a + 1)) ? 1 : 2;
    else
        E2 = (3 * (l * (a + 2) - t) <= a * (a + 1) - 3) ? 1 : 2;
    // the ceiling value 0 at (s,v,r) = (0,0,0) corresponds to the zero point,
    // which the enumeration never emits
    if (!(s == 0 && v == 0 && r == 0) && (e1 != E1 || e2 != E2))
        throw std::logic_error("e1/e2 case analysis disagrees with ceiling formula");
    return {E1, E2};
}

}  // namespace detail

// alpha_s(v,r) for one index triple (p = 3 family)
inline LatticeCandidate alpha_s_point(const FieldContext& ctx, const Int& s, const Int& w) {
    const Int& a = ctx.a;
    LatticeCandidate cand;
    cand.parallelepiped = 2;
    cand.s = s;
    cand.w = w;
    cand.v = w / (a + 2);
    cand.r = mod_floor(w, a + 2);
    cand.t = w / (a + 1);
    cand.l_aux = mod_floor(w, a + 1);
    auto e = detail::e1_e2(a, s, cand.v, cand.r, cand.t, cand.l_aux);
    cand.e1 = e.first;
    cand.e2 = e.second;
    // -(v + t - e1 + e2) g1 - (w + t + e2) g2 + (-s + 3(t + e2)) g3
    IntVec3 g{-(cand.v + cand.t - cand.e1 + cand.e2), -(w + cand.t + cand.e2),
              -s + 3 * (cand.t + cand.e2)};
    BasisDescriptor b3{BasisKind::Bp, Int(3), Int(1), Int(1)};
    cand.elem = from_integral_coords(a, b3, g);
    // power-basis form -(v - e1) - w rho + (t + e2) rho^2 - s g3 must agree
    FieldElement g3(a, Rat(1, 3), Rat(1, 3), Rat(1, 3));
    FieldElement alt = FieldElement(a, Rat(-(cand.v - cand.e1)), Rat(-w), Rat(cand.t + cand.e2)) -
                       Rat(s) * g3;
    if (!(alt == cand.elem)) throw std::logic_error("alpha_s power-basis form mismatch");
    cand.region = region_of(a, s, cand.v, cand.r);
    return cand;
}

inline LatticeCandidate alpha_s_point_vr(const FieldContext& ctx, const Int& s, const Int& v,
                                         const Int& r) {
    return alpha_s_point(ctx, s, v * (ctx.a + 2) + r);
}

// all second-parallelepiped lattice points for the p = 3 family, indexed by
// (s, w) with 0 <= w <= (a+1)(a+2), 0 <= s <= 2, s > 0 if w = 0
inline std::vector<LatticeCandidate> second_parallelepiped_points_p3(const FieldContext& ctx) {
    const Int& a = ctx.a;
    if (!in_p3_family(a)) throw std::invalid_argument("context not in the p=3 family");
    std::vector<LatticeCandidate> out;
    Int wmax = (a + 1) * (a + 2);
    for (Int w = 0; w <= wmax; ++w)
        for (Int s = 0; s <= 2; ++s) {
            if (w == 0 && s == 0) continue;
            LatticeCandidate cand = alpha_s_point(ctx, s, w);
            if (!cand.elem.is_algebraic_integer())
                throw std::logic_error("non-integral closed-form point");
            out.push_back(std::move(cand));
        }
    return out;
}

// --- first parallelepiped ----------------------------------------------------

// Lattice points of O_K in D(1, rho^2, 1+2rho+rho^2) for a B_p basis:
// (m + n rho + o rho^2)/p with, for each 1 <= n <= 2p-1 not divisible by p,
// the unique m, o in [n/2, n/2+p] with m = k o, n = l o (mod p); plus the
// point 1 + rho + rho^2 from the p | n branch.  Non-totally-positive
// solutions are dropped (with a note on the candidate flag).
inline std::vector<LatticeCandidate> first_parallelepiped_points(
    const FieldContext& ctx, const BasisDescriptor& basis,
    std::vector<FieldElement>* dropped = nullptr) {
    if (basis.kind != BasisKind::Bp)
        throw std::invalid_argument("first parallelepiped enumeration requires a B_p basis");
    const Int& a = ctx.a;
    const Int& p = basis.p;
    std::vector<LatticeCandidate> out;
    auto push = [&](const IntVec3& y) {
        FieldElement x = FieldElement::from_int_coords(a, y, p);
        if (!x.is_algebraic_integer()) throw std::logic_error("first-ppd point not integral");
        if (!x.is_totally_positive()) {
            if (dropped) dropped->push_back(x);
            return;
        }
        LatticeCandidate cand;
        cand.elem = std::move(x);
        cand.parallelepiped = 1;
        cand.region = Region::FirstPar;
        out.push_back(std::move(cand));
    };
    push({p, p, p});  // 1 + rho + rho^2
    for (Int n = 1; n < 2 * p; ++n) {
        if (divisible(n, p)) continue;
        // unique o, m in [n/2, n/2 + p] with o = l^-1 n, m = k o (mod p)
        Int lo = ceil_div(n, Int(2)), hi = n / 2 + p;
        std::vector<Int> os, ms;
        for (Int o = lo; o <= hi; ++o)
            if (divisible(n - basis.l * o, p)) os.push_back(o);
        if (os.size() != 1) throw std::logic_error("first-ppd o not unique");
        for (Int m = lo; m <= hi; ++m)
            if (divisible(m - basis.k * os[0], p)) ms.push_back(m);
        if (ms.size() != 1) throw std::logic_error("first-ppd m not unique");
        push({ms[0], n, os[0]});
    }
    return out;
}

// --- generic brute-force enumeration of the second parallelepiped -----------

// For each admissible t3 = u/(p(a^2+3a+3)), solve the node system for integer
// (m, n, o) with t1, t2 in [0,1], and keep the points that are algebraic
// integers (char-poly test, basis-agnostic).  Degenerate slices t3 = 0, 1 are
// excluded.  For the p = 3 family this reproduces the closed form exactly.
inline std::vector<FieldElement> second_parallelepiped_points_bruteforce(
    const FieldContext& ctx, const BasisDescriptor& basis) {
    if (basis.kind == BasisKind::UnsupportedGeneral)
        throw std::invalid_argument("unsupported basis for brute-force enumeration");
    const Int& a = ctx.a;
    const Int p = basis.denominator();
    Int A2 = a * a + 3 * a + 3;
    std::vector<FieldElement> out;
    for (Int u = 1; u < p * A2; ++u) {
        Int n = -u;
        Rat t3 = frac(u, p * A2);
        // t1 = m/p + (1+a) t3 in [0,1];  t2 = o/p - (a+2) t3 in [0,1]
        Rat shift_m = Rat(p * (1 + a)) * t3;
        Rat shift_o = Rat(p * (a + 2)) * t3;
        Int m_lo = ceil_rat(-shift_m), m_hi = floor_rat(Rat(p) - shift_m);
        Int o_lo = ceil_rat(shift_o), o_hi = floor_rat(Rat(p) + shift_o);
        for (Int m = m_lo; m <= m_hi; ++m)
            for (Int o = o_lo; o <= o_hi; ++o) {
                IntVec3 y{m, n, o};
                if (!integral_div_int(y, a, p)) continue;
                if (!totally_positive_int(y, a)) continue;
                FieldElement x = FieldElement::from_int_coords(a, y, p);
                if (!in_second_parallelepiped(a, x))
                    throw std::logic_error("brute-force point outside parallelepiped");
                out.push_back(std::move(x));
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- transformations ---------------------------------------------------------

// T1(x) = sigma(x) * (rho^2 rho''^2);  T2(x) = sigma^2(x) * rho^2.
// The multipliers are totally positive units, so both preserve
// indecomposability in both directions.
inline FieldElement transform_T1(const FieldElement& x) {
    const Int& a = x.param();
    FieldElement node3(a, Rat(-(1 + a)), Rat(-(a * a + 3 * a + 3)), Rat(a + 2));
    return x.conjugate1() * node3;
}

inline FieldElement transform_T2(const FieldElement& x) {
    const Int& a = x.param();
    return x.conjugate2() * FieldElement(a, 0, 0, 1);
}

}  // namespace scf
