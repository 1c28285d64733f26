#pragma once

// Dual basis {phi_1, phi_2, phi_3} of the codifferent O_K^v with respect to
// the trace form (Tr(g_i phi_j) = delta_ij), integer trace pairing in dual
// coordinates, and certified minimal traces of totally positive integers.

#include <optional>

#include "scan.hpp"

namespace scf {

struct DualBasis {
    BasisDescriptor basis;
    std::array<FieldElement, 3> phi;
    std::array<std::array<Rat, 3>, 3> gram;      // M = (Tr(g_i g_j))
    std::array<std::array<Rat, 3>, 3> gram_inv;  // M^{-1}; phi_j has g-coords column j
};

inline DualBasis dual_basis(const FieldContext& ctx, const BasisDescriptor& basis) {
    if (basis.kind == BasisKind::UnsupportedGeneral)
        throw std::invalid_argument("dual basis requires a supported basis");
    auto g = integral_basis(ctx.a, basis);
    DualBasis out;
    out.basis = basis;
    auto& M = out.gram;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = (g[i] * g[j]).trace();
    // exact 3x3 inversion by adjugate
    Rat det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
              M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
              M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    if (det == 0) throw std::logic_error("singular Gram matrix");
    auto minor2 = [&](int r0, int r1, int c0, int c1) -> Rat {
        return M[r0][c0] * M[r1][c1] - M[r0][c1] * M[r1][c0];
    };
    auto& W = out.gram_inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            if (r0 > r1) std::swap(r0, r1);
            if (c0 > c1) std::swap(c0, c1);
            Rat cof = minor2(r0, r1, c0, c1);
            if ((i + j) % 2) cof = -cof;
            W[j][i] = cof / det;
        }
    for (int j = 0; j < 3; ++j) {
        FieldElement phi = FieldElement::zero(ctx.a);
        for (int k = 0; k < 3; ++k) phi = phi + W[k][j] * g[k];
        out.phi[j] = phi;
    }
    // duality check, exact
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if ((g[i] * out.phi[j]).trace() != Rat(i == j ? 1 : 0))
                throw std::logic_error("dual basis fails Tr(g_i phi_j) = delta_ij");
    return out;
}

struct CodifferentElement {
    IntVec3 dual_coords;  // over {phi_1, phi_2, phi_3}
    FieldElement as_field_elem;
};

inline CodifferentElement codifferent_element(const DualBasis& db, const IntVec3& u) {
    FieldElement x = FieldElement::zero(db.phi[0].param());
    for (int i = 0; i < 3; ++i) x = x + Rat(u[i]) * db.phi[i];
    return {u, x};
}

// Tr(d * alpha) = sum_i u_i a_i for alpha = sum a_i g_i; asserted against the
// independent char-poly route.
inline Int trace_pairing(const FieldContext& ctx, const DualBasis& db,
                         const CodifferentElement& d, const IntVec3& alpha_coords) {
    Int t = d.dual_coords[0] * alpha_coords[0] + d.dual_coords[1] * alpha_coords[1] +
            d.dual_coords[2] * alpha_coords[2];
    FieldElement alpha = from_integral_coords(ctx.a, db.basis, alpha_coords);
    if ((d.as_field_elem * alpha).trace() != Rat(t))
        throw std::logic_error("trace pairing disagrees with char-poly trace");
    return t;
}

struct MinTraceResult {
    Int min_trace;
    CodifferentElement witness;
    bool certified = true;
};

namespace detail {

// integer range of sum_k J_k * [0, U_k] for interval coefficients J_k
inline Interval weighted_box(const std::array<Interval, 3>& J, const std::array<Rat, 3>& U) {
    Interval acc = Interval::point(Rat(0));
    for (int k = 0; k < 3; ++k) acc = acc + J[k] * Interval(Rat(0), U[k]);
    return acc;
}

}  // namespace detail

// Least t >= 1 with Tr(d alpha) = t for some totally positive d in O_K^v,
// plus a witness.  Certification: every d > 0 with Tr(d alpha) = t satisfies
// 0 < sigma_k(d) < t / sigma_k(alpha), which converts to a finite integer box
// in dual coordinates; the box is enumerated exactly.  The loop terminates
// because d = 1 lies in the codifferent, so t <= Tr(alpha).
// With certify = false the per-axis box is clipped (flagged uncertified when
// clipping actually discarded part of the box).
inline MinTraceResult minimal_trace(const FieldContext& ctx, const DualBasis& db,
                                    const FieldElement& alpha, bool certify = true,
                                    const Int& heuristic_box = Int(4096)) {
    if (!alpha.is_algebraic_integer() || !alpha.is_totally_positive())
        throw std::invalid_argument("minimal trace requires a totally positive integer");
    IntVec3 c = integral_coords(ctx.a, db.basis, alpha);

    // refine until all conjugates of alpha are certified positive and sharp
    FieldContext fine = ctx;
    auto enclosures_ok = [&]() {
        for (int k = 0; k < 3; ++k) {
            Interval e = conjugate_enclosure(fine, alpha, k);
            if (!(e.lo > 0) || e.width() * 4 > e.lo) return false;
        }
        return true;
    };
    while (!enclosures_ok()) fine = fine.refined(fine.interval_precision / 65536);

    std::array<Interval, 3> sig_alpha;
    std::array<std::array<Interval, 3>, 3> sig_g;  // sig_g[i][k] = sigma_k(g_i)
    auto g = integral_basis(ctx.a, db.basis);
    for (int k = 0; k < 3; ++k) {
        sig_alpha[k] = conjugate_enclosure(fine, alpha, k);
        for (int i = 0; i < 3; ++i) sig_g[i][k] = conjugate_enclosure(fine, g[i], k);
    }

    // pivot index for solving u . c = t
    int piv = 0;
    for (int i = 1; i < 3; ++i)
        if (abs(c[i]) > abs(c[piv])) piv = i;
    if (c[piv] == 0) throw std::logic_error("zero coordinate vector");
    int i1 = (piv + 1) % 3, i2 = (piv + 2) % 3;

    Int t_cap = ceil_rat(alpha.trace());  // d = 1 witnesses t = Tr(alpha)
    bool truncated = false;
    for (Int t = 1; t <= t_cap; ++t) {
        std::array<Rat, 3> U;
        for (int k = 0; k < 3; ++k) U[k] = Rat(t) / sig_alpha[k].lo;
        std::array<Interval, 3> ubox;
        for (int i = 0; i < 3; ++i) ubox[i] = detail::weighted_box(sig_g[i], U);
        std::array<Int, 3> blo, bhi;
        for (int i = 0; i < 3; ++i) {
            blo[i] = ceil_rat(ubox[i].lo);
            bhi[i] = floor_rat(ubox[i].hi);
            if (!certify) {
                if (blo[i] < -heuristic_box) { blo[i] = -heuristic_box; truncated = true; }
                if (bhi[i] > heuristic_box) { bhi[i] = heuristic_box; truncated = true; }
            }
        }
        for (Int u1 = blo[i1]; u1 <= bhi[i1]; ++u1)
            for (Int u2 = blo[i2]; u2 <= bhi[i2]; ++u2) {
                Int rem = t - u1 * c[i1] - u2 * c[i2];
                if (!divisible(rem, c[piv])) continue;
                Int up = rem / c[piv];
                if (up < blo[piv] || up > bhi[piv]) continue;
                IntVec3 u;
                u[i1] = u1;
                u[i2] = u2;
                u[piv] = up;
                CodifferentElement d = codifferent_element(db, u);
                if (!d.as_field_elem.is_totally_positive()) continue;
                if ((d.as_field_elem * alpha).trace() != Rat(t))
                    throw std::logic_error("dual-coordinate trace mismatch");
                return {t, d, !truncated};
            }
    }
    throw std::logic_error("no codifferent witness up to Tr(alpha)");
}

}  // namespace scf
