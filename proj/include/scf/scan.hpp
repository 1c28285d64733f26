#pragma once

// Enumeration engine for integer vectors y with sigma_k(y) inside prescribed
// rational bounds for all three embeddings.  Used by the indecomposability
// oracle and the square search.  The scan walks an outer box computed with
// exact interval arithmetic (so no admissible point is missed) and leaves
// exact confirmation to the caller.

#include "classify.hpp"

namespace scf {

struct EmbeddingData {
    Int a;
    Int p;        // every y represents y/p; y1 = k y3, y2 = l y3 (mod p) iff y/p is in O_K
    Int bk, bl;   // congruence multipliers (0 when p == 1)
    std::array<Interval, 3> r;   // root enclosures, sigma_k(rho)
    std::array<Interval, 3> r2;  // their squares
    std::array<Interval, 3> dk;  // D_k = prod_{j != k} (r_k - r_j), all excluding zero
};

// Refine the context until the pairwise root gaps are certified and the
// enclosure width is below `width`, then freeze the embedding tables.
inline EmbeddingData make_embedding(const FieldContext& ctx, const BasisDescriptor& basis,
                                    const Rat& width) {
    FieldContext fine = ctx.interval_precision <= width ? ctx : ctx.refined(width);
    EmbeddingData emb;
    emb.a = fine.a;
    emb.p = basis.denominator();
    emb.bk = basis.kind == BasisKind::Bp ? basis.k : Int(0);
    emb.bl = basis.kind == BasisKind::Bp ? basis.l : Int(0);
    for (int k = 0; k < 3; ++k) {
        emb.r[k] = fine.root[k];
        emb.r2[k] = square(fine.root[k]);
    }
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        Interval d = (emb.r[k] - emb.r[i]) * (emb.r[k] - emb.r[j]);
        if (d.contains_zero()) throw std::logic_error("root enclosures not separated");
        emb.dk[k] = d;
    }
    return emb;
}

// sigma_k(y) enclosure for integer coordinates
inline Interval sigma_enclosure(const EmbeddingData& emb, const IntVec3& y, int k) {
    return Interval::point(Rat(y[0])) + Rat(y[1]) * emb.r[k] + Rat(y[2]) * emb.r2[k];
}

// Enumerates all y in Z^3 with lo[k] < sigma_k(y) < hi[k] for k = 0,1,2 and
// y1 = bk y3, y2 = bl y3 (mod p).  cb returns true to stop early.
// Scan order: y3, then y2, then y1, each ascending (deterministic).
template <class CB>
bool scan_sigma_box(const EmbeddingData& emb, const std::array<Rat, 3>& lo,
                    const std::array<Rat, 3>& hi, CB&& cb) {
    const Int& p = emb.p;
    std::array<Interval, 3> box;
    for (int k = 0; k < 3; ++k) {
        if (lo[k] >= hi[k]) return false;
        box[k] = Interval(lo[k], hi[k]);
    }
    // y3 = sum_k sigma_k / D_k  (coefficient of x^2 in Lagrange interpolation)
    Interval y3_iv = box[0] * inverse(emb.dk[0]) + box[1] * inverse(emb.dk[1]) +
                     box[2] * inverse(emb.dk[2]);
    Int y3_lo = ceil_rat(y3_iv.lo), y3_hi = floor_rat(y3_iv.hi);

    // fixed per-pair data for the y2 slice bounds:
    // y2 (r_i - r_j) + y3 (r_i^2 - r_j^2) in (lo_i - hi_j, hi_i - lo_j)
    struct Pair {
        Interval dif_inv, sq;
        Rat clo, chi;
    };
    std::array<Pair, 3> pairs;
    {
        int idx = 0;
        for (auto [i, j] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
            pairs[idx].dif_inv = inverse(emb.r[i] - emb.r[j]);
            pairs[idx].sq = emb.r2[i] - emb.r2[j];
            pairs[idx].clo = lo[i] - hi[j];
            pairs[idx].chi = hi[i] - lo[j];
            ++idx;
        }
    }

    for (Int y3 = y3_lo; y3 <= y3_hi; ++y3) {
        // y2 range: intersection over the three pairs
        bool empty = false;
        Interval y2_iv;
        for (int q = 0; q < 3 && !empty; ++q) {
            Interval iv = (Interval(pairs[q].clo, pairs[q].chi) - Rat(y3) * pairs[q].sq) *
                          pairs[q].dif_inv;
            if (q == 0)
                y2_iv = iv;
            else if (!intersect(y2_iv, iv, y2_iv))
                empty = true;
        }
        if (empty) continue;
        Int y2 = ceil_rat(y2_iv.lo), y2_hi = floor_rat(y2_iv.hi);
        if (p > 1) y2 += mod_floor(emb.bl * y3 - y2, p);  // first admissible residue
        for (; y2 <= y2_hi; y2 += p) {
            // y1 range: intersection over the embeddings
            Interval y1_iv;
            bool empty1 = false;
            for (int k = 0; k < 3 && !empty1; ++k) {
                Interval base = Rat(y2) * emb.r[k] + Rat(y3) * emb.r2[k];
                Interval iv(lo[k] - base.hi, hi[k] - base.lo);
                if (k == 0)
                    y1_iv = iv;
                else if (!intersect(y1_iv, iv, y1_iv))
                    empty1 = true;
            }
            if (empty1) continue;
            Int y1 = ceil_rat(y1_iv.lo), y1_hi = floor_rat(y1_iv.hi);
            if (p > 1) y1 += mod_floor(emb.bk * y3 - y1, p);
            for (; y1 <= y1_hi; y1 += p) {
                if (cb(IntVec3{y1, y2, y3})) return true;
            }
        }
    }
    return false;
}

}  // namespace scf
