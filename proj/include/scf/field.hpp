#pragma once

// Exact arithmetic in the simplest cubic field K = Q(rho), where rho is the
// largest real root of f(x) = x^3 - a x^2 - (a+3) x - 1.  Elements are stored
// as rational coordinates over the power basis {1, rho, rho^2}; every
// correctness-critical decision (total positivity, integrality, unit tests)
// reduces to exact sign and divisibility checks on characteristic-polynomial
// coefficients.  Root enclosures are used only to bound search boxes.

#include <array>
#include <optional>
#include <ostream>

#include "numeric.hpp"

namespace scf {

using IntVec3 = std::array<Int, 3>;
using RatVec3 = std::array<Rat, 3>;

// --- integer kernel -------------------------------------------------------
// Closed forms for the characteristic polynomial x^3 - e1 x^2 + e2 x - e3 of
// y1 + y2 rho + y3 rho^2, obtained from the regular representation over the
// power basis (rho^3 = 1 + (a+3) rho + a rho^2).

inline void char_poly_int(const IntVec3& y, const Int& a, Int& e1, Int& e2, Int& e3) {
    const Int& y1 = y[0];
    const Int& y2 = y[1];
    const Int& y3 = y[2];
    Int a2 = a * a;
    Int t = a2 + 2 * a + 6;  // Tr(rho^2)
    e1 = 3 * y1 + a * y2 + t * y3;
    e2 = 3 * y1 * y1 + 2 * t * y1 * y3 + 2 * a * y1 * y2 - (a + 3) * y2 * y2 -
         (a2 + 3 * a + 3) * y2 * y3 + (a2 + 4 * a + 9) * y3 * y3;
    e3 = a2 * (y1 * y1 * y3 - y1 * y2 * y3 + y1 * y3 * y3) +
         a * (y1 * y1 * y2 + 2 * y1 * y1 * y3 - y1 * y2 * y2 - 3 * y1 * y2 * y3 +
              4 * y1 * y3 * y3 + y2 * y2 * y3 - y2 * y3 * y3) +
         y1 * y1 * y1 + 6 * y1 * y1 * y3 - 3 * y1 * y2 * y2 - 3 * y1 * y2 * y3 +
         9 * y1 * y3 * y3 + y2 * y2 * y2 - 3 * y2 * y3 * y3 + y3 * y3 * y3;
}

// y != 0 and all conjugates positive.  Valid because K is totally real: the
// char poly has three real roots, and they are all positive iff e1,e2,e3 > 0.
inline bool totally_positive_int(const IntVec3& y, const Int& a) {
    if (y[0] == 0 && y[1] == 0 && y[2] == 0) return false;
    Int e1, e2, e3;
    char_poly_int(y, a, e1, e2, e3);
    return e1 > 0 && e2 > 0 && e3 > 0;
}

// is (y1 + y2 rho + y3 rho^2)/den an algebraic integer
inline bool integral_div_int(const IntVec3& y, const Int& a, const Int& den) {
    Int e1, e2, e3;
    char_poly_int(y, a, e1, e2, e3);
    return divisible(e1, den) && divisible(e2, den * den) && divisible(e3, den * den * den);
}

inline IntVec3 mul_int(const IntVec3& x, const IntVec3& y, const Int& a) {
    std::array<Int, 5> c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i + j] += x[i] * y[j];
    // rho^3 = 1 + (a+3) rho + a rho^2 ; rho^4 = a + (a^2+3a+1) rho + (a^2+a+3) rho^2
    c[0] += c[3] + a * c[4];
    c[1] += (a + 3) * c[3] + (a * (a + 3) + 1) * c[4];
    c[2] += a * c[3] + (a * a + a + 3) * c[4];
    return {c[0], c[1], c[2]};
}

// coordinate matrices of the nontrivial automorphisms: sigma(rho) = rho' and
// sigma^2(rho) = rho'' with rho' = a+2 + a rho - rho^2, rho'' = -2 - (a+1) rho + rho^2
inline IntVec3 conj1_int(const IntVec3& y, const Int& a) {
    IntVec3 rp{a + 2, a, -1};
    IntVec3 rp2 = mul_int(rp, rp, a);
    return {y[0] + y[1] * rp[0] + y[2] * rp2[0], y[1] * rp[1] + y[2] * rp2[1],
            y[1] * rp[2] + y[2] * rp2[2]};
}
inline IntVec3 conj2_int(const IntVec3& y, const Int& a) {
    IntVec3 rpp{-2, -(a + 1), 1};
    IntVec3 rpp2 = mul_int(rpp, rpp, a);
    return {y[0] + y[1] * rpp[0] + y[2] * rpp2[0], y[1] * rpp[1] + y[2] * rpp2[1],
            y[1] * rpp[2] + y[2] * rpp2[2]};
}

// --- context --------------------------------------------------------------

class FieldElement;

// Parameter a plus derived constants and certified enclosures of the three
// real roots, ordered rho > rho'' > rho' with root[0] = rho, root[1] = rho',
// root[2] = rho''; root[k] encloses the image of rho under sigma^k.
struct FieldContext {
    Int a;
    Int delta_disc;                  // Delta = a^2 + 3a + 9
    std::array<Int, 4> min_poly;     // f = x^3 - a x^2 - (a+3) x - 1 (leading first)
    std::array<Interval, 3> root;
    Rat interval_precision;

    static FieldContext make(const Int& a, const Rat& precision = Rat(0));
    FieldContext refined(const Rat& precision) const;

    Rat eval_f(const Rat& x) const {
        return ((x - Rat(a)) * x - Rat(a + 3)) * x - 1;
    }
    int sign_f(const Rat& x) const { return sgn(eval_f(x)); }
};

namespace detail {

inline Interval bisect_to(const FieldContext& ctx, Interval iv, const Rat& width) {
    int slo = ctx.sign_f(iv.lo);
    while (iv.width() > width) {
        Rat mid = iv.mid();
        int sm = ctx.sign_f(mid);
        if (sm == 0) throw std::logic_error("rational root of irreducible cubic");
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

}  // namespace detail

inline FieldContext FieldContext::make(const Int& a, const Rat& precision) {
    if (a < -1) throw std::invalid_argument("family parameter a must be >= -1");
    FieldContext ctx;
    ctx.a = a;
    ctx.delta_disc = a * a + 3 * a + 9;
    ctx.min_poly = {Int(1), -a, -(a + 3), Int(-1)};
    Rat prec = precision;
    if (prec <= 0) prec = Rat(Int(a + 3), Int(1) << 32);

    std::array<Interval, 3> iso;
    if (a >= 7) {
        // displayed bounds: a+1 < rho < a+1+2/a, -1-1/a < rho' < -1-1/(2a),
        // -1/(a+2) < rho'' < -1/(a+3)
        iso[0] = Interval(Rat(a + 1), Rat(a + 1) + Rat(2, 1) / Rat(a));
        iso[1] = Interval(Rat(-1) - Rat(1) / Rat(a), Rat(-1) - Rat(1) / Rat(2 * a));
        iso[2] = Interval(Rat(-1) / Rat(a + 2), Rat(-1) / Rat(a + 3));
        for (auto& iv : iso) {
            // snap endpoints outward to a dyadic grid, keeping the bracket
            Interval snapped = dyadic_outer(iv, 24);
            if (ctx.sign_f(snapped.lo) != ctx.sign_f(snapped.hi)) iv = snapped;
            if (ctx.sign_f(iv.lo) == ctx.sign_f(iv.hi))
                throw std::logic_error("root bracket lost");
        }
    } else {
        // scan brackets over a dyadic grid, halving the step until all three
        // real roots are isolated
        std::vector<Interval> found;
        Rat step(1);
        while (true) {
            found.clear();
            Rat x(-8);
            int sx = ctx.sign_f(x);
            while (x < 12) {
                Rat nx = x + step;
                int snx = ctx.sign_f(nx);
                if (snx == 0) throw std::logic_error("rational root of irreducible cubic");
                if (snx != sx) found.push_back(Interval(x, nx));
                x = nx;
                sx = snx;
            }
            if (found.size() == 3) break;
            step /= 2;
            if (step < Rat(1, 1 << 16)) throw std::logic_error("root isolation failed");
        }
        // descending: largest root first
        iso[0] = found[2];
        iso[1] = found[0];
        iso[2] = found[1];
    }
    for (int k = 0; k < 3; ++k) ctx.root[k] = detail::bisect_to(ctx, iso[k], prec);

    // keep roots sorted as rho > rho'' > rho' (root[1] is the smallest);
    // for a < 7 match labels to the automorphism: sigma(rho) must land in root[1]
    if (!(ctx.root[0].lo > ctx.root[2].hi && ctx.root[2].lo > ctx.root[1].hi)) {
        std::array<Interval, 3> s = ctx.root;
        std::sort(s.begin(), s.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        ctx.root = {s[2], s[0], s[1]};
    }
    // enclosure of sigma(rho) = a+2 + a rho - rho^2 over root[0]
    Interval im = Rat(a + 2) + Rat(a) * ctx.root[0] - square(ctx.root[0]);
    auto overlaps = [&](int k) {
        Interval dummy;
        return intersect(im, ctx.root[k], dummy);
    };
    if (!overlaps(1) && overlaps(2)) std::swap(ctx.root[1], ctx.root[2]);
    if (!overlaps(1)) throw std::logic_error("conjugate ordering inconsistent");

    ctx.interval_precision = prec;
    return ctx;
}

inline FieldContext FieldContext::refined(const Rat& precision) const {
    FieldContext out = *this;
    for (auto& iv : out.root) iv = detail::bisect_to(*this, iv, precision);
    out.interval_precision = precision;
    return out;
}

// --- elements ---------------------------------------------------------------

class FieldElement {
public:
    FieldElement() : a_(0), c_{Rat(0), Rat(0), Rat(0)} {}
    FieldElement(const Int& a, Rat c1, Rat c2, Rat c3)
        : a_(a), c_{std::move(c1), std::move(c2), std::move(c3)} {
        for (auto& q : c_) q.canonicalize();
    }
    FieldElement(const FieldContext& ctx, Rat c1, Rat c2, Rat c3)
        : FieldElement(ctx.a, std::move(c1), std::move(c2), std::move(c3)) {}

    static FieldElement zero(const Int& a) { return FieldElement(a, 0, 0, 0); }
    static FieldElement one(const Int& a) { return FieldElement(a, 1, 0, 0); }
    static FieldElement rho(const Int& a) { return FieldElement(a, 0, 1, 0); }
    static FieldElement from_int_coords(const Int& a, const IntVec3& y, const Int& den = Int(1)) {
        return FieldElement(a, frac(y[0], den), frac(y[1], den), frac(y[2], den));
    }

    const Int& param() const { return a_; }
    const RatVec3& coords() const { return c_; }
    const Rat& coord(int i) const { return c_[i]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.a_ == y.a_ && x.c_ == y.c_;
    }
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

    // total order on coordinates (used for sorted, deterministic emission)
    friend bool operator<(const FieldElement& x, const FieldElement& y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        for (int i = 0; i < 3; ++i)
            if (x.c_[i] != y.c_[i]) return x.c_[i] < y.c_[i];
        return false;
    }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        x.check(y);
        return FieldElement(x.a_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]);
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        x.check(y);
        return FieldElement(x.a_, x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]);
    }
    friend FieldElement operator-(const FieldElement& x) {
        return FieldElement(x.a_, -x.c_[0], -x.c_[1], -x.c_[2]);
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        x.check(y);
        const Int& a = x.a_;
        std::array<Rat, 5> c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) c[i + j] += x.c_[i] * y.c_[j];
        c[0] += c[3] + Rat(a) * c[4];
        c[1] += Rat(a + 3) * c[3] + Rat(a * (a + 3) + 1) * c[4];
        c[2] += Rat(a) * c[3] + Rat(a * a + a + 3) * c[4];
        return FieldElement(a, c[0], c[1], c[2]);
    }
    friend FieldElement operator*(const Rat& s, const FieldElement& x) {
        return FieldElement(x.a_, s * x.c_[0], s * x.c_[1], s * x.c_[2]);
    }

    FieldElement conjugate1() const {
        FieldElement rp(a_, Rat(a_ + 2), Rat(a_), Rat(-1));
        return subst(rp);
    }
    FieldElement conjugate2() const {
        FieldElement rpp(a_, Rat(-2), Rat(-(a_ + 1)), Rat(1));
        return subst(rpp);
    }

    // coefficients (e1, e2, e3) with char poly x^3 - e1 x^2 + e2 x - e3;
    // e1 = Tr, e3 = N
    RatVec3 char_poly() const {
        IntVec3 y;
        Int den = scale_to_int(y);
        Int e1, e2, e3;
        char_poly_int(y, a_, e1, e2, e3);
        return {frac(e1, den), frac(e2, den * den), frac(e3, den * den * den)};
    }
    Rat trace() const { return char_poly()[0]; }
    Rat norm() const { return char_poly()[2]; }

    bool is_algebraic_integer() const {
        IntVec3 y;
        Int den = scale_to_int(y);
        return integral_div_int(y, a_, den);
    }
    bool is_totally_positive() const {
        IntVec3 y;
        scale_to_int(y);  // positive scaling preserves conjugate signs
        return totally_positive_int(y, a_);
    }
    bool is_unit() const {
        if (!is_algebraic_integer()) throw std::domain_error("is_unit requires an algebraic integer");
        Rat n = norm();
        return n == 1 || n == -1;
    }
    FieldElement inverse() const {
        RatVec3 e = char_poly();
        if (e[2] == 0) throw std::domain_error("inverse of zero");
        // x^-1 = (x^2 - e1 x + e2)/e3
        FieldElement x2 = (*this) * (*this);
        FieldElement num = x2 - e[0] * (*this) + FieldElement(a_, e[1], 0, 0);
        return (1 / e[2]) * num;
    }

    // common denominator scale: fills y with den * coords, returns den > 0
    Int scale_to_int(IntVec3& y) const {
        Int den = 1;
        for (const auto& q : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        for (int i = 0; i < 3; ++i) {
            Rat s = c_[i] * Rat(den);
            s.canonicalize();
            y[i] = s.get_num();
        }
        return den;
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
        return os << "(" << rat_string(x.c_[0]) << ", " << rat_string(x.c_[1]) << ", "
                  << rat_string(x.c_[2]) << ")";
    }

private:
    void check(const FieldElement& y) const {
        if (a_ != y.a_) throw std::invalid_argument("field context mismatch");
    }
    FieldElement subst(const FieldElement& r) const {
        return FieldElement(a_, c_[0], 0, 0) + c_[1] * r + c_[2] * (r * r);
    }

    Int a_;
    RatVec3 c_;
};

inline FieldElement operator*(const FieldElement& x, const Rat& s) { return s * x; }

// rho^i * (rho')^j, negative exponents via rho^-1 = rho^2 - a rho - (a+3)
inline FieldElement unit_power(const Int& a, long i, long j) {
    FieldElement rho = FieldElement::rho(a);
    FieldElement rho_inv(a, Rat(-(a + 3)), Rat(-a), Rat(1));
    FieldElement rp = rho.conjugate1();
    FieldElement rp_inv = rho_inv.conjugate1();
    FieldElement out = FieldElement::one(a);
    for (long t = 0; t < (i >= 0 ? i : -i); ++t) out = out * (i >= 0 ? rho : rho_inv);
    for (long t = 0; t < (j >= 0 ? j : -j); ++t) out = out * (j >= 0 ? rp : rp_inv);
    return out;
}

// enclosure of sigma_k(x); proof-bearing sign decisions use char_poly instead
inline Interval conjugate_enclosure(const FieldContext& ctx, const FieldElement& x, int k) {
    const Interval& r = ctx.root[k];
    return Interval::point(x.coord(0)) + x.coord(1) * r + x.coord(2) * square(r);
}

}  // namespace scf
