#pragma once

// Exact integer/rational arithmetic primitives shared by the whole library.
// Integers and rationals are GMP-backed; intervals have exact rational
// endpoints, so every enclosure computed from them is rigorous.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace scf {

using Int = mpz_class;
using Rat = mpq_class;

// canonicalized rational from a possibly unreduced numerator/denominator pair
// (the two-argument mpq_class constructor does not canonicalize)
inline Rat frac(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// ceil(n/d) for integers, d > 0
inline Int ceil_div(const Int& n, const Int& d) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& x, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divisible(const Int& x, const Int& m) {
    return mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t()) != 0;
}

inline bool is_perfect_cube(const Int& n) {
    if (n < 0) return false;
    Int r;
    return mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0;
}

inline bool is_square_free(const Int& n) {
    if (n <= 0) return false;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (divisible(m, p)) {
            m /= p;
            if (divisible(m, p)) return false;
        }
    }
    return true;
}

// "num/den" (or plain "num" when the denominator is 1); never floats
inline std::string rat_string(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

// Rational interval with exact endpoints. Operations return enclosures of
// the exact image, never approximations.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("interval endpoints out of order");
    }
    static Interval point(const Rat& x) { return Interval(x, x); }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
    Rat mid() const { return (lo + hi) / 2; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}
inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                    std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval operator*(const Rat& c, const Interval& a) {
    if (c >= 0) return Interval(c * a.lo, c * a.hi);
    return Interval(c * a.hi, c * a.lo);
}

inline Interval operator+(const Rat& c, const Interval& a) {
    return Interval(c + a.lo, c + a.hi);
}

// 1/a for an interval not containing 0
inline Interval inverse(const Interval& a) {
    if (a.contains_zero()) throw std::domain_error("interval inverse through zero");
    return Interval(1 / a.hi, 1 / a.lo);
}

inline Interval square(const Interval& a) {
    if (a.lo >= 0) return Interval(a.lo * a.lo, a.hi * a.hi);
    if (a.hi <= 0) return Interval(a.hi * a.hi, a.lo * a.lo);
    return Interval(Rat(0), std::max(a.lo * a.lo, a.hi * a.hi));
}

// intersection; empty result reported via the bool
inline bool intersect(const Interval& a, const Interval& b, Interval& out) {
    Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return false;
    out = Interval(lo, hi);
    return true;
}

// Outward rounding to the 2^-bits dyadic grid. Keeps interval endpoints
// dyadic so repeated arithmetic does not accumulate huge denominators.
inline Rat dyadic_below(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    return frac(floor_rat(x * Rat(scale)), scale);
}
inline Rat dyadic_above(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    return frac(ceil_rat(x * Rat(scale)), scale);
}
inline Interval dyadic_outer(const Interval& a, unsigned bits) {
    return Interval(dyadic_below(a.lo, bits), dyadic_above(a.hi, bits));
}

// rational u > 0 with u*u >= x, within a factor (1 + 2^-20) of sqrt(x)
inline Rat sqrt_upper(const Rat& x) {
    if (x < 0) throw std::domain_error("sqrt of negative rational");
    if (x == 0) return Rat(0);
    // integer sqrt of ceil(x * 4^k) scaled back
    const unsigned k = 32;
    Int scaled = ceil_rat(x * Rat(Int(1) << (2 * k)));
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    root += 1;  // mpz_sqrt truncates
    return frac(root, Int(1) << k);
}

// Chunked parallel loop; f(i) must only write state owned by index i.
// thread count resolves from the argument, then SC_THREADS, then hardware.
inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("SC_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
    int t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        std::size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&f, b, e] {
            for (std::size_t i = b; i < e; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace scf
