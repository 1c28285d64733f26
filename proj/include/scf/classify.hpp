#pragma once

// Arithmetic classification of a simplest cubic field: discriminant split,
// conductor, module index delta = [O_K : Z[rho]], monogenity verdict, and the
// integral basis descriptor B_p(k,l) = {1, rho, (k + l rho + rho^2)/p}.

#include <optional>
#include <vector>

#include "field.hpp"

namespace scf {

enum class BasisKind { PowerBasis, Bp, UnsupportedGeneral };

struct BasisDescriptor {
    BasisKind kind = BasisKind::PowerBasis;
    Int p = 1, k = 0, l = 0;  // meaningful iff kind == Bp

    Int denominator() const { return kind == BasisKind::Bp ? p : Int(1); }
};

struct Classification {
    Int a;
    Int delta_disc;    // Delta
    Int b, c;          // Delta = b c^3, b cube-free
    Int conductor;     // frak-c
    Int module_index;  // delta = Delta / frak-c
    bool monogenic = false;
    bool in_exceptional_list = false;
    BasisDescriptor basis;
};

inline const std::vector<Int>& exceptional_a_list() {
    static const std::vector<Int> list = {-1, 0, 1, 2, 3, 5, 12, 54, 66, 1259, 2389};
    return list;
}

inline bool in_exceptional_list(const Int& a) {
    for (const auto& x : exceptional_a_list())
        if (x == a) return true;
    return false;
}

// n = b * c^3 with b cube-free; b collects exponents mod 3, c exponents div 3
// (b and c are coprime whenever no prime has v_p(n) >= 4 with 3 not dividing it)
inline std::pair<Int, Int> cubefree_split(const Int& n) {
    if (n <= 0) throw std::invalid_argument("cubefree_split requires n > 0");
    Int b = 1, c = 1, m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (!divisible(m, p)) continue;
        int e = 0;
        while (divisible(m, p)) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e % 3; ++i) b *= p;
        for (int i = 0; i < e / 3; ++i) c *= p;
    }
    b *= m;  // remaining prime factor has exponent 1
    return {b, c};
}

inline std::vector<Int> prime_factors(const Int& n) {
    std::vector<Int> out;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (!divisible(m, p)) continue;
        out.push_back(p);
        while (divisible(m, p)) m /= p;
    }
    if (m > 1) out.push_back(m);
    return out;
}

inline Int conductor(const Int& a) {
    Int delta = a * a + 3 * a + 9;
    Int b = cubefree_split(delta).first;
    bool first_case = !divisible(a, Int(3)) || mod_floor(a, Int(27)) == 12;
    Int c = first_case ? Int(1) : Int(9);
    for (const auto& p : prime_factors(b)) {
        if (!first_case && p == 3) continue;
        c *= p;
    }
    return c;
}

inline Int module_index(const Int& a) {
    Int delta = a * a + 3 * a + 9;
    return delta / conductor(a);
}

inline bool is_monogenic(const Int& a) {
    return in_exceptional_list(a) || is_perfect_cube(module_index(a));
}

// B_3(1,1) family: a = 3 or 21 (mod 27), a > 12, Delta/27 square-free
inline bool in_p3_family(const Int& a) {
    Int r = mod_floor(a, Int(27));
    if (r != 3 && r != 21) return false;
    if (a <= 12) return false;
    Int delta = a * a + 3 * a + 9;
    return is_square_free(delta / 27);
}

namespace detail {

// minimal-polynomial numerators of (k + l rho + rho^2)/p; the element is an
// algebraic integer iff h_i = 0 (mod p^i) for i = 1, 2, 3
inline void h_polys(const Int& a, const Int& k, const Int& l, Int& h1, Int& h2, Int& h3) {
    Int a2 = a * a;
    h1 = a2 + (l + 2) * a + 3 * k + 6;
    h2 = (2 * k - l + 1) * a2 + (-l * l + 2 * k * l + 4 * k - 3 * l + 4) * a + 3 * k * k -
         3 * l * l + 12 * k - 3 * l + 9;
    h3 = (k * k - k * l + k) * a2 +
         (k * k * l - k * l * l + 2 * k * k + l * l - 3 * k * l + 4 * k - l) * a + k * k * k +
         l * l * l - 3 * k * l * l + 6 * k * k - 3 * k * l + 9 * k - 3 * l + 1;
}

inline bool is_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

inline Int inv_mod(const Int& x, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("not invertible");
    return r;
}

// closed forms from the existence proof (p > 3, p^2 | Delta):
// l = -(2a^2+4a+6)(2a+3)^-1, k = -3^-1(a l + a^2 + 2a + 6)  (mod p)
inline std::pair<Int, Int> kl_closed_form(const Int& a, const Int& p) {
    Int l = mod_floor(-(2 * a * a + 4 * a + 6) * inv_mod(2 * a + 3, p), p);
    Int k = mod_floor(-inv_mod(Int(3), p) * (a * l + a * a + 2 * a + 6), p);
    if (k == 0) k = p;
    if (l == 0) l = p;
    return {k, l};
}

}  // namespace detail

inline std::vector<std::pair<Int, Int>> find_kl_all(const Int& a, const Int& p) {
    std::vector<std::pair<Int, Int>> sols;
    Int p2 = p * p, p3 = p2 * p;
    Int h1, h2, h3;
    for (Int k = 1; k < p; ++k)
        for (Int l = 1; l < p; ++l) {
            detail::h_polys(a, k, l, h1, h2, h3);
            if (divisible(h1, p) && divisible(h2, p2) && divisible(h3, p3))
                sols.emplace_back(k, l);
        }
    return sols;
}

// The unique pair with (k + l rho + rho^2)/p the third integral-basis element.
// When the congruences admit several pairs (possible only if p^3 | Delta, in
// which case B_p is not the basis), the closed-form pair is the distinguished
// one; the search cross-checks it.
inline std::optional<std::pair<Int, Int>> find_kl(const Int& a, const Int& p) {
    if (p < 3 || !detail::is_prime(p) || p == 2)
        throw std::invalid_argument("find_kl requires an odd prime");
    auto sols = find_kl_all(a, p);
    if (sols.empty()) return std::nullopt;
    if (sols.size() == 1) {
        if (p > 3) {
            auto cf = detail::kl_closed_form(a, p);
            if (sols[0] != cf) throw std::logic_error("closed-form (k,l) cross-check failed");
        }
        return sols[0];
    }
    if (p == 3) throw std::logic_error("ambiguous (k,l) for p=3");
    auto cf = detail::kl_closed_form(a, p);
    for (const auto& s : sols)
        if (s == cf) return s;
    return std::nullopt;
}

struct FamilyEntry {
    Int a;  // residue mod p^2, 0 <= a < p^2
    Int k, l;
};

// The two residues a mod p^2 with p^2 | Delta (exists iff p = 1 mod 6),
// each with its (k,l); roots of a^2+3a+9 mod p lifted by one Hensel step.
inline std::optional<std::array<FamilyEntry, 2>> family_parameters(const Int& p) {
    if (p <= 3 || !detail::is_prime(p))
        throw std::invalid_argument("family_parameters requires a prime p > 3");
    std::vector<Int> roots;
    for (Int x = 0; x < p; ++x)
        if (divisible(x * x + 3 * x + 9, p)) roots.push_back(x);
    if (roots.empty()) return std::nullopt;
    Int p2 = p * p;
    std::array<FamilyEntry, 2> out;
    int idx = 0;
    for (const auto& r : roots) {
        Int h = r * r + 3 * r + 9;
        Int lift = mod_floor(r - h * detail::inv_mod(2 * r + 3, p2), p2);
        auto kl = detail::kl_closed_form(lift, p);
        out[idx++] = {lift, kl.first, kl.second};
    }
    if (idx != 2) throw std::logic_error("expected two simple roots mod p");
    if (out[0].a > out[1].a) std::swap(out[0], out[1]);
    return out;
}

inline Classification classify(const Int& a) {
    Classification cl;
    cl.a = a;
    cl.delta_disc = a * a + 3 * a + 9;
    auto bc = cubefree_split(cl.delta_disc);
    cl.b = bc.first;
    cl.c = bc.second;
    cl.conductor = conductor(a);
    cl.module_index = cl.delta_disc / cl.conductor;
    cl.in_exceptional_list = in_exceptional_list(a);
    cl.monogenic = cl.in_exceptional_list || is_perfect_cube(cl.module_index);
    if (in_p3_family(a)) {
        cl.basis = {BasisKind::Bp, Int(3), Int(1), Int(1)};
    } else if (cl.module_index == 1) {
        cl.basis = {BasisKind::PowerBasis, Int(1), Int(0), Int(0)};
    } else if (cl.module_index > 3 && detail::is_prime(cl.module_index)) {
        auto kl = find_kl(a, cl.module_index);
        if (!kl) throw std::logic_error("prime module index without B_p basis");
        cl.basis = {BasisKind::Bp, cl.module_index, kl->first, kl->second};
    } else {
        // composite (or cube) module index: report and stop
        cl.basis = {BasisKind::UnsupportedGeneral, Int(1), Int(0), Int(0)};
    }
    return cl;
}

// Canovas-Orvay correspondence: theta = -rho + a/3 satisfies
// theta^3 - p theta + p q = 0 with p = Delta/3, q = (2a+3)/9, 4p - 27q^2 = 9
inline std::pair<Int, Int> to_canovas_form(const Int& a) {
    Int r = mod_floor(a, Int(27));
    if (r != 3 && r != 21)
        throw std::invalid_argument("Canovas form requires a = 3 or 21 (mod 27)");
    Int p = (a * a + 3 * a + 9) / 3;
    Int q = (2 * a + 3) / 9;
    if (4 * p - 27 * q * q != 9) throw std::logic_error("Canovas identity failed");
    return {p, q};
}

// integral basis (g1, g2, g3) as field elements
inline std::array<FieldElement, 3> integral_basis(const Int& a, const BasisDescriptor& basis) {
    FieldElement g1 = FieldElement::one(a);
    FieldElement g2 = FieldElement::rho(a);
    if (basis.kind == BasisKind::Bp) {
        FieldElement g3(a, Rat(basis.k, basis.p), Rat(basis.l, basis.p), Rat(1, basis.p));
        return {g1, g2, g3};
    }
    if (basis.kind == BasisKind::PowerBasis)
        return {g1, g2, FieldElement(a, 0, 0, 1)};
    throw std::domain_error("unsupported basis kind");
}

// coordinates of x over the integral basis; throws if x is not in O_K
inline IntVec3 integral_coords(const Int& a, const BasisDescriptor& basis, const FieldElement& x) {
    if (x.param() != a) throw std::invalid_argument("field context mismatch");
    IntVec3 y;
    Int den = x.scale_to_int(y);
    const Int p = basis.denominator();
    // x = c1 g1 + c2 g2 + c3 (k + l rho + rho^2)/p  =>  c3 = p x3, c2 = x2 - l x3, c1 = x1 - k x3
    Rat x3 = frac(y[2], den), x2 = frac(y[1], den), x1 = frac(y[0], den);
    Rat c3 = Rat(p) * x3;
    Rat c2 = x2 - Rat(basis.l) * x3;
    Rat c1 = x1 - Rat(basis.k) * x3;
    for (Rat* q : {&c1, &c2, &c3}) {
        q->canonicalize();
        if (q->get_den() != 1) throw std::domain_error("element not in O_K for this basis");
    }
    return {c1.get_num(), c2.get_num(), c3.get_num()};
}

inline FieldElement from_integral_coords(const Int& a, const BasisDescriptor& basis,
                                         const IntVec3& c) {
    auto g = integral_basis(a, basis);
    return Rat(c[0]) * g[0] + Rat(c[1]) * g[1] + Rat(c[2]) * g[2];
}

}  // namespace scf
