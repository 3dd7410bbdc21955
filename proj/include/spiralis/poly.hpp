#pragma once

// Univariate polynomials over the coefficient field and their factorization
// into irreducibles: squarefree + distinct-degree + equal-degree splitting
// over F_p; Yun + rational roots + Hensel-lift recombination over Q.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "spiralis/field.hpp"

namespace spiralis {

// coeffs[i] is the coefficient of x^i; no trailing zeros; empty = zero poly.
template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void poly_trim(const F& k, Poly<F>& p) {
    while (!p.empty() && k.is_zero(p.back())) p.pop_back();
}

template <class F>
bool poly_is_zero(const Poly<F>& p) {
    return p.empty();
}

template <class F>
int poly_deg(const Poly<F>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <class F>
Poly<F> poly_const(const F& k, typename F::Elem c) {
    Poly<F> p{std::move(c)};
    poly_trim(k, p);
    return p;
}

template <class F>
Poly<F> poly_x_minus(const F& k, const typename F::Elem& u) {
    return Poly<F>{k.neg(u), k.one()};
}

template <class F>
Poly<F> poly_add(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.add(r[i], b[i]);
    poly_trim(k, r);
    return r;
}

template <class F>
Poly<F> poly_sub(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.sub(r[i], b[i]);
    poly_trim(k, r);
    return r;
}

template <class F>
Poly<F> poly_mul(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<F> r(a.size() + b.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    poly_trim(k, r);
    return r;
}

template <class F>
Poly<F> poly_scale(const F& k, const Poly<F>& a, const typename F::Elem& s) {
    Poly<F> r = a;
    for (auto& c : r) c = k.mul(c, s);
    poly_trim(k, r);
    return r;
}

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (b.empty()) throw internal_error("poly division by zero");
    Poly<F> rem = a, quot;
    if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, k.zero());
    auto lead_inv = k.inv(b.back());
    while (rem.size() >= b.size()) {
        auto c = k.mul(rem.back(), lead_inv);
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        std::size_t before = rem.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = k.sub(rem[shift + i], k.mul(c, b[i]));
        poly_trim(k, rem);
        if (rem.size() >= before) throw internal_error("poly_divmod: no progress");
    }
    poly_trim(k, quot);
    return {quot, rem};
}

template <class F>
Poly<F> poly_mod(const F& k, const Poly<F>& a, const Poly<F>& b) {
    return poly_divmod(k, a, b).second;
}

template <class F>
Poly<F> poly_monic(const F& k, const Poly<F>& a) {
    if (a.empty()) return a;
    return poly_scale(k, a, k.inv(a.back()));
}

template <class F>
Poly<F> poly_gcd(const F& k, Poly<F> a, Poly<F> b) {
    while (!b.empty()) {
        Poly<F> r = poly_mod(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(k, a);
}

template <class F>
Poly<F> poly_derivative(const F& k, const Poly<F>& a) {
    Poly<F> r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(k.mul(a[i], k.from_int(static_cast<long long>(i))));
    poly_trim(k, r);
    return r;
}

template <class F>
typename F::Elem poly_eval(const F& k, const Poly<F>& a, const typename F::Elem& x) {
    auto v = k.zero();
    for (std::size_t i = a.size(); i-- > 0;) v = k.add(k.mul(v, x), a[i]);
    return v;
}

template <class F>
Poly<F> poly_pow_mod(const F& k, Poly<F> base, BigInt e, const Poly<F>& mod) {
    Poly<F> r = poly_const(k, k.one());
    base = poly_mod(k, base, mod);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mod(k, poly_mul(k, r, base), mod);
        base = poly_mod(k, poly_mul(k, base, base), mod);
        e >>= 1;
    }
    return r;
}

template <class F>
bool poly_eq(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!k.eq(a[i], b[i])) return false;
    return true;
}

// Deterministic total order on polynomials (degree, then coefficients high to low).
template <class F>
bool poly_less(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (!k.eq(a[i], b[i])) return k.less(a[i], b[i]);
    return false;
}

template <class F>
using PolyFactors = std::vector<std::pair<Poly<F>, int>>;  // (monic irreducible, multiplicity)

namespace polydetail {

// Small deterministic generator for equal-degree splitting.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t s_;
};

// Squarefree decomposition over F_p, handling p-th power parts.
inline void squarefree_fp(const PrimeField& k, const Poly<PrimeField>& f, int outer_mult,
                          std::vector<std::pair<Poly<PrimeField>, int>>& out) {
    const auto p = k.modulus();
    Poly<PrimeField> d = poly_derivative(k, f);
    if (poly_is_zero<PrimeField>(d)) {
        Poly<PrimeField> g;  // f = g(x^p)
        for (std::size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
        poly_trim(k, g);
        if (poly_deg<PrimeField>(g) <= 0) return;
        squarefree_fp(k, poly_monic(k, g), outer_mult * static_cast<int>(p), out);
        return;
    }
    Poly<PrimeField> c = poly_gcd(k, f, d);
    Poly<PrimeField> w = poly_divmod(k, f, c).first;
    int i = 1;
    while (poly_deg<PrimeField>(w) > 0) {
        Poly<PrimeField> y = poly_gcd(k, w, c);
        Poly<PrimeField> fac = poly_divmod(k, w, y).first;
        if (poly_deg<PrimeField>(fac) > 0) out.emplace_back(poly_monic(k, fac), outer_mult * i);
        w = y;
        c = poly_divmod(k, c, y).first;
        ++i;
    }
    if (poly_deg<PrimeField>(c) > 0) squarefree_fp(k, poly_monic(k, c), outer_mult, out);
}

// Distinct-degree factorization of a squarefree monic f.
inline std::vector<std::pair<Poly<PrimeField>, int>> ddf_fp(const PrimeField& k, Poly<PrimeField> f) {
    std::vector<std::pair<Poly<PrimeField>, int>> res;  // (product of irreducibles of degree d, d)
    Poly<PrimeField> x{k.zero(), k.one()};
    Poly<PrimeField> h = x;
    int d = 0;
    while (poly_deg<PrimeField>(f) >= 2 * (d + 1)) {
        ++d;
        h = poly_pow_mod(k, h, BigInt(k.modulus()), f);
        Poly<PrimeField> g = poly_gcd(k, poly_sub(k, h, x), f);
        if (poly_deg<PrimeField>(g) > 0) {
            res.emplace_back(g, d);
            f = poly_divmod(k, f, g).first;
            h = poly_mod(k, h, f);
        }
    }
    if (poly_deg<PrimeField>(f) > 0) res.emplace_back(f, poly_deg<PrimeField>(f));
    return res;
}

// Cantor-Zassenhaus equal-degree splitting (trace map for p = 2).
inline void edf_fp(const PrimeField& k, const Poly<PrimeField>& f, int d, SplitMix& rng,
                   std::vector<Poly<PrimeField>>& out) {
    int n = poly_deg<PrimeField>(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    const auto p = k.modulus();
    Poly<PrimeField> one = poly_const(k, k.one());
    while (true) {
        Poly<PrimeField> r(static_cast<std::size_t>(n), k.zero());
        for (auto& c : r) c = rng.next() % p;
        poly_trim(k, r);
        if (poly_deg<PrimeField>(r) < 1) continue;
        Poly<PrimeField> g = poly_gcd(k, r, f);
        if (poly_deg<PrimeField>(g) == 0) {
            if (p == 2) {
                Poly<PrimeField> t = r, acc = r;
                for (int i = 1; i < d; ++i) {
                    t = poly_mod(k, poly_mul(k, t, t), f);
                    acc = poly_add(k, acc, t);
                }
                g = poly_gcd(k, acc, f);
            } else {
                BigInt e = (boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d)) - 1) / 2;
                Poly<PrimeField> rp = poly_pow_mod(k, r, e, f);
                g = poly_gcd(k, poly_sub(k, rp, one), f);
            }
        }
        if (poly_deg<PrimeField>(g) > 0 && poly_deg<PrimeField>(g) < n) {
            edf_fp(k, poly_monic(k, g), d, rng, out);
            edf_fp(k, poly_monic(k, poly_divmod(k, f, g).first), d, rng, out);
            return;
        }
    }
}

}  // namespace polydetail

inline PolyFactors<PrimeField> poly_factor(const PrimeField& k, const Poly<PrimeField>& f_in) {
    if (poly_deg<PrimeField>(f_in) < 1) return {};
    Poly<PrimeField> f = poly_monic(k, f_in);
    std::vector<std::pair<Poly<PrimeField>, int>> sqf;
    polydetail::squarefree_fp(k, f, 1, sqf);
    polydetail::SplitMix rng(0x5f12ab33u ^ k.modulus());
    PolyFactors<PrimeField> out;
    for (auto& [part, mult] : sqf) {
        for (auto& [prod, d] : polydetail::ddf_fp(k, part)) {
            std::vector<Poly<PrimeField>> irr;
            polydetail::edf_fp(k, poly_monic(k, prod), d, rng, irr);
            for (auto& q : irr) out.emplace_back(q, mult);
        }
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        if (poly_less(k, x.first, y.first)) return true;
        if (poly_less(k, y.first, x.first)) return false;
        return x.second < y.second;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Factorization over Q: Yun squarefree + rational roots; residual squarefree
// parts of degree >= 4 go through mod-p factorization, two-factor Hensel
// lifting and subset recombination.

namespace polydetail {

using ZPoly = std::vector<BigInt>;  // no trailing zeros

inline void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

inline ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

// Symmetric remainder in (-m/2, m/2].
inline BigInt symmod(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

inline ZPoly zmod_sym(const ZPoly& a, const BigInt& m) {
    ZPoly r = a;
    for (auto& c : r) c = symmod(c, m);
    ztrim(r);
    return r;
}

// Division by a monic divisor with coefficients reduced mod m at each step.
inline std::pair<ZPoly, ZPoly> zdivmod_monic_mod(const ZPoly& a_in, const ZPoly& h, const BigInt& m) {
    ZPoly a = zmod_sym(a_in, m);
    ZPoly q(a.size() >= h.size() ? a.size() - h.size() + 1 : 0, BigInt(0));
    while (a.size() >= h.size() && !a.empty()) {
        BigInt c = a.back();
        std::size_t shift = a.size() - h.size();
        q[shift] = c;
        for (std::size_t i = 0; i < h.size(); ++i) a[shift + i] = symmod(a[shift + i] - c * h[i], m);
        ztrim(a);
    }
    ztrim(q);
    return {zmod_sym(q, m), a};
}

// Exact division over Z; true and quotient if g | f.
inline bool zdivides(const ZPoly& f, const ZPoly& g, ZPoly& quot) {
    if (g.empty()) return false;
    ZPoly rem = f;
    quot.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, BigInt(0));
    while (rem.size() >= g.size() && !rem.empty()) {
        if (rem.back() % g.back() != 0) return false;
        BigInt c = rem.back() / g.back();
        std::size_t shift = rem.size() - g.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) rem[shift + i] -= c * g[i];
        ztrim(rem);
    }
    return rem.empty();
}

inline BigInt zcontent(const ZPoly& p) {
    BigInt g = 0;
    for (auto& c : p) g = boost::multiprecision::gcd(g, c);
    return g == 0 ? BigInt(1) : g;
}

inline void zprimitive(ZPoly& p) {
    BigInt c = zcontent(p);
    for (auto& v : p) v /= c;
    if (!p.empty() && p.back() < 0)
        for (auto& v : p) v = -v;
}

inline BigInt znorm_inf(const ZPoly& p) {
    BigInt m = 0;
    for (auto& c : p) {
        BigInt a = boost::multiprecision::abs(c);
        if (a > m) m = a;
    }
    return m;
}

// One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10):
// given f = g h (mod m), s g + t h = 1 (mod m), h monic, lifts everything to m^2.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, BigInt& m) {
    BigInt m2 = m * m;
    ZPoly e = zmod_sym(zsub(f, zmul(g, h)), m2);
    auto [q, r] = zdivmod_monic_mod(zmul(s, e), h, m2);
    ZPoly gstar = zmod_sym(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
    ZPoly hstar = zmod_sym(zadd(h, r), m2);
    ZPoly b = zmod_sym(zsub(zadd(zmul(s, gstar), zmul(t, hstar)), ZPoly{BigInt(1)}), m2);
    auto [c, d] = zdivmod_monic_mod(zmul(s, b), hstar, m2);
    ZPoly sstar = zmod_sym(zsub(s, d), m2);
    ZPoly tstar = zmod_sym(zsub(t, zadd(zmul(t, b), zmul(c, gstar))), m2);
    g = gstar;
    h = hstar;
    s = sstar;
    t = tstar;
    m = m2;
}

// Lifts the pair (complement, candidate) of f mod p to modulus >= target and
// returns the candidate (monic side) symmetrically reduced.
inline bool hensel_lift_candidate(const ZPoly& f, const Poly<PrimeField>& cand_fp,
                                  const Poly<PrimeField>& comp_fp, const PrimeField& kp,
                                  const BigInt& target, ZPoly& cand_out) {
    // g = lc(f) * comp (mod p), h = cand monic
    auto lcp = kp.from_bigint(f.back());
    Poly<PrimeField> g0 = poly_scale(kp, comp_fp, lcp);
    Poly<PrimeField> h0 = cand_fp;  // monic
    // Bezout s g0 + t h0 = 1 over F_p with deg s < deg h0, deg t < deg g0
    Poly<PrimeField> r0 = g0, r1 = h0;
    Poly<PrimeField> s0 = poly_const(kp, kp.one()), s1;
    Poly<PrimeField> t0, t1 = poly_const(kp, kp.one());
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(kp, r0, r1);
        Poly<PrimeField> s2 = poly_sub(kp, s0, poly_mul(kp, q, s1));
        Poly<PrimeField> t2 = poly_sub(kp, t0, poly_mul(kp, q, t1));
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (poly_deg<PrimeField>(r0) != 0) return false;  // not coprime: bad subset
    auto lead = kp.inv(r0.back());
    Poly<PrimeField> s = poly_scale(kp, s0, lead);
    Poly<PrimeField> t = poly_scale(kp, t0, lead);
    s = poly_mod(kp, s, h0);
    // t = (1 - s g0)/h0 exactly
    Poly<PrimeField> num = poly_sub(kp, poly_const(kp, kp.one()), poly_mul(kp, s, g0));
    auto [texact, trem] = poly_divmod(kp, num, h0);
    if (!trem.empty()) return false;
    t = texact;

    auto to_z = [&](const Poly<PrimeField>& q) {
        ZPoly r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = BigInt(kp.signed_rep(q[i]));
        return r;
    };
    ZPoly g = to_z(g0), h = to_z(h0), sz = to_z(s), tz = to_z(t);
    BigInt m(kp.modulus());
    while (m < target) hensel_step(f, g, h, sz, tz, m);
    cand_out = zmod_sym(h, m);
    return true;
}

// Zassenhaus on a primitive squarefree integer polynomial with no rational
// roots and degree >= 4. Returns irreducible primitive integer factors.
inline std::vector<ZPoly> zassenhaus_core(ZPoly f) {
    std::vector<ZPoly> out;
    int n = static_cast<int>(f.size()) - 1;

    static const std::uint64_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                           47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    std::uint64_t chosen = 0;
    PolyFactors<PrimeField> modfac;
    std::size_t best_count = static_cast<std::size_t>(-1);
    int good_seen = 0;
    for (auto p : primes) {
        if (f.back() % p == 0) continue;
        PrimeField k(p);
        Poly<PrimeField> fp(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) fp[i] = k.from_bigint(f[i]);
        poly_trim(k, fp);
        if (poly_deg<PrimeField>(fp) != n) continue;
        if (poly_deg<PrimeField>(poly_gcd(k, fp, poly_derivative(k, fp))) != 0) continue;
        auto fac = poly_factor(k, fp);
        if (fac.size() < best_count) {
            best_count = fac.size();
            chosen = p;
            modfac = fac;
        }
        if (++good_seen >= 4 || best_count == 1) break;
    }
    if (chosen == 0) throw internal_error("zassenhaus: no squarefree prime found");
    if (modfac.size() == 1) {
        out.push_back(f);
        return out;
    }
    PrimeField kp(chosen);
    std::vector<Poly<PrimeField>> fs;
    for (auto& [q, mult] : modfac)
        for (int i = 0; i < mult; ++i) fs.push_back(q);

    // coefficient bound for lc(f) * (any factor of f)
    auto lm_bound = [&](const ZPoly& poly) {
        int deg = static_cast<int>(poly.size()) - 1;
        return (znorm_inf(poly) + 1) * boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(deg + 2)) *
               boost::multiprecision::abs(poly.back());
    };

    std::vector<bool> used(fs.size(), false);
    std::size_t remaining = fs.size();
    for (std::size_t take = 1; take <= remaining && 2 * take <= remaining; ++take) {
        bool found = true;
        while (found && 2 * take <= remaining) {
            found = false;
            std::vector<std::size_t> sel;
            std::function<bool(std::size_t)> scan = [&](std::size_t start) -> bool {
                if (sel.size() == take) {
                    Poly<PrimeField> cand = poly_const(kp, kp.one());
                    for (auto i : sel) cand = poly_mul(kp, cand, fs[i]);
                    Poly<PrimeField> comp = poly_const(kp, kp.one());
                    for (std::size_t i = 0; i < fs.size(); ++i)
                        if (!used[i] && std::find(sel.begin(), sel.end(), i) == sel.end())
                            comp = poly_mul(kp, comp, fs[i]);
                    ZPoly lifted;
                    if (!hensel_lift_candidate(f, cand, comp, kp, lm_bound(f) * 2, lifted)) return false;
                    // true factor candidate: primitive part of lc*h
                    ZPoly scaled = lifted;
                    for (auto& c : scaled) c *= f.back();
                    BigInt m = BigInt(chosen);
                    // scaled must be reduced mod the final lift modulus; lifted is
                    // already reduced, multiply-then-primitive works directly:
                    zprimitive(scaled);
                    ZPoly quot;
                    if (zdivides(f, scaled, quot)) {
                        out.push_back(scaled);
                        zprimitive(quot);
                        f = quot;
                        for (auto i : sel) {
                            used[i] = true;
                            --remaining;
                        }
                        return true;
                    }
                    return false;
                }
                for (std::size_t i = start; i < fs.size(); ++i) {
                    if (used[i]) continue;
                    sel.push_back(i);
                    if (scan(i + 1)) return true;
                    sel.pop_back();
                }
                return false;
            };
            if (scan(0)) found = true;
        }
    }
    if (static_cast<int>(f.size()) - 1 >= 1) out.push_back(f);
    return out;
}

// Full factorization of a primitive integer polynomial into irreducibles.
inline std::vector<ZPoly> zfactor_squarefree(ZPoly f) {
    std::vector<ZPoly> out;
    // rational roots r/s, r | a0, s | an
    bool progress = true;
    while (progress && static_cast<int>(f.size()) - 1 >= 1) {
        progress = false;
        if (f.front() == 0) {
            out.push_back(ZPoly{BigInt(0), BigInt(1)});
            f.erase(f.begin());
            progress = true;
            continue;
        }
        auto divisors = [](BigInt v) {
            v = boost::multiprecision::abs(v);
            std::vector<BigInt> ds;
            for (BigInt i = 1; i * i <= v; ++i) {
                if (v % i == 0) {
                    ds.push_back(i);
                    ds.push_back(v / i);
                }
                if (i > 2000000) {  // give up enumerating huge divisors; Hensel path still finds roots
                    break;
                }
            }
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            return ds;
        };
        int deg = static_cast<int>(f.size()) - 1;
        if (deg == 0) break;
        for (const BigInt& s : divisors(f.back())) {
            for (const BigInt& r : divisors(f.front())) {
                for (int sign = 0; sign < 2 && !progress; ++sign) {
                    BigInt num = sign ? -r : r;
                    if (boost::multiprecision::gcd(boost::multiprecision::abs(num), s) != 1) continue;
                    BigInt acc = 0;
                    for (int i = deg; i >= 0; --i)
                        acc = acc * num +
                              f[static_cast<std::size_t>(i)] *
                                  boost::multiprecision::pow(s, static_cast<unsigned>(deg - i));
                    if (acc == 0) {
                        ZPoly lin{-num, s};
                        ZPoly quot;
                        if (zdivides(f, lin, quot)) {
                            zprimitive(lin);
                            out.push_back(lin);
                            f = quot;
                            zprimitive(f);
                            progress = true;
                        }
                    }
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 0) return out;
    if (deg <= 3) {  // no rational roots left: degrees 2 and 3 are irreducible
        out.push_back(f);
        return out;
    }
    auto rest = zassenhaus_core(std::move(f));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace polydetail

inline PolyFactors<RationalField> poly_factor(const RationalField& k,
                                              const Poly<RationalField>& f_in) {
    using P = Poly<RationalField>;
    if (poly_deg<RationalField>(f_in) < 1) return {};
    PolyFactors<RationalField> out;

    // Yun squarefree decomposition.
    P f = poly_monic(k, f_in);
    P d = poly_derivative(k, f);
    P a = poly_gcd(k, f, d);
    P b = poly_divmod(k, f, a).first;
    P c = poly_divmod(k, d, a).first;
    P z = poly_sub(k, c, poly_derivative(k, b));
    int mult = 1;
    std::vector<std::pair<P, int>> sqf;
    while (poly_deg<RationalField>(b) > 0) {
        P g = poly_gcd(k, b, z);
        if (poly_deg<RationalField>(g) > 0) sqf.emplace_back(g, mult);
        b = poly_divmod(k, b, g).first;
        z = poly_sub(k, poly_divmod(k, z, g).first, poly_derivative(k, b));
        ++mult;
    }

    for (auto& [part, m] : sqf) {
        BigInt den = 1;
        for (auto& coef : part) den = boost::multiprecision::lcm(den, denominator(coef));
        polydetail::ZPoly zp(part.size());
        for (std::size_t i = 0; i < part.size(); ++i)
            zp[i] = numerator(part[i]) * (den / denominator(part[i]));
        polydetail::zprimitive(zp);
        for (auto& irr : polydetail::zfactor_squarefree(std::move(zp))) {
            P q(irr.size());
            for (std::size_t i = 0; i < irr.size(); ++i) q[i] = BigRational(irr[i]);
            out.emplace_back(poly_monic(k, q), m);
        }
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        if (poly_less(k, x.first, y.first)) return true;
        if (poly_less(k, y.first, x.first)) return false;
        return x.second < y.second;
    });
    return out;
}

// Pretty printer used in jordans.csv: "(λ^2+2λ+3)" with symmetric
// representatives over F_p so the eigenvalue-1 cell prints as (λ-1).
template <class F>
std::string poly_to_display(const F& k, const Poly<F>& p) {
    if (p.empty()) return "0";
    std::string s = "(";
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (k.is_zero(p[i]) && p.size() > 1) continue;
        std::string coef;
        bool neg = false;
        if constexpr (std::is_same_v<F, PrimeField>) {
            long long v = k.signed_rep(p[i]);
            neg = v < 0;
            coef = std::to_string(neg ? -v : v);
        } else {
            auto v = p[i];
            neg = v < 0;
            if (neg) v = -v;
            coef = k.to_string(v);
        }
        std::string term;
        if (i == 0) {
            term = coef;
        } else {
            term = (coef == "1") ? "" : coef;
            term += "\xce\xbb";  // λ
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (first) {
            s += (neg ? "-" : "") + term;
            first = false;
        } else {
            s += (neg ? "-" : "+") + term;
        }
    }
    s += ")";
    return s;
}

}  // namespace spiralis
