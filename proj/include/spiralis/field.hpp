#pragma once

// Exact coefficient fields: F_p for a prime p, and the rationals with
// arbitrary-precision integers. All homology in this library is computed
// over one of these.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spiralis {

// Thrown for malformed user-supplied data (CLI exit code 2).
class invalid_input : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant breaks (CLI exit code 3).
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime description of the coefficient field. prime == 0 means Q.
struct FieldSpec {
    std::uint64_t prime = 0;

    bool is_rational() const { return prime == 0; }
    bool operator==(const FieldSpec&) const = default;

    std::string name() const {
        return is_rational() ? std::string("Q") : "F_" + std::to_string(prime);
    }

    static FieldSpec rational() { return FieldSpec{0}; }
    static FieldSpec fp(std::uint64_t p) {
        if (!is_prime_u64(p)) throw invalid_input("field: p is not prime");
        if (p >= (std::uint64_t(1) << 31)) throw invalid_input("field: p too large");
        return FieldSpec{p};
    }
};

// Prime field F_p, p < 2^31 so products fit in 64 bits.
class PrimeField {
public:
    using Elem = std::uint64_t;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime_u64(p)) throw invalid_input("field: p is not prime");
        if (p >= (std::uint64_t(1) << 31)) throw invalid_input("field: p too large");
    }
    explicit PrimeField(const FieldSpec& s) : PrimeField(s.prime) {}

    FieldSpec spec() const { return FieldSpec{p_}; }
    std::uint64_t modulus() const { return p_; }
    bool operator==(const PrimeField&) const = default;

    Elem zero() const { return 0; }
    Elem one() const { return p_ > 1 ? 1 : 0; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool less(Elem a, Elem b) const { return a < b; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem inv(Elem a) const {
        if (a == 0) throw internal_error("F_p: inverse of zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt; nt = tmp;
            tmp = r - q * nr;
            r = nr; nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return static_cast<Elem>(m);
    }
    Elem from_bigint(const BigInt& v) const {
        BigInt m = v % BigInt(p_);
        if (m < 0) m += p_;
        return static_cast<Elem>(m.convert_to<std::uint64_t>());
    }
    // Accepts "a", "-a" and "a/b" (reduced mod p).
    Elem from_string(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos) return from_bigint(BigInt(s));
        Elem num = from_bigint(BigInt(s.substr(0, slash)));
        Elem den = from_bigint(BigInt(s.substr(slash + 1)));
        if (den == 0) throw invalid_input("F_p entry with denominator divisible by p");
        return div(num, den);
    }

    std::string to_string(Elem a) const { return std::to_string(a); }
    // Symmetric representative in (-p/2, p/2]; used when printing polynomials.
    long long signed_rep(Elem a) const {
        return a <= p_ / 2 ? static_cast<long long>(a)
                           : static_cast<long long>(a) - static_cast<long long>(p_);
    }

    // Pivot choice: any nonzero works equally well over F_p.
    int pivot_cost(Elem) const { return 0; }

private:
    std::uint64_t p_ = 2;
};

// The rationals, kept in lowest terms by cpp_rational.
class RationalField {
public:
    using Elem = BigRational;

    RationalField() = default;
    explicit RationalField(const FieldSpec& s) {
        if (!s.is_rational()) throw internal_error("RationalField built from prime spec");
    }

    FieldSpec spec() const { return FieldSpec::rational(); }
    bool operator==(const RationalField&) const = default;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool less(const Elem& a, const Elem& b) const { return a < b; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw internal_error("Q: inverse of zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

    Elem from_int(long long v) const { return Elem(v); }
    Elem from_bigint(const BigInt& v) const { return Elem(v); }
    Elem from_string(const std::string& s) const {
        try {
            return Elem(s);
        } catch (const std::exception&) {
            throw invalid_input("bad rational literal: " + s);
        }
    }

    std::string to_string(const Elem& a) const {
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }

    // Prefer small numerators/denominators as pivots to limit coefficient growth.
    int pivot_cost(const Elem& a) const {
        auto bits = [](const BigInt& v) {
            return v == 0 ? 0 : static_cast<int>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
        };
        return bits(numerator(a)) + bits(denominator(a));
    }

private:
    Elem inv_guard(const Elem& b) const {
        if (b == 0) throw internal_error("Q: division by zero");
        return b;
    }
};

// Calls fn with the concrete field object for a runtime FieldSpec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.is_rational()) return fn(RationalField{});
    return fn(PrimeField{spec.prime});
}

}  // namespace spiralis
