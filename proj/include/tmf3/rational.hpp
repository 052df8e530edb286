#pragma once

// Exact integers and rationals on top of GMP, p-adic valuations,
// Bernoulli numbers and divisor power sums.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmf3 {

using BigInt = mpz_class;
// mpq_class results of arithmetic are always canonical: reduced, positive
// denominator.  Construct through make_rational to keep that true.
using Rational = mpq_class;

/// Raised when an input lies outside an operation's mathematical domain.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

/// Parses "p" or "p/q" (optional leading sign).  Throws DomainError.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return make_rational(BigInt(text, 10));
        return make_rational(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal '" + text + "'");
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// p-adic valuation with +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : value_(v) {}
    static constexpr Valuation infinity() {
        Valuation v;
        v.value_ = std::numeric_limits<long>::max();
        return v;
    }

    constexpr bool is_infinite() const { return value_ == std::numeric_limits<long>::max(); }
    constexpr long value() const { return value_; }

    constexpr Valuation operator+(Valuation o) const {
        if (is_infinite() || o.is_infinite()) return infinity();
        return Valuation(value_ + o.value_);
    }
    constexpr auto operator<=>(const Valuation&) const = default;
    constexpr bool operator==(const Valuation&) const = default;
    constexpr bool operator==(long v) const { return !is_infinite() && value_ == v; }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

private:
    long value_ = 0;
};

inline long val_p(const BigInt& z, unsigned long p) {
    if (z == 0) return std::numeric_limits<long>::max();
    BigInt p_big(p);
    return static_cast<long>(mpz_remove(BigInt().get_mpz_t(), z.get_mpz_t(), p_big.get_mpz_t()));
}

inline bool is_prime(unsigned long p) {
    return p >= 2 && mpz_probab_prime_p(BigInt(p).get_mpz_t(), 30) > 0;
}

/// val_p(q) = val_p(num) - val_p(den); val_p(0) is +infinity.
inline Valuation val_p(const Rational& q, unsigned long p) {
    if (!is_prime(p)) throw DomainError("val_p: " + std::to_string(p) + " is not prime");
    if (q == 0) return Valuation::infinity();
    return Valuation(val_p(BigInt(q.get_num()), p) - val_p(BigInt(q.get_den()), p));
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// B_0..B_m from sum_{k=0}^{m} C(m+1,k) B_k = 0, with B_1 = -1/2.
inline std::vector<Rational> bernoulli_table(unsigned m) {
    std::vector<Rational> b(m + 1);
    b[0] = 1;
    for (unsigned n = 1; n <= m; ++n) {
        Rational s = 0;
        for (unsigned k = 0; k < n; ++k) s += Rational(binomial(n + 1, k)) * b[k];
        b[n] = -s / Rational(n + 1);
    }
    return b;
}

/// Exact B_m for even m >= 2 (B_2 = 1/6).
inline Rational bernoulli(long m) {
    if (m < 2 || m % 2 != 0) throw DomainError("bernoulli: index must be even and >= 2");
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard lock(mu);
    if (cache.size() <= static_cast<std::size_t>(m)) cache = bernoulli_table(static_cast<unsigned>(m));
    return cache[static_cast<std::size_t>(m)];
}

/// sum of d^k over the positive divisors d of n.
inline BigInt sigma_pow(unsigned long k, long n) {
    if (n <= 0) throw DomainError("sigma_pow: n must be positive");
    BigInt total = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        BigInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), k);
        total += term;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(e), k);
            total += term;
        }
    }
    return total;
}

inline Rational pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return pow(Rational(1) / base, -e);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace tmf3
