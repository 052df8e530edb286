#pragma once

// Sparse multivariate polynomials over Q with a modular-form weight
// grading, reduction mod 2, and the canonical localization at
// Delta = a3^3 (a1^3 - 27 a3).

#include "tmf3/rational.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

namespace tmf3 {

enum class Var : int { a1 = 0, a2, a3, a4, a6, u, v, x };

inline constexpr int kNumVars = 8;
inline constexpr std::array<std::string_view, kNumVars> kVarNames = {"a1", "a2", "a3", "a4", "a6", "u", "v", "x"};
// a_i has weight i; x is the Weierstrass x-coordinate (weight 2); u, v are
// ungraded helpers.
inline constexpr std::array<long, kNumVars> kDefaultWeights = {1, 2, 3, 4, 6, 0, 0, 2};

inline std::optional<Var> var_from_name(std::string_view name) {
    for (int i = 0; i < kNumVars; ++i)
        if (kVarNames[i] == name) return static_cast<Var>(i);
    return std::nullopt;
}

using Monomial = std::array<int, kNumVars>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
    for (int i = 0; i < kNumVars; ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& m, const Monomial& d) {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r[i] = m[i] - d[i];
    return r;
}

inline long mono_weight(const Monomial& m, const std::array<long, kNumVars>& w = kDefaultWeights) {
    long s = 0;
    for (int i = 0; i < kNumVars; ++i) s += w[i] * m[i];
    return s;
}

inline std::string mono_to_string(const Monomial& m) {
    std::string out;
    for (int i = 0; i < kNumVars; ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += kVarNames[i];
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

class MultiPoly {
public:
    // Descending lexicographic order, a1 most significant.  This is also the
    // printing order.
    using TermMap = std::map<Monomial, Rational, std::greater<>>;

    MultiPoly() = default;
    MultiPoly(const Rational& c) {  // NOLINT: constants promote implicitly
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT

    static MultiPoly variable(Var v, int exponent = 1) {
        Monomial m{};
        m[static_cast<int>(v)] = exponent;
        return monomial(m, 1);
    }
    static MultiPoly monomial(const Monomial& m, const Rational& c) {
        MultiPoly p;
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{}); }
    Rational constant_value() const { return coefficient(Monomial{}); }

    /// Lexicographically largest term.  Requires a nonzero polynomial.
    const std::pair<const Monomial, Rational>& leading_term() const {
        if (terms_.empty()) throw DomainError("leading term of zero polynomial");
        return *terms_.begin();
    }

    int degree(Var v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<int>(v)]);
        return d;
    }
    int min_degree(Var v) const {
        if (terms_.empty()) return 0;
        int d = std::numeric_limits<int>::max();
        for (const auto& [m, c] : terms_) d = std::min(d, m[static_cast<int>(v)]);
        return d;
    }

    /// Common weight of all terms, or nullopt if the polynomial is not
    /// homogeneous.  The zero polynomial has no weight.
    std::optional<long> weight(const std::array<long, kNumVars>& w = kDefaultWeights) const {
        std::optional<long> out;
        for (const auto& [m, c] : terms_) {
            long mw = mono_weight(m, w);
            if (out && *out != mw) return std::nullopt;
            out = mw;
        }
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) {
        *this = *this * o;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) {
        if (s == 0) return {};
        for (auto& [m, c] : a.terms_) c *= s;
        return a;
    }
    friend MultiPoly operator*(long s, MultiPoly a) { return Rational(s) * std::move(a); }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    MultiPoly pow(unsigned long e) const {
        MultiPoly result(1), base = *this;
        while (e > 0) {
            if (e & 1UL) result *= base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Replaces each variable v by images[v] (identity where unset).
    MultiPoly substitute(const std::array<std::optional<MultiPoly>, kNumVars>& images) const {
        std::array<std::vector<MultiPoly>, kNumVars> powers;
        auto power_of = [&](int i, int e) -> const MultiPoly& {
            auto& cache = powers[i];
            if (cache.empty()) cache.emplace_back(1);
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *images[i]);
            return cache[e];
        };
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            Monomial kept{};
            MultiPoly factor(c);
            for (int i = 0; i < kNumVars; ++i) {
                if (m[i] == 0) continue;
                if (images[i]) factor *= power_of(i, m[i]);
                else kept[i] = m[i];
            }
            out += factor * monomial(kept, 1);
        }
        return out;
    }

    MultiPoly substitute(Var v, const MultiPoly& image) const {
        std::array<std::optional<MultiPoly>, kNumVars> images;
        images[static_cast<int>(v)] = image;
        return substitute(images);
    }

    /// Evaluates with every occurring variable given a rational value.
    Rational evaluate(const std::array<Rational, kNumVars>& values) const {
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < kNumVars; ++i)
                if (m[i] != 0) t *= tmf3::pow(values[i], m[i]);
            total += t;
        }
        return total;
    }

    MultiPoly derivative(Var v) const {
        const int i = static_cast<int>(v);
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            --d[i];
            out.add_term(d, c * m[i]);
        }
        return out;
    }

    /// Exact quotient by divisor, or nullopt if divisor does not divide.
    /// Lex division against a single divisor is an exact membership test
    /// for the principal ideal it generates.
    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const {
        if (divisor.is_zero()) throw DomainError("division by zero polynomial");
        const auto& [lm, lc] = divisor.leading_term();
        MultiPoly rem = *this, quot;
        while (!rem.is_zero()) {
            const auto& [rm, rc] = rem.leading_term();
            if (!mono_divides(lm, rm)) return std::nullopt;
            MultiPoly t = monomial(mono_div(rm, lm), rc / lc);
            quot += t;
            rem -= t * divisor;
        }
        return quot;
    }

    /// min over coefficients of val_p; +infinity for zero.
    Valuation content_valuation(unsigned long p) const {
        Valuation v = Valuation::infinity();
        for (const auto& [m, c] : terms_) v = std::min(v, val_p(c, p));
        return v;
    }

    bool has_integer_coefficients() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
    }

    /// Canonical text: "c*a1^i*a3^j" terms, descending lex order, joined by " + ".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += tmf3::to_string(c);
            if (m != Monomial{}) out += "*" + mono_to_string(m);
        }
        return out;
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline MultiPoly a1() { return MultiPoly::variable(Var::a1); }
inline MultiPoly a3() { return MultiPoly::variable(Var::a3); }

inline Monomial mono_a1a3(int i, int j) {
    Monomial m{};
    m[static_cast<int>(Var::a1)] = i;
    m[static_cast<int>(Var::a3)] = j;
    return m;
}

/// a1^3 - 27 a3: the second factor of Delta = a3^3 (a1^3 - 27 a3).
inline const MultiPoly& cusp_factor() {
    static const MultiPoly f = a1().pow(3) - 27 * a3();
    return f;
}

/// Reduction mod 2; result has coefficients in {1} (F2 coefficients stored
/// as integer 1).  Odd denominators map to 1 since they are units mod 2.
inline MultiPoly mod2(const MultiPoly& p) {
    MultiPoly out;
    for (const auto& [m, c] : p.terms()) {
        if (mpz_even_p(c.get_den_mpz_t())) throw DomainError("mod2: coefficient " + to_string(c) + " has even denominator");
        if (mpz_odd_p(c.get_num_mpz_t())) out += MultiPoly::monomial(m, 1);
    }
    return out;
}

struct Term {
    Monomial mono;
    Rational coef;
    bool operator==(const Term&) const = default;
};

/// The term with the smallest a1-exponent (ties broken by smallest
/// a3-exponent, which cannot occur for homogeneous input).
inline Term min_a1_term(const MultiPoly& p) {
    if (p.is_zero()) throw DomainError("min_a1_term of zero polynomial");
    const int i1 = static_cast<int>(Var::a1);
    const int i3 = static_cast<int>(Var::a3);
    const std::pair<const Monomial, Rational>* best = nullptr;
    for (const auto& t : p.terms()) {
        if (!best || t.first[i1] < best->first[i1] ||
            (t.first[i1] == best->first[i1] && t.first[i3] < best->first[i3]))
            best = &t;
    }
    return {best->first, best->second};
}

/// Element num / (a3^e3 * (a1^3 - 27 a3)^e9) of Z[1/3][a1, a3, Delta^-1] (over Q).
class LocElem {
public:
    LocElem() = default;
    LocElem(MultiPoly num, long e3 = 0, long e9 = 0)  // NOLINT: polynomials promote implicitly
        : num_(std::move(num)), e3_(e3), e9_(e9) {
        normalize();
    }
    LocElem(const Rational& c) : LocElem(MultiPoly(c)) {}  // NOLINT
    LocElem(long c) : LocElem(MultiPoly(c)) {}             // NOLINT

    /// Delta^k, k of either sign.
    static LocElem delta_pow(long k) {
        if (k >= 0) return LocElem((a3().pow(3) * cusp_factor()).pow(static_cast<unsigned long>(k)));
        return LocElem(MultiPoly(1), -3 * k, -k);
    }

    const MultiPoly& num() const { return num_; }
    long e3() const { return e3_; }
    long e9() const { return e9_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return e3_ == 0 && e9_ == 0; }

    friend LocElem operator+(const LocElem& a, const LocElem& b) {
        long e3 = std::max(a.e3_, b.e3_), e9 = std::max(a.e9_, b.e9_);
        return LocElem(a.lift(e3, e9) + b.lift(e3, e9), e3, e9);
    }
    friend LocElem operator-(const LocElem& a) { return LocElem(-a.num_, a.e3_, a.e9_); }
    friend LocElem operator-(const LocElem& a, const LocElem& b) { return a + (-b); }
    friend LocElem operator*(const LocElem& a, const LocElem& b) {
        return LocElem(a.num_ * b.num_, a.e3_ + b.e3_, a.e9_ + b.e9_);
    }
    friend LocElem operator*(const Rational& s, const LocElem& a) { return LocElem(s * a.num_, a.e3_, a.e9_); }
    friend LocElem operator*(long s, const LocElem& a) { return Rational(s) * a; }
    LocElem& operator+=(const LocElem& o) { return *this = *this + o; }
    LocElem& operator-=(const LocElem& o) { return *this = *this - o; }
    LocElem& operator*=(const LocElem& o) { return *this = *this * o; }
    friend bool operator==(const LocElem& a, const LocElem& b) = default;

    /// Units are c * a3^i * (a1^3 - 27 a3)^j.
    std::optional<LocElem> inverse() const {
        if (num_.is_zero()) return std::nullopt;
        MultiPoly rest = num_;
        long i = rest.min_degree(Var::a3);
        rest = *rest.divide_exact(MultiPoly::variable(Var::a3, i));
        long j = 0;
        while (!rest.is_constant()) {
            auto q = rest.divide_exact(cusp_factor());
            if (!q) return std::nullopt;
            rest = std::move(*q);
            ++j;
        }
        LocElem inv(MultiPoly(Rational(1) / rest.constant_value()), i, j);
        inv.num_ = inv.num_ * a3().pow(static_cast<unsigned long>(e3_)) * cusp_factor().pow(static_cast<unsigned long>(e9_));
        inv.normalize();
        return inv;
    }

    LocElem pow(long e) const {
        if (e < 0) {
            auto inv = inverse();
            if (!inv) throw DomainError("pow: element is not a unit in the localization");
            return inv->pow(-e);
        }
        return LocElem(num_.pow(static_cast<unsigned long>(e)), e3_ * e, e9_ * e);
    }

    /// Weight of a homogeneous element; a3 and a1^3 - 27 a3 both have weight 3.
    std::optional<long> weight() const {
        auto w = num_.weight();
        if (!w) return std::nullopt;
        return *w - 3 * e3_ - 3 * e9_;
    }

    /// True when the element is fixed by a1 -> -a1, a3 -> -a3.
    bool is_sigma_invariant() const {
        const int i1 = static_cast<int>(Var::a1), i3 = static_cast<int>(Var::a3);
        long parity = (e3_ + e9_) & 1L;
        return std::all_of(num_.terms().begin(), num_.terms().end(),
                           [&](const auto& t) { return ((t.first[i1] + t.first[i3]) & 1L) == parity; });
    }

    /// The same element written over Delta^m with m minimal: returns
    /// (numerator, m).
    std::pair<MultiPoly, long> over_delta_power() const {
        long m = std::max((e3_ + 2) / 3, e9_);
        MultiPoly n = lift(3 * m, m);
        return {n, m};
    }

    /// Numerator when written over a3^e3 (a1^3-27a3)^e9 with e3 >= e3(), e9 >= e9().
    MultiPoly lift(long e3, long e9) const {
        return num_ * a3().pow(static_cast<unsigned long>(e3 - e3_)) * cusp_factor().pow(static_cast<unsigned long>(e9 - e9_));
    }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        std::string den;
        if (e3_ > 0) den = e3_ == 1 ? "a3" : "a3^" + std::to_string(e3_);
        if (e9_ > 0) {
            if (!den.empty()) den += "*";
            den += "(a1^3 + -27*a3)";
            if (e9_ != 1) den += "^" + std::to_string(e9_);
        }
        return "(" + num_.to_string() + ")/(" + den + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            e3_ = e9_ = 0;
            return;
        }
        if (e3_ < 0) {
            num_ = num_ * a3().pow(static_cast<unsigned long>(-e3_));
            e3_ = 0;
        }
        if (e9_ < 0) {
            num_ = num_ * cusp_factor().pow(static_cast<unsigned long>(-e9_));
            e9_ = 0;
        }
        if (e3_ > 0) {
            long k = std::min<long>(e3_, num_.min_degree(Var::a3));
            if (k > 0) {
                num_ = *num_.divide_exact(MultiPoly::variable(Var::a3, static_cast<int>(k)));
                e3_ -= k;
            }
        }
        while (e9_ > 0) {
            auto q = num_.divide_exact(cusp_factor());
            if (!q) break;
            num_ = std::move(*q);
            --e9_;
        }
    }

    MultiPoly num_;
    long e3_ = 0;
    long e9_ = 0;
};

inline LocElem loc_normalize(const MultiPoly& num, long e3, long e9) { return LocElem(num, e3, e9); }

}  // namespace tmf3
