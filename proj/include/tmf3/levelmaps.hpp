#pragma once

// Modular forms of level 1 and of level Gamma_0(3), the maps f*, q*, h*, t*
// between them, the two-term building cochain complex, and the 2-adic
// statements about delta = q* - f*.

#include "tmf3/funfield.hpp"
#include "tmf3/poly.hpp"
#include "tmf3/weierstrass.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace tmf3 {

/// Basis monomial c4^a c6^eps Delta^d, eps in {0, 1}.
struct FormMonomial {
    int a = 0;
    int eps = 0;
    int d = 0;

    long weight() const { return 4L * a + 6L * eps + 12L * d; }
    auto operator<=>(const FormMonomial&) const = default;
};

/// Element of MF = Z[1/3][c4, c6, Delta^{+-1}] / (c4^3 - c6^2 - 1728 Delta),
/// written uniquely in the basis c4^a c6^eps Delta^d.
class LevelOneForm {
public:
    using TermMap = std::map<FormMonomial, Rational, std::greater<>>;

    LevelOneForm() = default;
    LevelOneForm(const Rational& c) { add_term({}, c); }  // NOLINT
    LevelOneForm(long c) : LevelOneForm(Rational(c)) {}   // NOLINT

    static LevelOneForm monomial(FormMonomial m, const Rational& c = 1) {
        if (m.eps < 0 || m.eps > 1 || m.a < 0) throw DomainError("level-one basis monomial out of range");
        LevelOneForm f;
        f.add_term(m, c);
        return f;
    }
    static LevelOneForm c4() { return monomial({1, 0, 0}); }
    static LevelOneForm c6() { return monomial({0, 1, 0}); }
    static LevelOneForm delta(int d = 1) { return monomial({0, 0, d}); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::optional<long> weight() const {
        std::optional<long> w;
        for (const auto& [m, c] : terms_) {
            if (w && *w != m.weight()) return std::nullopt;
            w = m.weight();
        }
        return w;
    }

    friend LevelOneForm operator+(LevelOneForm a, const LevelOneForm& b) {
        for (const auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }
    friend LevelOneForm operator-(const LevelOneForm& a) { return Rational(-1) * a; }
    friend LevelOneForm operator-(const LevelOneForm& a, const LevelOneForm& b) { return a + (-b); }
    friend LevelOneForm operator*(const Rational& s, LevelOneForm a) {
        if (s == 0) return {};
        for (auto& [m, c] : a.terms_) c *= s;
        return a;
    }
    friend LevelOneForm operator*(long s, const LevelOneForm& a) { return Rational(s) * a; }
    friend LevelOneForm operator*(const LevelOneForm& a, const LevelOneForm& b) {
        LevelOneForm r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                FormMonomial m{ma.a + mb.a, ma.eps + mb.eps, ma.d + mb.d};
                Rational c = ca * cb;
                if (m.eps == 2) {
                    // c6^2 = c4^3 - 1728 Delta
                    r.add_term({m.a + 3, 0, m.d}, c);
                    r.add_term({m.a, 0, m.d + 1}, -1728 * c);
                } else {
                    r.add_term(m, c);
                }
            }
        return r;
    }
    LevelOneForm& operator+=(const LevelOneForm& o) { return *this = *this + o; }
    LevelOneForm& operator*=(const LevelOneForm& o) { return *this = *this * o; }
    friend bool operator==(const LevelOneForm&, const LevelOneForm&) = default;

    /// Negative powers exist only for c * Delta^d.
    LevelOneForm pow(long e) const {
        if (e < 0) {
            if (terms_.size() != 1 || terms_.begin()->first.a != 0 || terms_.begin()->first.eps != 0)
                throw DomainError("only Delta^d is invertible among level-one forms");
            const auto& [m, c] = *terms_.begin();
            return monomial({0, 0, static_cast<int>(m.d * e)}, tmf3::pow(c, e));
        }
        LevelOneForm r(1), b = *this;
        while (e > 0) {
            if (e & 1L) r *= b;
            e >>= 1;
            if (e > 0) b *= b;
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += tmf3::to_string(c);
            if (m.a) out += m.a == 1 ? "*c4" : "*c4^" + std::to_string(m.a);
            if (m.eps) out += "*c6";
            if (m.d) out += m.d == 1 ? "*Delta" : "*Delta^" + std::to_string(m.d);
        }
        return out;
    }

private:
    void add_term(const FormMonomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline std::string to_string(const LevelOneForm& f) { return f.to_string(); }

/// Element of MF(Gamma_0(3)) = Z[1/3][a1^2, a1 a3, a3^2, Delta^-1]: a
/// localized polynomial fixed by a1 -> -a1, a3 -> -a3.
class Gamma03Form {
public:
    Gamma03Form() = default;
    Gamma03Form(LocElem e) : elem_(std::move(e)) {  // NOLINT
        if (!elem_.is_sigma_invariant())
            throw DomainError("not a Gamma_0(3) form (not fixed by a1 -> -a1, a3 -> -a3): " + elem_.to_string());
    }
    Gamma03Form(const Rational& c) : elem_(c) {}  // NOLINT
    Gamma03Form(long c) : elem_(c) {}             // NOLINT

    const LocElem& elem() const { return elem_; }
    bool is_zero() const { return elem_.is_zero(); }
    std::optional<long> weight() const { return elem_.weight(); }

    friend Gamma03Form operator+(const Gamma03Form& a, const Gamma03Form& b) { return Gamma03Form(a.elem_ + b.elem_); }
    friend Gamma03Form operator-(const Gamma03Form& a, const Gamma03Form& b) { return Gamma03Form(a.elem_ - b.elem_); }
    friend Gamma03Form operator-(const Gamma03Form& a) { return Gamma03Form(-a.elem_); }
    friend Gamma03Form operator*(const Gamma03Form& a, const Gamma03Form& b) { return Gamma03Form(a.elem_ * b.elem_); }
    friend Gamma03Form operator*(const Rational& s, const Gamma03Form& a) { return Gamma03Form(s * a.elem_); }
    friend Gamma03Form operator*(long s, const Gamma03Form& a) { return Gamma03Form(s * a.elem_); }
    friend bool operator==(const Gamma03Form&, const Gamma03Form&) = default;

    std::string to_string() const { return elem_.to_string(); }

private:
    LocElem elem_;
};

inline std::string to_string(const Gamma03Form& g) { return g.to_string(); }

namespace detail {

struct GeneratorImages {
    LocElem c4, c6, delta, delta_inv;
};

inline GeneratorImages images_from_curve(const WCurve<MultiPoly>& c) {
    auto inv = invariants(c);
    LocElem d(inv.disc);
    auto d_inv = d.inverse();
    if (!d_inv) throw DomainError("discriminant is not a unit in the localization");
    return {LocElem(inv.c4), LocElem(inv.c6), d, *d_inv};
}

// f*(c_i) = C_i(a1, 0, a3, 0, 0)
inline const GeneratorImages& f_images() {
    static const GeneratorImages g = images_from_curve(normal_form(a1(), a3()));
    return g;
}

// q*(c_i) = C_i(a1, 0, 3a3, -6a1a3, -(9a3^2 + a1^3 a3))
inline const GeneratorImages& q_images() {
    static const GeneratorImages g = images_from_curve(isogenous_curve());
    return g;
}

inline LocElem apply_images(const LevelOneForm& m, const GeneratorImages& g) {
    LocElem out;
    std::map<int, LocElem> c4_pow, d_pow;
    auto c4p = [&](int a) -> const LocElem& {
        auto it = c4_pow.find(a);
        if (it == c4_pow.end()) it = c4_pow.emplace(a, g.c4.pow(a)).first;
        return it->second;
    };
    auto dp = [&](int d) -> const LocElem& {
        auto it = d_pow.find(d);
        if (it == d_pow.end()) it = d_pow.emplace(d, d >= 0 ? g.delta.pow(d) : g.delta_inv.pow(-d)).first;
        return it->second;
    };
    for (const auto& [mono, c] : m.terms()) {
        LocElem t = c * c4p(mono.a) * dp(mono.d);
        if (mono.eps) t = t * g.c6;
        out += t;
    }
    return out;
}

}  // namespace detail

inline Gamma03Form fstar(const LevelOneForm& m) { return Gamma03Form(detail::apply_images(m, detail::f_images())); }
inline Gamma03Form qstar(const LevelOneForm& m) { return Gamma03Form(detail::apply_images(m, detail::q_images())); }

/// Quotient by the full 3-torsion: a weight-w monomial scales by 3^w.
inline LevelOneForm hstar(const LevelOneForm& m) {
    LevelOneForm out;
    for (const auto& [mono, c] : m.terms()) out += LevelOneForm::monomial(mono, c * pow(Rational(3), mono.weight()));
    return out;
}

namespace detail {

inline const LocElem& tstar_A() {  // t*(a1^2)
    static const LocElem v(-3 * a1().pow(2));
    return v;
}
inline const LocElem& tstar_B() {  // t*(a1 a3)
    static const LocElem v(make_rational(1, 3) * a1().pow(4) - 9 * a1() * a3());
    return v;
}
inline const LocElem& tstar_C() {  // t*(a3^2)
    static const LocElem v(make_rational(-1, 27) * a1().pow(6) + 2 * a1().pow(3) * a3() - 27 * a3().pow(2));
    return v;
}

// t*(Delta)^-1, with Delta = (a1 a3)^3 - 27 (a3^2)^2 pushed through the
// generator images and inverted in the localization.
inline const LocElem& tstar_delta_inverse() {
    static const LocElem v = [] {
        LocElem image = tstar_B().pow(3) - 27 * tstar_C().pow(2);
        auto inv = image.inverse();
        if (!inv) throw DomainError("t*(Delta) is not a unit");
        return *inv;
    }();
    return v;
}

// t* on an even polynomial, monomial by monomial:
// a1^i a3^j = (a1^2)^alpha (a1 a3)^beta (a3^2)^gamma.
inline LocElem tstar_even_poly(const MultiPoly& p) {
    std::map<int, LocElem> Ap, Bp, Cp;
    auto power = [](std::map<int, LocElem>& cache, const LocElem& base, int e) -> const LocElem& {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, base.pow(e)).first;
        return it->second;
    };
    const int i1 = static_cast<int>(Var::a1), i3 = static_cast<int>(Var::a3);
    LocElem out;
    for (const auto& [m, c] : p.terms()) {
        for (int k = 0; k < kNumVars; ++k)
            if (k != i1 && k != i3 && m[k] != 0) throw DomainError("t*: unexpected variable");
        int i = m[i1], j = m[i3];
        if ((i + j) % 2 != 0) throw DomainError("t*: odd monomial");
        int beta = std::min(i, j);
        int alpha = (i - beta) / 2, gamma = (j - beta) / 2;
        out += c * power(Ap, tstar_A(), alpha) * power(Bp, tstar_B(), beta) * power(Cp, tstar_C(), gamma);
    }
    return out;
}

}  // namespace detail

/// The residual-subgroup swap on MF(Gamma_0(3)), determined by its values
/// on a1^2, a1 a3, a3^2 and extended to Delta^-1.
inline Gamma03Form tstar(const Gamma03Form& g) {
    auto [num, m] = g.elem().over_delta_power();
    LocElem image = detail::tstar_even_poly(num) * detail::tstar_delta_inverse().pow(m);
    return Gamma03Form(image);
}

struct CochainDegreeOne {
    Gamma03Form gamma0;
    LevelOneForm level1;
    bool operator==(const CochainDegreeOne&) const = default;
};

/// D0(m) = (q* m - f* m, h* m - m)
inline CochainDegreeOne cochain_D0(const LevelOneForm& m) { return {qstar(m) - fstar(m), hstar(m) - m}; }

/// D1(u, v) = t* u + u - f* v
inline Gamma03Form cochain_D1(const Gamma03Form& u, const LevelOneForm& v) { return tstar(u) + u - fstar(v); }

inline Gamma03Form delta(const LevelOneForm& m) { return qstar(m) - fstar(m); }

/// Basis monomials c4^a c6^eps Delta^d of weight w (any sign of d).
inline std::vector<FormMonomial> level_one_basis(long w, int min_d = -8) {
    std::vector<FormMonomial> out;
    for (int d = min_d; 12L * d <= w; ++d)
        for (int eps = 0; eps <= 1; ++eps) {
            long rest = w - 12L * d - 6L * eps;
            if (rest >= 0 && rest % 4 == 0) out.push_back({static_cast<int>(rest / 4), eps, d});
        }
    return out;
}

struct ValuationReport {
    std::string input;
    long valuation = 0;
    std::string leading_term;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string term_string(const Monomial& m, const Rational& c) {
    return to_string(c) + (m == Monomial{} ? "" : "*" + mono_to_string(m));
}

}  // namespace detail

/// nu_2(content(delta(c4^k))) = 4 + nu_2(k), with odd reduced coefficient on
/// a1^{4k-3} a3.
inline ValuationReport val2_delta_c4pow(long k) {
    if (k < 1) throw DomainError("val2_delta_c4pow: k must be >= 1");
    const MultiPoly& q = detail::q_images().c4.num();
    const MultiPoly& f = detail::f_images().c4.num();
    MultiPoly d = q.pow(k) - f.pow(k);
    ValuationReport r;
    r.input = "delta(c4^" + std::to_string(k) + ")";
    Valuation v = d.content_valuation(2);
    r.valuation = v.value();
    long expected = 4 + val_p(BigInt(k), 2);
    Monomial target = mono_a1a3(static_cast<int>(4 * k - 3), 1);
    Rational scaled = d.coefficient(target) / pow(Rational(2), expected);
    r.leading_term = detail::term_string(target, d.coefficient(target));
    bool odd = is_integer(scaled) && mpz_odd_p(scaled.get_num_mpz_t());
    r.pass = v == expected && odd;
    r.detail = "expected valuation " + std::to_string(expected) + ", coefficient/2^" + std::to_string(expected) + " = " +
               to_string(scaled);
    return r;
}

/// nu_2(content(delta(c4^k c6))) = 3, with odd reduced coefficient on a1^{4k+3} a3.
inline ValuationReport val_delta_c4c6(long k) {
    if (k < 0) throw DomainError("val_delta_c4c6: k must be >= 0");
    const auto& qi = detail::q_images();
    const auto& fi = detail::f_images();
    MultiPoly d = qi.c4.num().pow(k) * qi.c6.num() - fi.c4.num().pow(k) * fi.c6.num();
    ValuationReport r;
    r.input = "delta(c4^" + std::to_string(k) + "*c6)";
    Valuation v = d.content_valuation(2);
    r.valuation = v.value();
    Monomial target = mono_a1a3(static_cast<int>(4 * k + 3), 1);
    Rational scaled = d.coefficient(target) / 8;
    r.leading_term = detail::term_string(target, d.coefficient(target));
    bool odd = is_integer(scaled) && mpz_odd_p(scaled.get_num_mpz_t());
    r.pass = v == 3 && odd;
    r.detail = "coefficient/8 = " + to_string(scaled);
    return r;
}

/// Lowest-a1 term of delta(Delta^N) mod 2, compared with
/// a1^{3*2^{r+1}} a3^{2^{r+1}(4k+1)} for N = 2^r (2k+1).
inline ValuationReport delta_mod2_Delta_pow(long N) {
    if (N < 1) throw DomainError("delta_mod2_Delta_pow: N must be >= 1");
    const MultiPoly& q = detail::q_images().delta.num();
    const MultiPoly& f = detail::f_images().delta.num();
    MultiPoly d = mod2(q.pow(N) - f.pow(N));
    long r_exp = val_p(BigInt(N), 2);
    long k = (N >> r_exp) / 2;
    Term t = min_a1_term(d);
    Monomial expected = mono_a1a3(static_cast<int>(3L << (r_exp + 1)), static_cast<int>((2L << r_exp) * (4 * k + 1)));
    ValuationReport rep;
    rep.input = "delta(Delta^" + std::to_string(N) + ") mod 2";
    rep.valuation = t.mono[static_cast<int>(Var::a1)];
    rep.leading_term = mono_to_string(t.mono);
    rep.pass = t.mono == expected;
    rep.detail = "expected " + mono_to_string(expected);
    return rep;
}

/// (u + 2^d v)^k - u^k = 2^{d + nu_2(k)} g with g = (odd) u^{k-1} v + (terms of
/// v-degree >= 2).
inline ValuationReport lemma_binomial_check(long d, long k) {
    if (d < 2 || k < 1) throw DomainError("lemma_binomial_check: need d >= 2 and k >= 1");
    MultiPoly u = MultiPoly::variable(Var::u), v = MultiPoly::variable(Var::v);
    MultiPoly diff = (u + pow(Rational(2), d) * v).pow(k) - u.pow(k);
    long e = d + val_p(BigInt(k), 2);
    MultiPoly g = pow(Rational(2), -e) * diff;
    ValuationReport r;
    r.input = "(u+2^" + std::to_string(d) + "v)^" + std::to_string(k);
    r.valuation = diff.content_valuation(2).value();
    Monomial lead{};
    lead[static_cast<int>(Var::u)] = static_cast<int>(k - 1);
    lead[static_cast<int>(Var::v)] = 1;
    Rational lc = g.coefficient(lead);
    r.leading_term = detail::term_string(lead, lc);
    bool higher_only = true;
    for (const auto& [m, c] : g.terms())
        if (m != lead && m[static_cast<int>(Var::v)] < 2) higher_only = false;
    bool odd = is_integer(lc) && mpz_odd_p(lc.get_num_mpz_t());
    r.pass = g.has_integer_coefficients() && odd && higher_only && r.valuation == e;
    r.detail = "divisibility exponent " + std::to_string(e) + ", g = " + g.to_string();
    return r;
}

}  // namespace tmf3
