#pragma once

// The function field of the universal curve with a point of order 3,
//     C : y^2 + a1 xy + a3 y = x^3,
// translation by P0 = (0,0), and the degree-3 isogeny C -> C' = C/<P0>.

#include "tmf3/poly.hpp"
#include "tmf3/weierstrass.hpp"

#include <map>
#include <string>
#include <vector>

namespace tmf3 {

/// (u + v y) / den with u, v, den in Q[a1, a3, x] and den != 0.
///
/// Kept with a single common denominator free of y; equality is decided by
/// cross-multiplication, so no multivariate gcd is needed.  Common monomial
/// factors and rational content are cancelled eagerly.
class FFElem {
public:
    FFElem() : den_(1) {}
    FFElem(MultiPoly u, MultiPoly v = {}, MultiPoly den = MultiPoly(1))  // NOLINT
        : u_(std::move(u)), v_(std::move(v)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("function-field element with zero denominator");
        normalize();
    }
    FFElem(long c) : FFElem(MultiPoly(c)) {}  // NOLINT

    static FFElem x() { return FFElem(MultiPoly::variable(Var::x)); }
    static FFElem y() { return FFElem(MultiPoly(), MultiPoly(1)); }

    const MultiPoly& u() const { return u_; }
    const MultiPoly& v() const { return v_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        if (a.den_ == b.den_) return FFElem(a.u_ + b.u_, a.v_ + b.v_, a.den_);
        return FFElem(a.u_ * b.den_ + b.u_ * a.den_, a.v_ * b.den_ + b.v_ * a.den_, a.den_ * b.den_);
    }
    friend FFElem operator-(const FFElem& a) { return FFElem(-a.u_, -a.v_, a.den_); }
    friend FFElem operator-(const FFElem& a, const FFElem& b) { return a + (-b); }
    friend FFElem operator*(const FFElem& a, const FFElem& b) {
        // y^2 = x^3 - (a1 x + a3) y
        MultiPoly vv = a.v_ * b.v_;
        MultiPoly u = a.u_ * b.u_ + vv * x_cubed();
        MultiPoly v = a.u_ * b.v_ + b.u_ * a.v_ - vv * linear_term();
        return FFElem(std::move(u), std::move(v), a.den_ * b.den_);
    }
    friend FFElem operator/(const FFElem& a, const FFElem& b) { return a * b.inverse(); }
    FFElem& operator+=(const FFElem& o) { return *this = *this + o; }
    FFElem& operator*=(const FFElem& o) { return *this = *this * o; }

    friend bool operator==(const FFElem& a, const FFElem& b) {
        return a.u_ * b.den_ == b.u_ * a.den_ && a.v_ * b.den_ == b.v_ * a.den_;
    }

    /// y -> ybar = -y - a1 x - a3.
    FFElem conj() const { return FFElem(u_ - v_ * linear_term(), -v_, den_); }

    /// (u + v y)(u + v ybar) / den^2 as an element of the coefficient field,
    /// returned as (numerator, denominator).
    std::pair<MultiPoly, MultiPoly> norm() const {
        return {u_ * u_ - u_ * v_ * linear_term() - v_ * v_ * x_cubed(), den_ * den_};
    }

    FFElem inverse() const {
        if (is_zero()) throw DomainError("inverse of zero in the function field");
        auto [n, d] = norm();
        FFElem c = conj();
        // 1/(N/D) with N = (u+vy)/den: den * conj(u+vy) / norm(u+vy)
        return FFElem(c.u_ * den_, c.v_ * den_, n);
    }

    FFElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FFElem r(1), b = *this;
        while (e > 0) {
            if (e & 1L) r *= b;
            e >>= 1;
            if (e > 0) b *= b;
        }
        return r;
    }

    /// Specialization at a1, a3, x, y in Q.
    Rational evaluate(const Rational& a1v, const Rational& a3v, const Rational& xv, const Rational& yv) const {
        std::array<Rational, kNumVars> vals{};
        vals[static_cast<int>(Var::a1)] = a1v;
        vals[static_cast<int>(Var::a3)] = a3v;
        vals[static_cast<int>(Var::x)] = xv;
        Rational d = den_.evaluate(vals);
        if (d == 0) throw DomainError("function-field element has a pole at the evaluation point");
        return (u_.evaluate(vals) + v_.evaluate(vals) * yv) / d;
    }

    std::string to_string() const {
        std::string num = "(" + u_.to_string() + ") + (" + v_.to_string() + ")*y";
        if (den_ == MultiPoly(1)) return num;
        return "(" + num + ")/(" + den_.to_string() + ")";
    }

    static const MultiPoly& x_cubed() {
        static const MultiPoly p = MultiPoly::variable(Var::x, 3);
        return p;
    }
    /// a1 x + a3
    static const MultiPoly& linear_term() {
        static const MultiPoly p = a1() * MultiPoly::variable(Var::x) + a3();
        return p;
    }

private:
    void normalize() {
        if (is_zero()) {
            u_ = v_ = MultiPoly();
            den_ = MultiPoly(1);
            return;
        }
        // cancel the common monomial factor
        Monomial common;
        common.fill(std::numeric_limits<int>::max());
        for (const MultiPoly* p : {&u_, &v_, &den_})
            for (const auto& [m, c] : p->terms())
                for (int i = 0; i < kNumVars; ++i) common[i] = std::min(common[i], m[i]);
        if (common != Monomial{}) {
            MultiPoly g = MultiPoly::monomial(common, 1);
            u_ = *u_.divide_exact(g);
            v_ = *v_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
        // make the denominator monic in the lex order
        Rational lc = den_.leading_term().second;
        if (lc != 1) {
            Rational s = Rational(1) / lc;
            u_ = s * u_;
            v_ = s * v_;
            den_ = s * den_;
        }
    }

    MultiPoly u_, v_, den_;
};

inline std::string to_string(const FFElem& e) { return e.to_string(); }

namespace detail {

// Horner evaluation of p(x) in the function field, coefficients in Q[a1,a3].
inline FFElem eval_in_x(const MultiPoly& p, const FFElem& xval) {
    const int ix = static_cast<int>(Var::x);
    std::map<int, MultiPoly> by_degree;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        int d = rest[ix];
        rest[ix] = 0;
        by_degree[d] += MultiPoly::monomial(rest, c);
    }
    if (by_degree.empty()) return FFElem(0);
    FFElem acc(0);
    for (int d = by_degree.rbegin()->first; d >= 0; --d) {
        acc = acc * xval;
        if (auto it = by_degree.find(d); it != by_degree.end()) acc += FFElem(it->second);
    }
    return acc;
}

}  // namespace detail

/// sigma(P) = P + P0 acts by (x, y) -> (-a3 y / x^2, -a3^2 y / x^3).
inline FFElem sigma_x() { return FFElem(MultiPoly(), -a3(), MultiPoly::variable(Var::x, 2)); }
inline FFElem sigma_y() { return FFElem(MultiPoly(), -(a3() * a3()), MultiPoly::variable(Var::x, 3)); }

/// Pullback along translation by P0: the ring map fixing a1, a3 with
/// x -> sigma_x, y -> sigma_y.
inline FFElem sigma_pullback(const FFElem& e) {
    static const FFElem sx = sigma_x(), sy = sigma_y();
    FFElem num = detail::eval_in_x(e.u(), sx) + detail::eval_in_x(e.v(), sx) * sy;
    return num / detail::eval_in_x(e.den(), sx);
}

/// d/dx along the curve, using dy/dx = (3x^2 - a1 y) / (2y + a1 x + a3).
inline FFElem ff_derivative(const FFElem& e) {
    static const FFElem dy = FFElem(3 * MultiPoly::variable(Var::x, 2), -a1()) /
                             FFElem(FFElem::linear_term(), MultiPoly(2));
    FFElem num(e.u(), e.v());
    FFElem dnum = FFElem(e.u().derivative(Var::x), e.v().derivative(Var::x)) + FFElem(e.v()) * dy;
    FFElem den(e.den());
    FFElem dden(e.den().derivative(Var::x));
    return (dnum * den - num * dden) / (den * den);
}

/// Weierstrass polynomial F(X, Y) = Y^2 + a1 XY + a3 Y - X^3 - a2 X^2 - a4 X - a6.
inline FFElem weierstrass_form(const WCurve<MultiPoly>& c, const FFElem& X, const FFElem& Y) {
    return Y * Y + FFElem(c.a1) * X * Y + FFElem(c.a3) * Y - X * X * X - FFElem(c.a2) * X * X - FFElem(c.a4) * X -
           FFElem(c.a6);
}

/// C' : Y^2 + a1 XY + 3 a3 Y = X^3 - 6 a1 a3 X - (9 a3^2 + a1^3 a3).
inline WCurve<MultiPoly> isogenous_curve() {
    return {a1(), MultiPoly(), 3 * a3(), -6 * a1() * a3(), -(9 * a3() * a3() + a1().pow(3) * a3())};
}

struct VeluResult {
    WCurve<MultiPoly> cprime;
    FFElem X, Y;
};

/// The quotient by <P0>: X and Y as trace sums over the orbit of sigma.
inline VeluResult velu3() {
    FFElem x = FFElem::x(), y = FFElem::y();
    FFElem sx = sigma_pullback(x), ssx = sigma_pullback(sx);
    FFElem sy = sigma_pullback(y), ssy = sigma_pullback(sy);
    return {isogenous_curve(), x + sx + ssx, y + sy + ssy};
}

/// x - a3 y/x^2 + a3 x/y
inline FFElem velu_X_closed_form() {
    FFElem x = FFElem::x(), y = FFElem::y(), A3(a3());
    return x - A3 * y / (x * x) + A3 * x / y;
}

/// y - a3^2 y/x^3 - a3 x^3/y^2
inline FFElem velu_Y_closed_form() {
    FFElem x = FFElem::x(), y = FFElem::y(), A3(a3());
    return y - A3 * A3 * y / (x * x * x) - A3 * x * x * x / (y * y);
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The two statements making (X, Y) an isogeny C -> C' preserving the
/// invariant differential.
inline std::vector<Check> verify_isogeny(const WCurve<MultiPoly>& cprime, const FFElem& X, const FFElem& Y) {
    std::vector<Check> out;
    FFElem eq = weierstrass_form(cprime, X, Y);
    out.push_back({"(X,Y) satisfies the equation of C'", eq.is_zero(), eq.is_zero() ? "0" : eq.to_string()});
    FFElem y = FFElem::y();
    FFElem lhs = ff_derivative(X) * (FFElem(2) * y + FFElem(FFElem::linear_term()));
    FFElem rhs = FFElem(2) * Y + FFElem(cprime.a1) * X + FFElem(cprime.a3);
    out.push_back({"phi^* eta' = eta", lhs == rhs, lhs == rhs ? "dX/dx (2y+a1x+a3) = 2Y+a1X+3a3" : "mismatch"});
    return out;
}

/// A rational point on the normal-form curve with prescribed a1, x, y:
/// a3 is solved from the curve equation.
struct SpecializedPoint {
    Rational a1, a3;
    WPoint<Rational> point;
};

inline std::optional<SpecializedPoint> specialize(const Rational& a1v, const Rational& xv, const Rational& yv) {
    if (yv == 0) return std::nullopt;
    Rational a3v = (xv * xv * xv - yv * yv - a1v * xv * yv) / yv;
    Rational disc = a3v * a3v * a3v * (a1v * a1v * a1v - 27 * a3v);
    if (disc == 0) return std::nullopt;
    return SpecializedPoint{a1v, a3v, WPoint<Rational>::affine(xv, yv)};
}

/// Dual numbers a + b eps, eps^2 = 0: exact first derivatives through the
/// rational group law.
struct Dual {
    Rational a, b;
    Dual(long v = 0) : a(v), b(0) {}  // NOLINT
    Dual(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}  // NOLINT
    friend Dual operator+(const Dual& p, const Dual& q) { return {p.a + q.a, p.b + q.b}; }
    friend Dual operator-(const Dual& p, const Dual& q) { return {p.a - q.a, p.b - q.b}; }
    friend Dual operator-(const Dual& p) { return {-p.a, -p.b}; }
    friend Dual operator*(const Dual& p, const Dual& q) { return {p.a * q.a, p.a * q.b + p.b * q.a}; }
    friend Dual operator/(const Dual& p, const Dual& q) {
        if (q.a == 0) throw DomainError("dual division by an infinitesimal");
        return {p.a / q.a, (p.b * q.a - p.a * q.b) / (q.a * q.a)};
    }
    Dual& operator+=(const Dual& q) { return *this = *this + q; }
    Dual& operator-=(const Dual& q) { return *this = *this - q; }
    // equality of the standard parts is what the group law branches on
    friend bool operator==(const Dual& p, const Dual& q) { return p.a == q.a; }
};

inline std::string to_string(const Dual& d) { return to_string(d.a) + "+" + to_string(d.b) + "eps"; }

/// Lifts P on the normal-form curve to P + eps * (tangent with dx = 1).
inline WPoint<Dual> tangent_lift(const Rational& a1v, const Rational& a3v, const WPoint<Rational>& p) {
    Rational fy = 2 * p.y + a1v * p.x + a3v;
    if (fy == 0) throw DomainError("tangent_lift: vertical tangent");
    Rational dy = (3 * p.x * p.x - a1v * p.y) / fy;
    return WPoint<Dual>::affine(Dual(p.x, 1), Dual(p.y, dy));
}

/// eta at a dual point, as the ratio dx / (2y + a1 x + a3) of infinitesimal parts.
inline Rational eta_ratio(const WCurve<Dual>& c, const WPoint<Dual>& p) {
    Dual den = Dual(2) * p.y + c.a1 * p.x + c.a3;
    return p.x.b / den.a;
}

}  // namespace tmf3
