#pragma once

// Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over an
// exact coefficient ring: invariants, coordinate changes, the
// chord-and-tangent group law, the flex test and the Gamma_1(3) normal form.
//
// Coordinate changes follow the convention
//     x_old = lambda^-2 x_new + r,
//     y_old = lambda^-3 y_new + lambda^-1 s x_new + t,
// so transform() scales a_i by lambda^i and c4, c6, Delta by lambda^4,
// lambda^6, lambda^12.  Internally this is the classical (u, r, s', t)
// substitution with u = 1/lambda and s' = lambda s.

#include "tmf3/poly.hpp"
#include "tmf3/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tmf3 {

template <typename K>
struct WCurve {
    K a1{}, a2{}, a3{}, a4{}, a6{};

    std::array<K, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
    bool operator==(const WCurve&) const = default;
};

/// y^2 + a1 xy + a3 y = x^3
template <typename K>
WCurve<K> normal_form(const K& a1, const K& a3) {
    return {a1, K(0), a3, K(0), K(0)};
}

template <typename K>
struct Invariants {
    K b2, b4, b6, b8, c4, c6, disc;
};

template <typename K>
Invariants<K> invariants(const WCurve<K>& c) {
    Invariants<K> v;
    v.b2 = c.a1 * c.a1 + K(4) * c.a2;
    v.b4 = K(2) * c.a4 + c.a1 * c.a3;
    v.b6 = c.a3 * c.a3 + K(4) * c.a6;
    v.b8 = c.a1 * c.a1 * c.a6 + K(4) * c.a2 * c.a6 - c.a1 * c.a3 * c.a4 + c.a2 * c.a3 * c.a3 - c.a4 * c.a4;
    v.c4 = v.b2 * v.b2 - K(24) * v.b4;
    v.c6 = -(v.b2 * v.b2 * v.b2) + K(36) * v.b2 * v.b4 - K(216) * v.b6;
    v.disc = -(v.b2 * v.b2 * v.b8) - K(8) * v.b4 * v.b4 * v.b4 - K(27) * v.b6 * v.b6 + K(9) * v.b2 * v.b4 * v.b6;
    return v;
}

inline Rational j_invariant(const WCurve<Rational>& c) {
    auto inv = invariants(c);
    if (inv.disc == 0) throw DomainError("j-invariant of a singular curve");
    return inv.c4 * inv.c4 * inv.c4 / inv.disc;
}

template <typename K>
struct WTransform {
    K lambda{1}, r{}, s{}, t{};

    static WTransform identity() { return {K(1), K(0), K(0), K(0)}; }
    bool operator==(const WTransform&) const = default;
};

namespace detail {

// (u, r, s', t) with x = u^2 x' + r, y = u^3 y' + s' u^2 x' + t.
template <typename K>
struct ClassicalChange {
    K u, r, s, t;
};

template <typename K>
ClassicalChange<K> to_classical(const WTransform<K>& T) {
    if (T.lambda == K(0)) throw DomainError("transform with lambda = 0");
    return {K(1) / T.lambda, T.r, T.lambda * T.s, T.t};
}

template <typename K>
WTransform<K> from_classical(const ClassicalChange<K>& c) {
    return {K(1) / c.u, c.r, c.s * c.u, c.t};
}

}  // namespace detail

/// The curve in the new coordinates of T.
template <typename K>
WCurve<K> transform(const WCurve<K>& c, const WTransform<K>& T) {
    auto [u, r, s, t] = detail::to_classical(T);
    const K u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    WCurve<K> out;
    out.a1 = (c.a1 + K(2) * s) / u;
    out.a2 = (c.a2 - s * c.a1 + K(3) * r - s * s) / u2;
    out.a3 = (c.a3 + r * c.a1 + K(2) * t) / u3;
    out.a4 = (c.a4 - s * c.a3 + K(2) * r * c.a2 - (t + r * s) * c.a1 + K(3) * r * r - K(2) * s * t) / u4;
    out.a6 = (c.a6 + r * c.a4 + r * r * c.a2 + r * r * r - t * c.a3 - t * t - r * t * c.a1) / u6;
    return out;
}

/// transform(transform(C, A), B) == transform(C, compose(A, B)).
template <typename K>
WTransform<K> compose(const WTransform<K>& A, const WTransform<K>& B) {
    auto a = detail::to_classical(A);
    auto b = detail::to_classical(B);
    const K u1sq = a.u * a.u;
    return detail::from_classical<K>({a.u * b.u, a.r + u1sq * b.r, a.s + a.u * b.s,
                                      a.t + u1sq * a.u * b.t + a.s * u1sq * b.r});
}

template <typename K>
WTransform<K> inverse(const WTransform<K>& T) {
    auto c = detail::to_classical(T);
    const K u2 = c.u * c.u;
    return detail::from_classical<K>({K(1) / c.u, -c.r / u2, -c.s / c.u, (c.s * c.r - c.t) / (u2 * c.u)});
}

template <typename K>
struct WPoint {
    bool at_infinity = true;
    K x{}, y{};

    static WPoint infinity() { return {}; }
    static WPoint affine(K x, K y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const WPoint& o) const {
        if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
        return x == o.x && y == o.y;
    }
};

template <typename K>
std::string to_string(const WPoint<K>& p) {
    if (p.at_infinity) return "O";
    return "[" + to_string(p.x) + "," + to_string(p.y) + "]";
}

template <typename K>
bool on_curve(const WCurve<K>& c, const WPoint<K>& p) {
    if (p.at_infinity) return true;
    const K& x = p.x;
    const K& y = p.y;
    return y * y + c.a1 * x * y + c.a3 * y == x * x * x + c.a2 * x * x + c.a4 * x + c.a6;
}

/// Carries a point of C to the new coordinates of transform(C, T).
template <typename K>
WPoint<K> transform_point(const WTransform<K>& T, const WPoint<K>& p) {
    if (p.at_infinity) return p;
    auto [u, r, s, t] = detail::to_classical(T);
    K xn = (p.x - r) / (u * u);
    K yn = (p.y - s * u * u * xn - t) / (u * u * u);
    return WPoint<K>::affine(xn, yn);
}

template <typename K>
void require_on_curve(const WCurve<K>& c, const WPoint<K>& p) {
    if (!on_curve(c, p)) throw DomainError("point " + to_string(p) + " is not on the curve");
}

template <typename K>
void require_smooth(const WCurve<K>& c) {
    if (invariants(c).disc == K(0)) throw DomainError("curve is singular (Delta = 0)");
}

template <typename K>
WPoint<K> neg(const WCurve<K>& c, const WPoint<K>& p) {
    require_on_curve(c, p);
    if (p.at_infinity) return p;
    return WPoint<K>::affine(p.x, -p.y - c.a1 * p.x - c.a3);
}

template <typename K>
WPoint<K> add(const WCurve<K>& c, const WPoint<K>& p, const WPoint<K>& q) {
    require_on_curve(c, p);
    require_on_curve(c, q);
    if (p.at_infinity) return q;
    if (q.at_infinity) return p;
    K slope, intercept;
    if (p.x == q.x) {
        if (p.y + q.y + c.a1 * q.x + c.a3 == K(0)) return WPoint<K>::infinity();
        const K den = K(2) * p.y + c.a1 * p.x + c.a3;
        slope = (K(3) * p.x * p.x + K(2) * c.a2 * p.x + c.a4 - c.a1 * p.y) / den;
        intercept = (-(p.x * p.x * p.x) + c.a4 * p.x + K(2) * c.a6 - c.a3 * p.y) / den;
    } else {
        slope = (q.y - p.y) / (q.x - p.x);
        intercept = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    }
    K x3 = slope * slope + c.a1 * slope - c.a2 - p.x - q.x;
    K y3 = -(slope + c.a1) * x3 - intercept - c.a3;
    return WPoint<K>::affine(x3, y3);
}

template <typename K>
WPoint<K> smul(const WCurve<K>& c, long n, const WPoint<K>& p) {
    require_on_curve(c, p);
    if (n < 0) return smul(c, -n, neg(c, p));
    WPoint<K> acc = WPoint<K>::infinity(), base = p;
    while (n > 0) {
        if (n & 1L) acc = add(c, acc, base);
        n >>= 1;
        if (n > 0) base = add(c, base, base);
    }
    return acc;
}

struct FlexResult {
    bool flex = false;
    int multiplicity = 0;  // intersection multiplicity of the tangent at P
    std::string reason;
};

namespace detail {

// Dense univariate polynomials, index = degree.
template <typename K>
std::vector<K> upoly_mul(const std::vector<K>& a, const std::vector<K>& b) {
    std::vector<K> r(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <typename K>
int root_multiplicity(std::vector<K> p, const K& root) {
    int m = 0;
    while (p.size() > 1) {
        // synthetic division by (X - root)
        std::vector<K> q(p.size() - 1);
        K carry(0);
        for (std::size_t i = p.size(); i-- > 1;) {
            carry = p[i] + carry * root;
            q[i - 1] = carry;
        }
        K rem = p[0] + carry * root;
        if (rem != K(0)) break;
        ++m;
        p = std::move(q);
    }
    if (std::all_of(p.begin(), p.end(), [](const K& v) { return v == K(0); })) return 3;
    return m;
}

}  // namespace detail

/// Tangent-line intersection multiplicity test at an affine point of a
/// smooth curve.  Vertical tangents (2-torsion) are reported as not flex.
template <typename K>
FlexResult is_flex(const WCurve<K>& c, const WPoint<K>& p) {
    if (p.at_infinity) throw DomainError("is_flex: point at infinity");
    require_on_curve(c, p);
    require_smooth(c);
    const K fy = K(2) * p.y + c.a1 * p.x + c.a3;
    if (fy == K(0)) return {false, 0, "vertical tangent (2-torsion point)"};
    const K m = (K(3) * p.x * p.x + K(2) * c.a2 * p.x + c.a4 - c.a1 * p.y) / fy;
    // y(X) = (y0 - m x0) + m X along the tangent
    const std::vector<K> line = {p.y - m * p.x, m};
    std::vector<K> g = {c.a6, c.a4, c.a2, K(1)};
    auto ysq = detail::upoly_mul(line, line);
    auto xy = detail::upoly_mul(std::vector<K>{K(0), K(1)}, line);
    for (std::size_t i = 0; i < ysq.size(); ++i) g[i] -= ysq[i];
    for (std::size_t i = 0; i < xy.size(); ++i) g[i] -= c.a1 * xy[i];
    for (std::size_t i = 0; i < line.size(); ++i) g[i] -= c.a3 * line[i];
    int mult = detail::root_multiplicity(g, p.x);
    return {mult >= 3, mult, mult >= 3 ? "tangent meets the curve triply" : "tangent meets the curve with multiplicity " + std::to_string(mult)};
}

template <typename K>
struct Gamma1Normal {
    K A1, A3;
    WTransform<K> T;  // transform(C, T) == normal_form(A1, A3), T carries P to (0,0)
};

/// Moves an order-3 point to (0,0) with tangent the x-axis, lambda = 1.
template <typename K>
Gamma1Normal<K> gamma1_normalize(const WCurve<K>& c, const WPoint<K>& p) {
    require_smooth(c);
    require_on_curve(c, p);
    if (p.at_infinity) throw DomainError("gamma1_normalize: P is the point at infinity");
    if (!smul(c, 3, p).at_infinity) {
        std::string detail_msg = smul(c, 2, p).at_infinity ? "P has order 2" : "P does not have order 3";
        throw DomainError("gamma1_normalize: " + detail_msg);
    }
    const WTransform<K> translate{K(1), p.x, K(0), p.y};
    const WCurve<K> c1 = transform(c, translate);
    // tangent at the origin: a3 y = a4 x
    if (c1.a3 == K(0)) throw DomainError("gamma1_normalize: vertical tangent, P is 2-torsion");
    const WTransform<K> shear{K(1), K(0), c1.a4 / c1.a3, K(0)};
    const WTransform<K> total = compose(translate, shear);
    const WCurve<K> c2 = transform(c, total);
    if (c2.a2 != K(0) || c2.a4 != K(0) || c2.a6 != K(0))
        throw DomainError("gamma1_normalize: normal form not reached; P is not a flex");
    return {c2.a1, c2.a3, total};
}

template <typename K>
std::string to_string(const WCurve<K>& c) {
    using tmf3::to_string;
    return "[" + to_string(c.a1) + "," + to_string(c.a2) + "," + to_string(c.a3) + "," + to_string(c.a4) + "," +
           to_string(c.a6) + "]";
}

inline std::string to_string(const MultiPoly& p) { return p.to_string(); }

}  // namespace tmf3
