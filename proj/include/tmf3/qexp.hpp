#pragma once

// Truncated q-expansions, the Eisenstein series G_{2n}, their expression in
// the c4, c6, Delta basis, and the rational image-of-J classes e(alpha_{2n}).

#include "tmf3/levelmaps.hpp"
#include "tmf3/rational.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace tmf3 {

/// sum_{m=0}^{N} c_m q^m, known through q^N.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(long precision) : c_(static_cast<std::size_t>(check(precision)) + 1) {}
    QSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {  // NOLINT
        if (c_.empty()) throw DomainError("QSeries needs at least one coefficient");
    }

    static QSeries constant(const Rational& v, long precision) {
        QSeries s(precision);
        s.c_[0] = v;
        return s;
    }
    static QSeries q(long precision) {
        QSeries s(precision);
        if (precision >= 1) s.c_[1] = 1;
        return s;
    }

    long precision() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& operator[](long m) const { return c_.at(static_cast<std::size_t>(m)); }
    Rational& operator[](long m) { return c_.at(static_cast<std::size_t>(m)); }

    QSeries truncate(long precision) const {
        if (precision > this->precision()) throw DomainError("cannot raise the precision of a truncated series");
        return std::vector<Rational>(c_.begin(), c_.begin() + precision + 1);
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        QSeries r(std::min(a.precision(), b.precision()));
        for (long m = 0; m <= r.precision(); ++m) r[m] = a[m] + b[m];
        return r;
    }
    friend QSeries operator-(const QSeries& a) { return Rational(-1) * a; }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }
    friend QSeries operator*(const Rational& s, QSeries a) {
        for (auto& c : a.c_) c *= s;
        return a;
    }
    friend QSeries operator*(long s, const QSeries& a) { return Rational(s) * a; }
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        QSeries r(std::min(a.precision(), b.precision()));
        const long n = r.precision();
        for (long i = 0; i <= n; ++i) {
            if (a[i] == 0) continue;
            for (long j = 0; i + j <= n; ++j)
                if (b[j] != 0) r[i + j] += a[i] * b[j];
        }
        return r;
    }
    QSeries pow(long e) const {
        if (e < 0) throw DomainError("QSeries::pow: negative exponent");
        QSeries r = constant(1, precision()), b = *this;
        while (e > 0) {
            if (e & 1L) r = r * b;
            e >>= 1;
            if (e > 0) b = b * b;
        }
        return r;
    }

    /// Agreement through the common precision.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        long n = std::min(a.precision(), b.precision());
        for (long m = 0; m <= n; ++m)
            if (a[m] != b[m]) return false;
        return true;
    }

    std::string to_string() const {
        std::string out;
        for (long m = 0; m <= precision(); ++m) {
            if (c_[m] == 0) continue;
            if (!out.empty()) out += " + ";
            out += tmf3::to_string(c_[m]);
            if (m == 1) out += "*q";
            if (m > 1) out += "*q^" + std::to_string(m);
        }
        out += out.empty() ? "O(q^" : " + O(q^";
        return out + std::to_string(precision() + 1) + ")";
    }

private:
    static long check(long precision) {
        if (precision < 0) throw DomainError("QSeries precision must be >= 0");
        return precision;
    }

    std::vector<Rational> c_{Rational(0)};
};

inline std::string to_string(const QSeries& s) { return s.to_string(); }

namespace detail {

inline QSeries divisor_series(const Rational& constant, const Rational& scale, unsigned long k, long N) {
    if (N < 1) throw DomainError("series precision must be >= 1");
    QSeries s = QSeries::constant(constant, N);
    for (long m = 1; m <= N; ++m) s[m] = scale * Rational(sigma_pow(k, m));
    return s;
}

}  // namespace detail

inline QSeries series_c4(long N) { return detail::divisor_series(1, 240, 3, N); }
inline QSeries series_c6(long N) { return detail::divisor_series(1, -504, 5, N); }

/// q prod_{n >= 1} (1 - q^n)^24
inline QSeries series_delta(long N) {
    if (N < 1) throw DomainError("series precision must be >= 1");
    QSeries eta = QSeries::constant(1, N);
    for (long n = 1; n <= N; ++n) {
        QSeries factor = QSeries::constant(1, N);
        factor[n] = -1;
        eta = eta * factor;
    }
    return QSeries::q(N) * eta.pow(24);
}

/// G_{2n} = -B_{2n}/(4n) + sum_{m >= 1} sigma_{2n-1}(m) q^m
inline QSeries eisenstein_G(long two_n, long N) {
    if (two_n < 2 || two_n % 2 != 0) throw DomainError("eisenstein_G: weight must be even and >= 2");
    return detail::divisor_series(-bernoulli(two_n) / Rational(2 * two_n), 1, static_cast<unsigned long>(two_n - 1), N);
}

/// q-expansion of a level-one form with no negative Delta powers.
inline QSeries q_expansion(const LevelOneForm& f, long N) {
    QSeries c4 = series_c4(N), c6 = series_c6(N), d = series_delta(N);
    QSeries out(N);
    for (const auto& [m, c] : f.terms()) {
        if (m.d < 0) throw DomainError("q_expansion: Delta^-1 has a pole at the cusp");
        QSeries t = c * c4.pow(m.a) * d.pow(m.d);
        if (m.eps) t = t * c6;
        out = out + t;
    }
    return out;
}

namespace detail {

// Solves A x = b exactly; A is rows x cols, over-determined allowed.
// Throws when the system is inconsistent or the solution is not unique.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c] / A[r][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) throw DomainError("inconsistent linear system (precision too low?)");
    if (r < cols) throw DomainError("underdetermined linear system (precision too low?)");
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
    return x;
}

}  // namespace detail

/// Holomorphic basis c4^a c6^eps Delta^d (d >= 0) of weight w.
inline std::vector<FormMonomial> holomorphic_basis(long w) { return level_one_basis(w, 0); }

inline long eisenstein_precision(long two_n) { return static_cast<long>(holomorphic_basis(two_n).size()) + 10; }

/// G_{2n} written in the c4, c6, Delta basis, matched through q^{dim + 10}.
inline LevelOneForm eisenstein_in_c4c6(long two_n) {
    if (two_n < 4 || two_n % 2 != 0) throw DomainError("eisenstein_in_c4c6: weight must be even and >= 4");
    auto basis = holomorphic_basis(two_n);
    const long N = eisenstein_precision(two_n);
    std::vector<QSeries> cols;
    for (const auto& m : basis) cols.push_back(q_expansion(LevelOneForm::monomial(m), N));
    QSeries target = eisenstein_G(two_n, N);
    std::vector<std::vector<Rational>> A(N + 1, std::vector<Rational>(basis.size()));
    std::vector<Rational> b(N + 1);
    for (long m = 0; m <= N; ++m) {
        for (std::size_t j = 0; j < basis.size(); ++j) A[m][j] = cols[j][m];
        b[m] = target[m];
    }
    auto x = detail::solve_exact(std::move(A), std::move(b));
    LevelOneForm out;
    for (std::size_t j = 0; j < basis.size(); ++j) out += LevelOneForm::monomial(basis[j], x[j]);
    return out;
}

/// u_n = 1 for n even, 2 for n odd.
inline long u_n(long n) { return n % 2 == 0 ? 1 : 2; }

struct EAlpha {
    Gamma03Form gamma0;
    LevelOneForm level1;
};

/// The class e(alpha_{2n}) for weight 2n >= 4:
/// (u_n (q* - f*) G_{2n}, u_n (3^{2n} - 1) G_{2n}).
inline EAlpha e_alpha(long two_n) {
    LevelOneForm g = eisenstein_in_c4c6(two_n);
    Rational u = u_n(two_n / 2);
    return {u * delta(g), u * (pow(Rational(3), two_n) - 1) * g};
}

}  // namespace tmf3
