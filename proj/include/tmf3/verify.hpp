#pragma once

// The acceptance checks, shared by the acceptance binary and `tmf3 verify`.
// Each criterion runs a list of named checks against a time limit.

#include "tmf3/funfield.hpp"
#include "tmf3/levelmaps.hpp"
#include "tmf3/qexp.hpp"
#include "tmf3/sseq.hpp"
#include "tmf3/weierstrass.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace tmf3 {

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0;
    double limit_seconds = 0;

    bool within_time() const { return seconds < limit_seconds; }
    bool pass() const {
        if (!within_time()) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace verify_detail {

using Q = Rational;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    Q small(long lo = -7, long hi = 7) {
        std::uniform_int_distribution<long> n(lo, hi), d(1, 4);
        return make_rational(n(gen), d(gen));
    }
    Q nonzero() {
        Q q = 0;
        while (q == 0) q = small();
        return q;
    }
};

inline Check check(std::string name, bool pass, std::string detail = {}) {
    return {std::move(name), pass, std::move(detail)};
}

inline Gamma03Form poly(const MultiPoly& p) { return Gamma03Form(LocElem(p)); }

template <class F>
CriterionResult timed(int id, std::string title, double limit, F body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.limit_seconds = limit;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r.checks);
    } catch (const std::exception& e) {
        r.checks.push_back(check("no exception", false, e.what()));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace verify_detail

inline CriterionResult verify_invariants() {
    using namespace verify_detail;
    return timed(1, "invariant identity c4^3 - c6^2 = 1728 Delta", 5.0, [](std::vector<Check>& out) {
        Rng rng(101);
        int good = 0, total = 0;
        while (total < 100) {
            WCurve<Q> c{rng.small(), rng.small(), rng.small(), rng.small(), rng.small()};
            auto inv = invariants(c);
            if (inv.disc == 0) continue;
            ++total;
            if (inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == 1728 * inv.disc) ++good;
        }
        out.push_back(check("100 random curves over Q", good == 100, std::to_string(good) + "/100"));
        const MultiPoly A1 = a1(), A3 = a3();
        auto n = invariants(normal_form(A1, A3));
        out.push_back(check("symbolic normal form", n.c4.pow(3) - n.c6.pow(2) == 1728 * n.disc));
        out.push_back(check("Delta(normal form) = a3^3 (a1^3 - 27 a3)", n.disc == A3.pow(3) * cusp_factor(),
                            n.disc.to_string()));
        auto p = invariants(isogenous_curve());
        out.push_back(check("symbolic isogenous curve", p.c4.pow(3) - p.c6.pow(2) == 1728 * p.disc));
        out.push_back(check("Delta' = a3 (a1^3 - 27 a3)^3", p.disc == A3 * cusp_factor().pow(3), p.disc.to_string()));
    });
}

inline CriterionResult verify_formulae() {
    using namespace verify_detail;
    return timed(2, "formula table for f*, q*, h*, t*", 5.0, [](std::vector<Check>& out) {
        const MultiPoly A1 = a1(), A3 = a3();
        auto c4 = LevelOneForm::c4(), c6 = LevelOneForm::c6(), d = LevelOneForm::delta();
        struct Row {
            std::string name;
            Gamma03Form got, want;
        };
        std::vector<Row> rows = {
            {"f*(c4)", fstar(c4), poly(A1.pow(4) - 24 * A1 * A3)},
            {"f*(c6)", fstar(c6), poly(-A1.pow(6) + 36 * A1.pow(3) * A3 - 216 * A3.pow(2))},
            {"f*(Delta)", fstar(d), poly(A1.pow(3) * A3.pow(3) - 27 * A3.pow(4))},
            {"q*(c4)", qstar(c4), poly(A1.pow(4) + 216 * A1 * A3)},
            {"q*(c6)", qstar(c6), poly(-A1.pow(6) + 540 * A1.pow(3) * A3 + 5832 * A3.pow(2))},
            {"q*(Delta)", qstar(d),
             poly(A1.pow(9) * A3 - 81 * A1.pow(6) * A3.pow(2) + 2187 * A1.pow(3) * A3.pow(3) - 19683 * A3.pow(4))},
            {"t*(a1^2)", tstar(poly(A1 * A1)), poly(-3 * A1 * A1)},
            {"t*(a1 a3)", tstar(poly(A1 * A3)), poly(make_rational(1, 3) * A1.pow(4) - 9 * A1 * A3)},
            {"t*(a3^2)", tstar(poly(A3 * A3)),
             poly(make_rational(-1, 27) * A1.pow(6) + 2 * A1.pow(3) * A3 - 27 * A3.pow(2))},
        };
        for (const auto& r : rows) out.push_back(check(r.name, r.got == r.want, r.got.to_string()));
        out.push_back(check("h*(c4) = 3^4 c4", hstar(c4) == 81 * c4));
        out.push_back(check("h*(c6) = 3^6 c6", hstar(c6) == 729 * c6));
        out.push_back(check("h*(Delta) = 3^12 Delta", hstar(d) == 531441 * d));

        auto fi = invariants(normal_form(A1, A3));
        auto qi = invariants(WCurve<MultiPoly>{A1, MultiPoly(), 3 * A3, -6 * A1 * A3, -(9 * A3 * A3 + A1.pow(3) * A3)});
        bool f_ok = poly(fi.c4) == rows[0].want && poly(fi.c6) == rows[1].want && poly(fi.disc) == rows[2].want;
        bool q_ok = poly(qi.c4) == rows[3].want && poly(qi.c6) == rows[4].want && poly(qi.disc) == rows[5].want;
        out.push_back(check("f*(c_i) = C_i(a1, 0, a3, 0, 0)", f_ok));
        out.push_back(check("q*(c_i) = C_i(a1, 0, 3a3, -6a1a3, -(9a3^2 + a1^3 a3))", q_ok));
    });
}

inline CriterionResult verify_cosimplicial() {
    using namespace verify_detail;
    return timed(3, "cosimplicial identities and D1 D0 = 0", 10.0, [](std::vector<Check>& out) {
        for (const auto& [name, m] : std::vector<std::pair<std::string, LevelOneForm>>{
                 {"c4", LevelOneForm::c4()}, {"c6", LevelOneForm::c6()}, {"Delta", LevelOneForm::delta()}}) {
            out.push_back(check("t* f* = q* on " + name, tstar(fstar(m)) == qstar(m)));
            out.push_back(check("t* q* = f* h* on " + name, tstar(qstar(m)) == fstar(hstar(m))));
        }
        long count = 0, bad = 0;
        std::string first_bad;
        for (long w = -24; w <= 48; w += 2)
            for (const auto& mono : level_one_basis(w, -6)) {
                auto f = LevelOneForm::monomial(mono);
                auto [u, v] = cochain_D0(f);
                ++count;
                if (!cochain_D1(u, v).is_zero()) {
                    ++bad;
                    if (first_bad.empty()) first_bad = f.to_string();
                }
            }
        out.push_back(check("D1 D0 = 0 on basis monomials of weight -24..48 (Delta^d, d >= -6)", bad == 0,
                            std::to_string(count) + " monomials" + (bad ? ", first failure " + first_bad : "")));
    });
}

inline CriterionResult verify_isogeny_criterion() {
    using namespace verify_detail;
    return timed(4, "isogeny C -> C'", 30.0, [](std::vector<Check>& out) {
        auto v = velu3();
        for (auto& c : verify_isogeny(v.cprime, velu_X_closed_form(), velu_Y_closed_form())) out.push_back(c);
        FFElem x = FFElem::x(), y = FFElem::y();
        bool s3 = sigma_pullback(sigma_pullback(sigma_pullback(x))) == x &&
                  sigma_pullback(sigma_pullback(sigma_pullback(y))) == y;
        out.push_back(check("sigma*^3 = id", s3));
        out.push_back(check("X = x + sigma* x + sigma*^2 x", v.X == velu_X_closed_form()));
        out.push_back(check("Y = y + sigma* y + sigma*^2 y", v.Y == velu_Y_closed_form()));
    });
}

inline CriterionResult verify_flex() {
    using namespace verify_detail;
    return timed(5, "flex <=> order 3", 30.0, [](std::vector<Check>& out) {
        Rng rng(505);
        int pos = 0, neg = 0, agree = 0, total = 0;
        std::string first_bad;
        auto record = [&](const WCurve<Q>& c, const WPoint<Q>& p) {
            bool order3 = smul(c, 3, p).at_infinity && !p.at_infinity;
            bool flex = is_flex(c, p).flex;
            ++total;
            if (order3) ++pos; else ++neg;
            if (order3 == flex) ++agree;
            else if (first_bad.empty()) first_bad = to_string(c) + " at " + to_string(p);
        };
        while (pos < 60) {
            Q A1 = rng.small(), A3 = rng.nonzero();
            if (invariants(normal_form(A1, A3)).disc == 0) continue;
            WTransform<Q> T{rng.nonzero(), rng.small(), rng.small(), rng.small()};
            record(transform(normal_form(A1, A3), T), transform_point(T, WPoint<Q>::affine(0, 0)));
        }
        int two_torsion = 0, generic = 0;
        while (two_torsion < 10) {
            // y^2 = x^3 + a x^2 + b x has (0, 0) of order 2
            WCurve<Q> c{0, rng.small(), 0, rng.nonzero(), 0};
            if (invariants(c).disc == 0) continue;
            WTransform<Q> T{rng.nonzero(), rng.small(), rng.small(), rng.small()};
            record(transform(c, T), transform_point(T, WPoint<Q>::affine(0, 0)));
            ++two_torsion;
        }
        while (generic < 10) {
            Q A1 = rng.small(), x0 = rng.nonzero(), y0 = rng.nonzero();
            Q A3 = (x0 * x0 * x0 - y0 * y0 - A1 * x0 * y0) / y0;
            auto c = normal_form(A1, A3);
            if (invariants(c).disc == 0) continue;
            auto p = WPoint<Q>::affine(x0, y0);
            if (smul(c, 3, p).at_infinity) continue;
            record(c, p);
            ++generic;
        }
        out.push_back(check(">= 50 order-3 instances", pos >= 50, std::to_string(pos)));
        out.push_back(check(">= 10 negative instances (2-torsion and non-torsion)", neg >= 20, std::to_string(neg)));
        out.push_back(check("flex agrees with the group law", agree == total,
                            std::to_string(agree) + "/" + std::to_string(total) + (first_bad.empty() ? "" : ", " + first_bad)));
    });
}

inline CriterionResult verify_normalization() {
    using namespace verify_detail;
    return timed(6, "Gamma_1(3) normalization round trip", 30.0, [](std::vector<Check>& out) {
        Rng rng(606);
        int n = 0, ok = 0;
        while (n < 60) {
            Q A1 = rng.small(), A3 = rng.nonzero();
            if (invariants(normal_form(A1, A3)).disc == 0) continue;
            ++n;
            WTransform<Q> T{1, rng.small(), rng.small(), rng.small()};
            auto c = transform(normal_form(A1, A3), T);
            auto p = transform_point(T, WPoint<Q>::affine(0, 0));
            auto res = gamma1_normalize(c, p);
            if (res.A1 == A1 && res.A3 == A3 && res.T == inverse(T) &&
                transform(c, res.T) == normal_form(A1, A3))
                ++ok;
        }
        out.push_back(check("recovers (A1, A3) and the inverse transform", ok == n,
                            std::to_string(ok) + "/" + std::to_string(n)));
    });
}

inline CriterionResult verify_valuations() {
    using namespace verify_detail;
    return timed(7, "2-adic valuations of delta", 120.0, [](std::vector<Check>& out) {
        auto sweep = [&](const std::string& name, long lo, long hi, auto f) {
            long bad = 0;
            std::string first;
            for (long k = lo; k <= hi; ++k) {
                auto r = f(k);
                if (!r.pass) {
                    ++bad;
                    if (first.empty()) first = r.input + ": " + r.detail;
                }
            }
            out.push_back(check(name, bad == 0, bad ? first : std::to_string(hi - lo + 1) + " cases"));
        };
        sweep("nu2(delta(c4^k)) = 4 + nu2(k), 1 <= k <= 64", 1, 64, [](long k) { return val2_delta_c4pow(k); });
        sweep("nu2(delta(c4^k c6)) = 3, 0 <= k <= 32", 0, 32, [](long k) { return val_delta_c4c6(k); });
        sweep("lowest a1-term of delta(Delta^N) mod 2, 1 <= N <= 64", 1, 64, [](long n) { return delta_mod2_Delta_pow(n); });
        for (long d = 2; d <= 6; ++d)
            sweep("binomial lemma, d = " + std::to_string(d) + ", 1 <= k <= 64", 1, 64,
                  [d](long k) { return lemma_binomial_check(d, k); });
    });
}

inline CriterionResult verify_qexp() {
    using namespace verify_detail;
    return timed(8, "Eisenstein series and e(alpha)", 30.0, [](std::vector<Check>& out) {
        auto c4 = LevelOneForm::c4();
        out.push_back(check("G4 = c4/240", eisenstein_in_c4c6(4) == make_rational(1, 240) * c4));
        long bad = 0;
        std::string first;
        for (long w = 4; w <= 40; w += 2) {
            long N = eisenstein_precision(w);
            if (!(q_expansion(eisenstein_in_c4c6(w), N) == eisenstein_G(w, N))) {
                ++bad;
                if (first.empty()) first = "weight " + std::to_string(w);
            }
        }
        out.push_back(check("q-expansions agree for all weights <= 40", bad == 0, first));
        auto e = e_alpha(4);
        out.push_back(check("e(alpha_4) = (a1 a3, c4/3)",
                            e.gamma0 == poly(a1() * a3()) && e.level1 == make_rational(1, 3) * c4,
                            "(" + e.gamma0.to_string() + ", " + e.level1.to_string() + ")"));
        const long N = 50;
        out.push_back(check("c4^3 - c6^2 = 1728 Delta through q^50",
                            series_c4(N).pow(3) - series_c6(N).pow(2) == 1728 * series_delta(N)));
    });
}

inline CriterionResult verify_sseq(const Window& win = Window{}) {
    using namespace verify_detail;
    return timed(9, "homotopy fixed point spectral sequence", 300.0, [&win](std::vector<Check>& out) {
        Chart chart = compute_chart(win);

        // d3 d3 = 0 on every chain basis element of every level in the window
        long checked = 0, bad = 0;
        for (const auto& cell : chart.cells)
            for (const auto& lvl : cell.levels)
                for (long j = 0; j < chain_dim(cell.s, lvl.W); ++j) {
                    SSElem m{cell.s, lvl.k, lvl.W, {j}};
                    ++checked;
                    if (!d3(d3(m)).is_zero()) ++bad;
                }
        out.push_back(check("d3 d3 = 0 on the window", bad == 0, std::to_string(checked) + " basis elements"));

        auto z = [](int s, long i, long j) { return SSElem::monomial(s, i, j); };
        const SSElem h1 = z(1, 1, 0), h20 = z(1, 0, 1), zeta2 = z(2, 0, 0), x = z(1, 0, 3);
        auto via_pres = [](const PresPoly& p, int s, long t) { return from_pres(d3_leibniz(p), s + 3, t + 2); };
        const PresPoly A{PresMonomial{1, 0, 0, 0, 0}}, B{PresMonomial{0, 1, 0, 0, 0}}, C{PresMonomial{0, 0, 1, 0, 0}};
        bool displayed = d3(z(0, 2, 0)) == h1 * h1 * h1 && via_pres(A, 0, 4) == h1 * h1 * h1 &&
                         d3(z(0, 0, 2)) == h1 * h20 * h20 && via_pres(C, 0, 12) == h1 * h20 * h20 &&
                         d3(z(0, 1, 1)).is_zero() && via_pres(B, 0, 8).is_zero() && d3(h1).is_zero() &&
                         d3_via_presentation(h1).is_zero() && d3(h20) == h1 * h20 * zeta2 &&
                         d3_via_presentation(h20) == h1 * h20 * zeta2 && d3(x).is_zero();
        out.push_back(check("displayed d3 values, directly and through the presentation", displayed));

        long leib_bad = 0, leib_total = 0;
        for (int s = 0; s <= 6; ++s)
            for (long W = 0; W <= 36; ++W)
                for (long j = 0; j < chain_dim(s, W); ++j)
                    for (long k = 0; k <= 2; ++k) {
                        SSElem m{s, k, W, {j}};
                        ++leib_total;
                        if (!(d3_via_presentation(m) == d3(m))) ++leib_bad;
                    }
        out.push_back(check("Leibniz presentation agrees with d3", leib_bad == 0, std::to_string(leib_total) + " elements"));

        bool periodic = true, injective = true;
        for (const auto& r : chart.cells) {
            if (r.s == 0) continue;
            injective = injective && r.delta_injective;
            if (const auto* r24 = chart.find(r.s, r.t + 24))
                periodic = periodic && r.kind == r24->kind && r.stable_dim == r24->stable_dim && r.growth == r24->growth;
        }
        out.push_back(check("Delta acts injectively on E4, s >= 1", injective));
        out.push_back(check("localized E4 is Delta-periodic on s >= 1", periodic));

        bool model = true;
        std::string model_bad;
        for (const auto& r : chart.cells) {
            if (r.s < 3) continue;
            bool ok = r.kind != LocKind::Growing && r.stable_dim == (r.model ? 1 : 0) && (!r.model || r.pi_nonzero);
            if (!ok && model_bad.empty()) model_bad = "(" + std::to_string(r.s) + "," + std::to_string(r.t) + ")";
            model = model && ok;
        }
        out.push_back(check("E7 on s >= 3 is F2[Delta^{+-1}, x]", model, model_bad));

        const SSElem h20_4 = h20 * h20 * h20 * h20;
        auto pi = pi_model(h20_4);
        std::string where = "h20^4 in (" + std::to_string(h20_4.s) + "," + std::to_string(h20_4.t()) + "), pi(h20^4) = " +
                            (pi ? pi->to_string() : "0");
        const SSElem stated = from_pres(PresMonomial{0, 0, 0, 4, -1});
        out.push_back(check("h20^4 = x^4 Delta^-1 at E7 (as stated)", same_e7_class(h20_4, stated),
                            where + "; x^4 Delta^-1 in (" + std::to_string(stated.s) + "," +
                                std::to_string(stated.t()) + ")"));
        const SSElem corrected = from_pres(PresMonomial{0, 0, 0, 4, -2});
        out.push_back(check("h20^4 = x^4 Delta^-2 at E7", same_e7_class(h20_4, corrected), where));

        auto rows = pi_table(chart, 0, 96);
        long mism = 0, zero_mism = 0;
        std::string first;
        for (const auto& r : rows) {
            if (r.match) continue;
            (r.s == 0 ? zero_mism : mism)++;
            if (first.empty()) first = "stem " + std::to_string(r.stem) + ", s = " + std::to_string(r.s);
        }
        out.push_back(check("E_infinity (s >= 1) matches pi_* TMF(Gamma_0(3)) for stems 0-96", mism == 0,
                            std::to_string(rows.size()) + " cells" + (first.empty() ? "" : ", first mismatch " + first)));
        out.push_back(check("0-line ranks and the Delta F2[Delta^{+-2}] cokernel", zero_mism == 0));

        bool x7 = true, per48 = true;
        for (const auto& r : chart.cells) {
            if (r.s >= 7 && r.einf_dim != 0) x7 = false;
            if (const auto* r48 = chart.find(r.s, r.t + 48)) {
                if (r.s >= 3 && r.einf_dim != r48->einf_dim) per48 = false;
                if (r.s <= 2 && (r.einf_growth != r48->einf_growth || r.d7_out != r48->d7_out)) per48 = false;
            }
        }
        out.push_back(check("x^7 = 0: E_infinity vanishes on s >= 7", x7));
        out.push_back(check("E_infinity is 48-periodic", per48));
    });
}

/// Criteria 1-9 in order.
inline std::vector<CriterionResult> verify_all() {
    return {verify_invariants(), verify_formulae(),    verify_cosimplicial(),
            verify_isogeny_criterion(), verify_flex(), verify_normalization(),
            verify_valuations(), verify_qexp(),        verify_sseq()};
}

inline std::vector<std::function<CriterionResult()>> criterion_table() {
    return {verify_invariants, verify_formulae,    verify_cosimplicial, verify_isogeny_criterion, verify_flex,
            verify_normalization, verify_valuations, verify_qexp, [] { return verify_sseq(); }};
}

}  // namespace tmf3
