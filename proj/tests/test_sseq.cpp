#include "tmf3/sseq.hpp"

#include <gtest/gtest.h>

using namespace tmf3;

namespace {

SSElem z(int s, long i, long j, long k = 0) { return SSElem::monomial(s, i, j, k); }

const SSElem h1 = z(1, 1, 0);
const SSElem h20 = z(1, 0, 1);
const SSElem zeta2 = z(2, 0, 0);
const SSElem x = z(1, 0, 3);

// Every basis monomial in lines 0..S, weights 0..Wmax, pole orders 0..K.
template <class F>
void for_each_basis(int S, long Wmax, long K, F f) {
    for (int s = 0; s <= S; ++s)
        for (long W = 0; W <= Wmax; ++W)
            for (long j = 0; j <= W / 3; ++j)
                if (chain_dim(s, W) > 0)
                    for (long k = 0; k <= K; ++k) f(z(s, W - 3 * j, j, k));
}

const Chart& default_chart() {
    static const Chart c = compute_chart(Window{});
    return c;
}

}  // namespace

TEST(E2, Examples) {
    EXPECT_EQ(x.s, 1);
    EXPECT_EQ(x.t(), 18);
    SSElem h2 = z(3, 0, 1);
    EXPECT_EQ(h2.t(), 6);
    EXPECT_EQ(chain_dim(0, 3), 0);  // E2^{0,t} = 0 for odd weight
    EXPECT_THROW(z(0, 1, 0), DomainError);
    // the presentation element x has bidegree (1, 18)
    PresMonomial px{0, 0, 0, 1, 0};
    EXPECT_EQ(px.t(), 18);
    EXPECT_EQ(from_pres(px), x);
}

TEST(E2, DeltaLiftIsMultiplication) {
    SSElem d = z(0, 3, 3) + z(0, 0, 4);  // Delta mod 2
    SSElem m = z(1, 2, 5);
    EXPECT_EQ(m.lift(1), m);
    EXPECT_EQ((m * d).lift(0), m * d);
    SSElem over = m * d;
    over.k = 1;
    EXPECT_EQ(over, m);
}

TEST(D3, DisplayedValues) {
    EXPECT_EQ(d3(z(0, 2, 0)), h1 * h1 * h1);
    EXPECT_EQ(d3(z(0, 0, 2)), h1 * h20 * h20);
    EXPECT_TRUE(d3(z(0, 1, 1)).is_zero());
    EXPECT_TRUE(d3(h1).is_zero());
    EXPECT_EQ(d3(h20), h1 * h20 * zeta2);
    EXPECT_TRUE(d3(x).is_zero());
}

TEST(D3, SquareRule) {
    // d3(c^2) = h1 (zeta c)^2 for c of odd weight on the 0-line
    for (long i = 0; i <= 12; ++i)
        for (long j = 0; j <= 12; ++j) {
            if ((i + j) % 2 == 0) continue;
            SSElem c2 = z(0, 2 * i, 2 * j);
            SSElem zc = SSElem{1, 0, i + 3 * j, {j}};
            EXPECT_EQ(d3(c2), h1 * zc * zc) << i << "," << j;
        }
}

TEST(D3, DeltaLinear) {
    SSElem d = z(0, 3, 3) + z(0, 0, 4);
    for_each_basis(6, 30, 0, [&](const SSElem& m) { EXPECT_EQ(d3(m * d), d3(m) * d) << m.to_string(); });
}

TEST(D3, SquaresToZero) {
    for_each_basis(12, 60, 2, [](const SSElem& m) { EXPECT_TRUE(d3(d3(m)).is_zero()) << m.to_string(); });
}

TEST(D3, LeibnizPresentationAgrees) {
    for_each_basis(6, 36, 2, [](const SSElem& m) {
        EXPECT_EQ(from_pres(to_pres(m), m.s, m.t()), m) << m.to_string();
        EXPECT_EQ(d3_via_presentation(m), d3(m)) << m.to_string();
    });
}

TEST(D3, GeneratorsInPresentation) {
    // d3(A) = h1^3 after translation
    PresPoly A{PresMonomial{1, 0, 0, 0, 0}};
    EXPECT_EQ(from_pres(d3_leibniz(A), 3, 6), h1 * h1 * h1);
    PresPoly B{PresMonomial{0, 1, 0, 0, 0}};
    EXPECT_TRUE(d3_leibniz(B).empty());
    // Delta = B^3 - 27 C^2 = B^3 + C^2 mod 2
    PresPoly Delta{PresMonomial{1, 1, 1, 0, 0}, PresMonomial{0, 0, 2, 0, 0}};
    EXPECT_TRUE(d3_leibniz(Delta).empty());
    SSElem delta_mod2 = z(0, 3, 3) + z(0, 0, 4);
    EXPECT_EQ(from_pres(Delta, 0, 24), delta_mod2);
}

TEST(D3, ZeroLineReduction) {
    LocElem g(a1().pow(2));
    EXPECT_EQ(reduce_zero_line(g), z(0, 2, 0));
    LocElem inv(MultiPoly(1), 3, 1);  // 1/Delta
    SSElem r = reduce_zero_line(inv * LocElem(a1() * a3()));
    EXPECT_EQ(r.weight(), -8);
    EXPECT_TRUE(d3(r).is_zero());
}

TEST(Chart, WindowShape) {
    const auto& c = default_chart();
    EXPECT_FALSE(c.cells.empty());
    for (const auto& r : c.cells) {
        EXPECT_LE(std::abs(r.stem()), 100);
        EXPECT_EQ(r.t % 2, 0);
    }
    ASSERT_NE(c.find(1, 18), nullptr);
    EXPECT_EQ(c.find(1, 19), nullptr);
}

TEST(Chart, LocalizedE4OnHighLinesIsTheModel) {
    for (const auto& r : default_chart().cells) {
        if (r.s < 3) continue;
        SCOPED_TRACE(std::to_string(r.s) + "," + std::to_string(r.t));
        EXPECT_TRUE(r.delta_injective);
        EXPECT_NE(r.kind, LocKind::Growing);
        EXPECT_EQ(r.stable_dim, r.model ? 1 : 0);
        if (r.model) EXPECT_TRUE(r.pi_nonzero);
        EXPECT_TRUE(r.pi_kills_boundaries);
    }
}

TEST(Chart, LowLinesGrowPerDeltaStep) {
    for (const auto& r : default_chart().cells) {
        if (r.s > 2) continue;
        SCOPED_TRACE(std::to_string(r.s) + "," + std::to_string(r.t));
        EXPECT_TRUE(r.delta_injective);
        if (r.kind == LocKind::Growing) EXPECT_EQ(r.growth, 4);
    }
}

TEST(Chart, PeriodicInDelta) {
    const auto& c = default_chart();
    for (const auto& r : c.cells) {
        if (r.s == 0) continue;
        const auto* r24 = c.find(r.s, r.t + 24);
        if (!r24) continue;
        EXPECT_EQ(r.kind, r24->kind);
        EXPECT_EQ(r.stable_dim, r24->stable_dim);
        EXPECT_EQ(r.growth, r24->growth);
    }
}

TEST(Chart, Einf48Periodic) {
    const auto& c = default_chart();
    for (const auto& r : c.cells) {
        const auto* r48 = c.find(r.s, r.t + 48);
        if (!r48) continue;
        EXPECT_EQ(r.einf_dim - r.top_dim(), r48->einf_dim - r48->top_dim()) << r.s << "," << r.t;
        EXPECT_EQ(r.einf_growth, r48->einf_growth);
        EXPECT_EQ(r.d7_out, r48->d7_out);
        if (r.s >= 3) EXPECT_EQ(r.einf_dim, r48->einf_dim);
    }
}

TEST(D7, ModelValues) {
    EXPECT_FALSE(d7_model({1, 0}));  // x is a permanent cycle
    auto dd = d7_model({0, 1});
    ASSERT_TRUE(dd);
    // h20^4 nu with h20^4 = x^4 Delta^-2 and nu = h2 = x^3 Delta^-2
    EXPECT_EQ(*dd, (ModelClass{7, -4}));
    EXPECT_FALSE(d7_model({0, 2}));
    auto kk = d7_model({17, -7});
    ASSERT_TRUE(kk);
    EXPECT_EQ(*kk, (ModelClass{24, -12}));  // (h20^4)^6
    // d7 raises (s, t) by (7, 6)
    for (long d = -5; d <= 5; d += 2) {
        ModelClass m{2, d};
        EXPECT_EQ(d7_model(m)->t(), m.t() + 6);
    }
}

TEST(D7, PiOfNamedClasses) {
    EXPECT_EQ(pi_model(h20 * h20 * h20 * h20), (ModelClass{4, -2}));
    EXPECT_EQ(pi_model(z(3, 0, 1)), (ModelClass{3, -2}));  // nu
    EXPECT_EQ(pi_model(x), (ModelClass{1, 0}));
    EXPECT_FALSE(pi_model(h1));
    EXPECT_THROW(pi_model(z(0, 0, 2)), DomainError);  // a3^2 is not a cycle
}

TEST(Einf, HighLinesVanishAndX7IsZero) {
    for (const auto& r : default_chart().cells)
        if (r.s >= 7) EXPECT_EQ(r.einf_dim, 0) << r.s << "," << r.t;
}

TEST(Einf, NamedClassesSurvive) {
    const auto& c = default_chart();
    auto einf = [&](int s, long stem) { return c.find(s, stem + s)->einf_dim; };
    EXPECT_EQ(einf(3, 3), 1);   // nu
    EXPECT_EQ(einf(6, 6), 1);   // nu^2
    EXPECT_EQ(einf(4, 20), 1);  // kbar
    EXPECT_EQ(einf(5, 37), 1);  // nu x^2
    EXPECT_EQ(einf(3, 51), 1);  // x^3 = nu Delta^2
    EXPECT_EQ(einf(3, 27), 0);  // nu Delta
    EXPECT_EQ(einf(4, 44), 0);  // kbar Delta
    const auto* xr = c.find(1, 18);
    EXPECT_TRUE(xr->pi_nonzero);
    EXPECT_EQ(xr->d7_out, 0);
    const auto* xd = c.find(1, 42);  // x Delta
    EXPECT_EQ(xd->d7_out, 1);
    const auto* zero = c.find(0, 24);  // Delta
    EXPECT_EQ(zero->d7_out, 1);
    EXPECT_EQ(c.find(0, 48)->d7_out, 0);
    // eta x = h1 x is a nonzero E4 class with no d7
    const auto* ex = c.find(2, 36);
    EXPECT_GT(ex->einf_dim, 0);
}

TEST(Einf, MatchesTheStatedAnswer) {
    auto rows = pi_table(default_chart(), 0, 96);
    EXPECT_FALSE(rows.empty());
    for (const auto& r : rows)
        EXPECT_TRUE(r.match) << "stem " << r.stem << " s=" << r.s << " dim " << r.computed_dim << " growth "
                             << r.computed_growth;
}

TEST(Chart, Deterministic) {
    auto a = compute_chart(Window{6, 30, 3});
    auto b = compute_chart(Window{6, 30, 3});
    ASSERT_EQ(a.cells.size(), b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].e4_basis, b.cells[i].e4_basis);
    EXPECT_THROW(compute_chart(Window{6, 30, 1}), DomainError);
}

TEST(E7, H20FourthPower) {
    const SSElem h20_4 = h20 * h20 * h20 * h20;
    EXPECT_TRUE(same_e7_class(h20_4, from_pres(PresMonomial{0, 0, 0, 4, -2})));
    // x^4 Delta^-1 lives in a different bidegree
    const SSElem other = from_pres(PresMonomial{0, 0, 0, 4, -1});
    EXPECT_NE(other.t(), h20_4.t());
    EXPECT_FALSE(same_e7_class(h20_4, other));
    // zeta^4 Delta differs from h20^4 by h1^3 (zeta a3)^3 zeta, which dies at E4
    EXPECT_TRUE(same_e7_class(h20_4, z(4, 0, 4) + z(4, 3, 3)));
    EXPECT_FALSE(same_e7_class(h20_4, SSElem{4, 0, 12, {}}));
}
