#include "tmf3/levelmaps.hpp"

#include <gtest/gtest.h>

using namespace tmf3;

namespace {

using Q = Rational;
const MultiPoly A1 = a1();
const MultiPoly A3 = a3();

Gamma03Form poly(const MultiPoly& p) { return Gamma03Form(LocElem(p)); }

// Even monomials a1^i a3^j of weight w, plus their quotients by f*Delta^k.
std::vector<Gamma03Form> gamma03_basis(long w, int max_k) {
    std::vector<Gamma03Form> out;
    for (int k = 0; k <= max_k; ++k)
        for (int j = 0; 3 * j <= w + 12 * k; ++j) {
            long i = w + 12L * k - 3L * j;
            if ((i + j) % 2 != 0) continue;
            out.push_back(Gamma03Form(LocElem(MultiPoly::monomial(mono_a1a3(static_cast<int>(i), j), 1), 3 * k, k)));
        }
    return out;
}

}  // namespace

TEST(LevelOneForm, RelationReducesC6Squared) {
    auto c4 = LevelOneForm::c4(), c6 = LevelOneForm::c6(), d = LevelOneForm::delta();
    EXPECT_EQ(c6 * c6, c4.pow(3) - 1728 * d);
    EXPECT_EQ((c6 * c6).weight(), 12);
    EXPECT_EQ(d.pow(-2) * d.pow(2), LevelOneForm(1));
    EXPECT_THROW(c4.pow(-1), DomainError);
    EXPECT_EQ((c4 + c6).weight(), std::nullopt);
}

TEST(Gamma03Form, RejectsOddElements) {
    EXPECT_THROW(Gamma03Form(LocElem(A1)), DomainError);
    EXPECT_THROW(Gamma03Form(LocElem(MultiPoly(1), 3, 0)), DomainError);
    EXPECT_NO_THROW(Gamma03Form(LocElem(A1 * A3)));
    EXPECT_NO_THROW(Gamma03Form(LocElem(MultiPoly(1), 3, 1)));
}

TEST(LevelMaps, GeneratorTable) {
    auto c4 = LevelOneForm::c4(), c6 = LevelOneForm::c6(), d = LevelOneForm::delta();
    EXPECT_EQ(fstar(c4), poly(A1.pow(4) - 24 * A1 * A3));
    EXPECT_EQ(fstar(c6), poly(-A1.pow(6) + 36 * A1.pow(3) * A3 - 216 * A3.pow(2)));
    EXPECT_EQ(fstar(d), poly(A1.pow(3) * A3.pow(3) - 27 * A3.pow(4)));
    EXPECT_EQ(qstar(c4), poly(A1.pow(4) + 216 * A1 * A3));
    EXPECT_EQ(qstar(c6), poly(-A1.pow(6) + 540 * A1.pow(3) * A3 + 5832 * A3.pow(2)));
    EXPECT_EQ(qstar(d), poly(A1.pow(9) * A3 - 81 * A1.pow(6) * A3.pow(2) + 2187 * A1.pow(3) * A3.pow(3) -
                             19683 * A3.pow(4)));
    EXPECT_EQ(hstar(c4), 81 * c4);
    EXPECT_EQ(hstar(c6), 729 * c6);
    EXPECT_EQ(hstar(d), 531441 * d);
    EXPECT_EQ(tstar(poly(A1 * A1)), poly(-3 * A1 * A1));
    EXPECT_EQ(tstar(poly(A1 * A3)), poly(make_rational(1, 3) * A1.pow(4) - 9 * A1 * A3));
    EXPECT_EQ(tstar(poly(A3 * A3)),
              poly(make_rational(-1, 27) * A1.pow(6) + 2 * A1.pow(3) * A3 - 27 * A3.pow(2)));
}

TEST(LevelMaps, InverseDiscriminants) {
    auto d = LevelOneForm::delta();
    EXPECT_EQ(fstar(d.pow(-1)).elem(), LocElem(MultiPoly(1), 3, 1));
    EXPECT_EQ(qstar(d.pow(-1)).elem(), LocElem(MultiPoly(1), 1, 3));
    EXPECT_EQ(tstar(fstar(d.pow(-1))), qstar(d.pow(-1)));
}

TEST(LevelMaps, DerivationSteps) {
    EXPECT_EQ(tstar(poly(10 * A1.pow(4))), poly(90 * A1.pow(4)));
    EXPECT_EQ(tstar(poly(240 * A1 * A3)), poly(80 * A1.pow(4) - 2160 * A1 * A3));
    auto c4 = LevelOneForm::c4();
    EXPECT_EQ(9 * fstar(c4) + qstar(c4), poly(10 * A1.pow(4)));
    EXPECT_EQ(qstar(c4) - fstar(c4), poly(240 * A1 * A3));
}

TEST(LevelMaps, StackIdentities) {
    for (long w = 0; w <= 36; w += 2)
        for (auto m : level_one_basis(w, -2)) {
            auto f = LevelOneForm::monomial(m);
            SCOPED_TRACE(f.to_string());
            EXPECT_EQ(tstar(fstar(f)), qstar(f));
            EXPECT_EQ(tstar(qstar(f)), fstar(hstar(f)));
        }
}

TEST(LevelMaps, TstarInvolutionUpToScale) {
    for (long w = 0; w <= 24; w += 2)
        for (const auto& g : gamma03_basis(w, 2)) {
            SCOPED_TRACE(g.to_string());
            EXPECT_EQ(tstar(tstar(g)), pow(Q(3), w) * g);
        }
}

TEST(LevelMaps, TstarIsRingMap) {
    auto b = gamma03_basis(6, 1);
    auto c = gamma03_basis(4, 1);
    for (const auto& x : b)
        for (const auto& y : c) {
            EXPECT_EQ(tstar(x * y), tstar(x) * tstar(y));
            EXPECT_EQ(tstar(x + y), tstar(x) + tstar(y));
        }
}

TEST(Cochain, D1AfterD0VanishesThroughWeight48) {
    for (long w = 0; w <= 48; w += 2)
        for (auto m : level_one_basis(w, -3)) {
            auto f = LevelOneForm::monomial(m);
            SCOPED_TRACE(f.to_string());
            auto [u, v] = cochain_D0(f);
            EXPECT_TRUE(cochain_D1(u, v).is_zero());
        }
}

TEST(Delta, WorkedValues) {
    auto c4 = LevelOneForm::c4(), c6 = LevelOneForm::c6();
    EXPECT_EQ(delta(c4), poly(240 * A1 * A3));
    EXPECT_EQ(delta(c4 * c4), poly(480 * A1.pow(5) * A3 + 46080 * A1.pow(2) * A3.pow(2)));
    EXPECT_EQ(delta(c6), poly(8 * (63 * A1.pow(3) * A3 + 756 * A3.pow(2))));
}

TEST(Delta, TwoAdicValuationOfC4Powers) {
    for (long k = 1; k <= 40; ++k) {
        auto r = val2_delta_c4pow(k);
        EXPECT_TRUE(r.pass) << r.input << ": " << r.detail;
        EXPECT_EQ(r.valuation, 4 + val_p(BigInt(k), 2));
    }
    EXPECT_THROW(val2_delta_c4pow(0), DomainError);
}

TEST(Delta, TwoAdicValuationWithC6) {
    for (long k = 0; k <= 30; ++k) {
        auto r = val_delta_c4c6(k);
        EXPECT_TRUE(r.pass) << r.input << ": " << r.detail;
    }
}

TEST(Delta, LowestTermOfDeltaPowersModTwo) {
    for (long n = 1; n <= 24; ++n) {
        auto r = delta_mod2_Delta_pow(n);
        EXPECT_TRUE(r.pass) << r.input << ": got " << r.leading_term << ", " << r.detail;
    }
}

TEST(Delta, BinomialLemma) {
    for (long d = 2; d <= 6; ++d)
        for (long k = 1; k <= 20; ++k) {
            auto r = lemma_binomial_check(d, k);
            EXPECT_TRUE(r.pass) << r.input << ": " << r.detail;
        }
    EXPECT_THROW(lemma_binomial_check(1, 3), DomainError);
}

TEST(Delta, MatchesLevelOneFormPath) {
    // The report functions work on raw numerators; check against delta().
    auto c4 = LevelOneForm::c4();
    for (long k = 1; k <= 6; ++k) {
        auto d = delta(c4.pow(k)).elem();
        ASSERT_TRUE(d.is_polynomial());
        EXPECT_EQ(d.num().content_valuation(2), val2_delta_c4pow(k).valuation);
    }
}
