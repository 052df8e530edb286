#include "tmf3/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tmf3;

namespace {

// Akiyama-Tanigawa: independent of the binomial recurrence.  Produces B_n
// with the B_1 = +1/2 convention, which agrees for even n.
Rational akiyama_tanigawa(unsigned n) {
    std::vector<Rational> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        a[m].canonicalize();
        for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    }
    return a[0];
}

long val2_by_division(long n) {
    long v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v;
}

BigInt sigma_brute(unsigned long k, long n) {
    BigInt s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        BigInt p = 1;
        for (unsigned long i = 0; i < k; ++i) p *= d;
        s += p;
    }
    return s;
}

}  // namespace

TEST(ValP, Examples) {
    EXPECT_EQ(val_p(Rational(240), 2), Valuation(4));
    EXPECT_EQ(val2_by_division(240), 4);
    EXPECT_EQ(val_p(Rational(1), 2), Valuation(0));
    EXPECT_TRUE(val_p(Rational(0), 2).is_infinite());
    EXPECT_EQ(val_p(make_rational(5, 24), 2), Valuation(-3));
    EXPECT_EQ(val_p(make_rational(9, 7), 3), Valuation(2));
}

TEST(ValP, RejectsComposite) { EXPECT_THROW(val_p(Rational(8), 4), DomainError); }

TEST(ValP, IsAValuation) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-5000, 5000);
    auto rnd = [&] {
        long d = 0;
        while (d == 0) d = dist(rng);
        return make_rational(dist(rng), d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = rnd(), b = rnd();
        for (unsigned long p : {2UL, 3UL, 5UL}) {
            EXPECT_EQ(val_p(a * b, p), val_p(a, p) + val_p(b, p));
            Valuation va = val_p(a, p), vb = val_p(b, p), vs = val_p(a + b, p);
            EXPECT_GE(vs, std::min(va, vb));
            if (va != vb) EXPECT_EQ(vs, std::min(va, vb));
        }
    }
}

TEST(Bernoulli, Examples) {
    EXPECT_EQ(bernoulli(2), make_rational(1, 6));
    EXPECT_EQ(bernoulli(4), make_rational(-1, 30));
    EXPECT_EQ(-bernoulli(4) / 8, make_rational(1, 240));
    EXPECT_EQ(bernoulli(6), make_rational(1, 42));
}

TEST(Bernoulli, MatchesIndependentAlgorithm) {
    for (long m = 2; m <= 64; m += 2) EXPECT_EQ(bernoulli(m), akiyama_tanigawa(static_cast<unsigned>(m))) << m;
}

TEST(Bernoulli, SatisfiesRecurrence) {
    auto table = bernoulli_table(64);
    for (unsigned m = 1; m <= 64; ++m) {
        Rational s = 0;
        for (unsigned k = 0; k <= m; ++k) s += Rational(binomial(m + 1, k)) * table[k];
        EXPECT_EQ(s, 0) << m;
    }
}

TEST(Bernoulli, RejectsOddOrNonpositive) {
    EXPECT_THROW(bernoulli(3), DomainError);
    EXPECT_THROW(bernoulli(0), DomainError);
    EXPECT_THROW(bernoulli(-2), DomainError);
}

TEST(SigmaPow, Examples) {
    EXPECT_EQ(sigma_pow(3, 1), 1);
    EXPECT_EQ(sigma_pow(3, 2), 9);
    EXPECT_EQ(sigma_pow(5, 2), 33);
    EXPECT_THROW(sigma_pow(3, 0), DomainError);
}

TEST(SigmaPow, BruteForceAndMultiplicative) {
    for (unsigned long k : {1UL, 3UL, 5UL, 11UL})
        for (long n = 1; n <= 120; ++n) EXPECT_EQ(sigma_pow(k, n), sigma_brute(k, n));
    for (long m = 1; m <= 30; ++m)
        for (long n = 1; n <= 30; ++n) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), BigInt(m).get_mpz_t(), BigInt(n).get_mpz_t());
            if (g == 1) EXPECT_EQ(sigma_pow(3, m * n), sigma_pow(3, m) * sigma_pow(3, n));
        }
}

TEST(Rational, ParseAndCanonicalForm) {
    EXPECT_EQ(parse_rational("6/-4"), make_rational(-3, 2));
    EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("x"), DomainError);
}
