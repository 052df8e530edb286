#include "tmf3/weierstrass.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tmf3;

namespace {

using Q = Rational;

struct Rng {
    std::mt19937_64 gen{2024};
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

WCurve<Q> random_curve(Rng& rng) {
    for (;;) {
        WCurve<Q> c{rng.small(), rng.small(), rng.small(), rng.small(), rng.small()};
        if (invariants(c).disc != 0) return c;
    }
}

// normal-form curve through a random rational point (x0, y0)
struct Instance {
    WCurve<Q> curve;
    WPoint<Q> point;
};

Instance random_point_on_normal_form(Rng& rng) {
    for (;;) {
        Q A1 = rng.small(), x0 = rng.small(), y0 = rng.nonzero();
        Q A3 = (x0 * x0 * x0 - y0 * y0 - A1 * x0 * y0) / y0;
        auto c = normal_form(A1, A3);
        if (invariants(c).disc != 0) return {c, WPoint<Q>::affine(x0, y0)};
    }
}

}  // namespace

TEST(Invariants, SymbolicNormalForm) {
    auto inv = invariants(normal_form(a1(), a3()));
    EXPECT_EQ(inv.disc, a3().pow(3) * (a1().pow(3) - 27 * a3()));
    EXPECT_EQ(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6, 1728 * inv.disc);
}

TEST(Invariants, SymbolicIsogenousCurve) {
    WCurve<MultiPoly> cp{a1(), MultiPoly(), 3 * a3(), -6 * a1() * a3(), -(9 * a3() * a3() + a1().pow(3) * a3())};
    auto inv = invariants(cp);
    EXPECT_EQ(inv.disc, a3() * (a1().pow(3) - 27 * a3()).pow(3));
    EXPECT_EQ(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6, 1728 * inv.disc);
}

TEST(Invariants, GenericIdentity) {
    WCurve<MultiPoly> c;
    c.a1 = MultiPoly::variable(Var::a1);
    c.a2 = MultiPoly::variable(Var::a2);
    c.a3 = MultiPoly::variable(Var::a3);
    c.a4 = MultiPoly::variable(Var::a4);
    c.a6 = MultiPoly::variable(Var::a6);
    auto inv = invariants(c);
    EXPECT_EQ(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6, 1728 * inv.disc);
    EXPECT_EQ(inv.disc.weight(), 12);
}

TEST(Invariants, RandomRationalCurves) {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        auto inv = invariants(random_curve(rng));
        EXPECT_EQ(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6, 1728 * inv.disc);
    }
}

TEST(Invariants, JOnSingularCurveThrows) {
    EXPECT_THROW(j_invariant(WCurve<Q>{0, 0, 0, 0, 0}), DomainError);
}

TEST(Transform, IdentityAndScaling) {
    Rng rng;
    auto c = random_curve(rng);
    EXPECT_EQ(transform(c, WTransform<Q>::identity()), c);
    Q A1 = 2, A3 = 5, lam = make_rational(3, 2);
    auto t = transform(normal_form(A1, A3), WTransform<Q>{lam, 0, 0, 0});
    EXPECT_EQ(t, normal_form(Q(lam * A1), Q(lam * lam * lam * A3)));
    EXPECT_THROW(transform(c, WTransform<Q>{0, 0, 0, 0}), DomainError);
}

TEST(Transform, InvariantScalingLaws) {
    Rng rng;
    for (int i = 0; i < 40; ++i) {
        auto c = random_curve(rng);
        WTransform<Q> T{rng.nonzero(), rng.small(), rng.small(), rng.small()};
        auto a = invariants(c), b = invariants(transform(c, T));
        EXPECT_EQ(b.c4, pow(T.lambda, 4) * a.c4);
        EXPECT_EQ(b.c6, pow(T.lambda, 6) * a.c6);
        EXPECT_EQ(b.disc, pow(T.lambda, 12) * a.disc);
        EXPECT_EQ(j_invariant(transform(c, T)), j_invariant(c));
    }
}

TEST(Transform, RightActionAndInverse) {
    Rng rng;
    for (int i = 0; i < 40; ++i) {
        auto c = random_curve(rng);
        WTransform<Q> A{rng.nonzero(), rng.small(), rng.small(), rng.small()};
        WTransform<Q> B{rng.nonzero(), rng.small(), rng.small(), rng.small()};
        EXPECT_EQ(transform(transform(c, A), B), transform(c, compose(A, B)));
        EXPECT_EQ(transform(transform(c, A), inverse(A)), c);
        EXPECT_EQ(compose(A, inverse(A)), WTransform<Q>::identity());
    }
}

TEST(Transform, PointsFollowTheCurve) {
    Rng rng;
    for (int i = 0; i < 30; ++i) {
        auto [c, p] = random_point_on_normal_form(rng);
        WTransform<Q> T{rng.nonzero(), rng.small(), rng.small(), rng.small()};
        auto c2 = transform(c, T);
        auto p2 = transform_point(T, p);
        EXPECT_TRUE(on_curve(c2, p2));
        // group law commutes with coordinate changes
        auto q = add(c, p, p);
        EXPECT_EQ(transform_point(T, q), add(c2, p2, p2));
    }
}

TEST(GroupLaw, NegationOnNormalForm) {
    auto c = normal_form(Q(2), Q(3));
    EXPECT_EQ(neg(c, WPoint<Q>::affine(0, 0)), WPoint<Q>::affine(0, -3));
    auto cs = normal_form(a1(), a3());
    (void)cs;
}

TEST(GroupLaw, IdentityAndOrderThree) {
    auto c = normal_form(Q(1), Q(1));
    WPoint<Q> p0 = WPoint<Q>::affine(0, 0);
    EXPECT_EQ(add(c, p0, WPoint<Q>::infinity()), p0);
    EXPECT_TRUE(smul(c, 3, p0).at_infinity);
    EXPECT_FALSE(smul(c, 2, p0).at_infinity);
    EXPECT_THROW(add(c, WPoint<Q>::affine(1, 1), p0), DomainError);
}

TEST(GroupLaw, AbelianGroupProperties) {
    Rng rng;
    for (int i = 0; i < 25; ++i) {
        auto [c, p] = random_point_on_normal_form(rng);
        WPoint<Q> o = WPoint<Q>::affine(0, 0);
        WPoint<Q> q = add(c, p, o), r = add(c, p, p);
        EXPECT_EQ(add(c, p, q), add(c, q, p));
        EXPECT_EQ(add(c, add(c, p, q), r), add(c, p, add(c, q, r)));
        EXPECT_EQ(neg(c, neg(c, p)), p);
        EXPECT_TRUE(add(c, p, neg(c, p)).at_infinity);
        WPoint<Q> acc = WPoint<Q>::infinity();
        for (int n = 1; n <= 5; ++n) {
            acc = add(c, acc, p);
            EXPECT_EQ(smul(c, n, p), acc);
        }
    }
}

TEST(Flex, Examples) {
    EXPECT_TRUE(is_flex(normal_form(Q(1), Q(1)), WPoint<Q>::affine(0, 0)).flex);
    auto r = is_flex(WCurve<Q>{0, 0, 0, -1, 0}, WPoint<Q>::affine(0, 0));
    EXPECT_FALSE(r.flex);
    EXPECT_NE(r.reason.find("vertical"), std::string::npos);
    EXPECT_THROW(is_flex(normal_form(Q(1), Q(1)), WPoint<Q>::infinity()), DomainError);
    EXPECT_THROW(is_flex(normal_form(Q(1), Q(1)), WPoint<Q>::affine(1, 1)), DomainError);
}

TEST(Flex, AgreesWithGroupLaw) {
    Rng rng;
    int positives = 0;
    for (int i = 0; i < 60; ++i) {
        // transformed normal forms: (0,0) moves to an order-3 point
        Q A1 = rng.small(), A3 = rng.nonzero();
        if (invariants(normal_form(A1, A3)).disc == 0) continue;
        WTransform<Q> T{rng.nonzero(), rng.small(), rng.small(), rng.small()};
        auto c = transform(normal_form(A1, A3), T);
        auto p = transform_point(T, WPoint<Q>::affine(0, 0));
        bool order3 = smul(c, 3, p).at_infinity;
        EXPECT_TRUE(order3);
        EXPECT_EQ(is_flex(c, p).flex, order3);
        ++positives;
        // a generic point on the same kind of curve
        auto [c2, p2] = random_point_on_normal_form(rng);
        bool o3 = smul(c2, 3, p2).at_infinity && !smul(c2, 2, p2).at_infinity;
        EXPECT_EQ(is_flex(c2, p2).flex, o3);
    }
    EXPECT_GE(positives, 50);
}

TEST(Gamma1Normalize, AlreadyNormal) {
    auto res = gamma1_normalize(normal_form(Q(2), Q(5)), WPoint<Q>::affine(0, 0));
    EXPECT_EQ(res.A1, 2);
    EXPECT_EQ(res.A3, 5);
    EXPECT_EQ(res.T, WTransform<Q>::identity());
}

TEST(Gamma1Normalize, RoundTrip) {
    Rng rng;
    for (int i = 0; i < 50; ++i) {
        Q A1 = rng.small(), A3 = rng.nonzero();
        if (invariants(normal_form(A1, A3)).disc == 0) continue;
        WTransform<Q> T{1, rng.small(), rng.small(), rng.small()};
        auto c = transform(normal_form(A1, A3), T);
        auto p = transform_point(T, WPoint<Q>::affine(0, 0));
        auto res = gamma1_normalize(c, p);
        EXPECT_EQ(res.A1, A1);
        EXPECT_EQ(res.A3, A3);
        EXPECT_EQ(res.T, inverse(T));
        EXPECT_EQ(transform_point(res.T, p), WPoint<Q>::affine(0, 0));
    }
}

TEST(Gamma1Normalize, LambdaTorsor) {
    Q A1 = 3, A3 = -2, lam = make_rational(-5, 3);
    WTransform<Q> T{lam, 1, 2, 3};
    auto c = transform(normal_form(A1, A3), T);
    auto res = gamma1_normalize(c, transform_point(T, WPoint<Q>::affine(0, 0)));
    EXPECT_EQ(res.A1, lam * A1);
    EXPECT_EQ(res.A3, lam * lam * lam * A3);
}

TEST(Gamma1Normalize, RejectsOrderTwo) {
    WCurve<Q> c{0, 0, 0, -1, 0};
    try {
        gamma1_normalize(c, WPoint<Q>::affine(0, 0));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("order 2"), std::string::npos);
    }
    EXPECT_THROW(gamma1_normalize(c, WPoint<Q>::infinity()), DomainError);
}
