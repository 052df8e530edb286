#include "tmf3/expr.hpp"

#include <gtest/gtest.h>

using namespace tmf3;

namespace {

std::string round(const std::string& s) { return print(*parse(s)); }

int error_column(const std::string& s) {
    try {
        parse(s);
    } catch (const ParseError& e) {
        return e.column();
    }
    return -1;
}

}  // namespace

TEST(Parse, Precedence) {
    EXPECT_EQ(round("1 + 2*3"), "(1 + (2 * 3))");
    EXPECT_EQ(round("-a1^2"), "(-(a1^2))");
    EXPECT_EQ(round("-9*a1*a3"), "(((-9) * a1) * a3)");
    EXPECT_EQ(round("a1^2^3"), "(a1^(2^3))");
    EXPECT_EQ(round("Delta^-1"), "(Delta^(-1))");
    EXPECT_EQ(round("c4 - c6 - Delta"), "((c4 - c6) - Delta)");
    EXPECT_EQ(round("a1/3"), "(a1 / 3)");
    EXPECT_EQ(round("1/3*a1"), "(1/3 * a1)");
    EXPECT_EQ(round("qstar(c4) - fstar(c4)"), "(qstar(c4) - fstar(c4))");
}

TEST(Parse, Errors) {
    EXPECT_EQ(error_column("c4^^2"), 4);
    EXPECT_EQ(error_column("foo + 1"), 1);
    EXPECT_EQ(error_column("a1 + b"), 6);
    EXPECT_EQ(error_column("(a1 + a3"), 1);
    EXPECT_EQ(error_column("a1 + a3)"), 8);
    EXPECT_EQ(error_column("1/0"), 1);
    EXPECT_EQ(error_column("12x"), 3);
    EXPECT_EQ(error_column("fstar c4"), 7);
    EXPECT_EQ(error_column("a1 +"), 5);
    try {
        parse("a1 +\n  $");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
}

TEST(Parse, RoundTripIsIdentityOnAsts) {
    for (const std::string s : {"1/3*a1^4 + -9*a1*a3", "(1)/(a3^3*(a1^3 + -27*a3))", "1*c4^3*Delta^-1",
                                "tstar(fstar(c4)) - qstar(c4)", "1 + 2*q + 3*q^3 + O(q^4)", "-(-(a1))^2"}) {
        auto e = parse(s);
        EXPECT_EQ(*parse(print(*e)), *e) << s;
    }
}

TEST(Eval, Examples) {
    EXPECT_EQ(std::get<LocElem>(evaluate("fstar(c4)")), std::get<LocElem>(evaluate("a1^4 - 24*a1*a3")));
    EXPECT_EQ(to_string(evaluate("tstar(a1*a3)")), "1/3*a1^4 + -9*a1*a3");
    EXPECT_EQ(std::get<LocElem>(evaluate("qstar(c4) - fstar(c4)")), delta(LevelOneForm::c4()).elem());
    EXPECT_EQ(std::get<LevelOneForm>(evaluate("hstar(Delta)")), 531441 * LevelOneForm::delta());
    EXPECT_EQ(std::get<Rational>(evaluate("2/4 + 1/2^2")), make_rational(3, 4));
    EXPECT_EQ(std::get<LevelOneForm>(evaluate("(c4^3 - c6^2)/1728")), LevelOneForm::delta());
    EXPECT_EQ(std::get<LocElem>(evaluate("fstar(Delta)*fstar(1/Delta)")), LocElem(1));
}

TEST(Eval, Series) {
    auto s = std::get<QSeries>(evaluate("(c4^3 - c6^2)/1728 - Delta + q", {10}));
    EXPECT_EQ(s, QSeries::q(10));
    auto t = std::get<QSeries>(evaluate("1 + q + O(q^3)", {10}));
    EXPECT_EQ(t.precision(), 2);
    EXPECT_EQ(t.to_string(), "1 + 1*q + O(q^3)");
}

TEST(Eval, DomainErrors) {
    EXPECT_THROW(evaluate("tstar(a1)"), DomainError);  // not Gamma_0(3)-invariant
    EXPECT_THROW(evaluate("a1 + c4"), DomainError);
    EXPECT_THROW(evaluate("a1/a1"), DomainError);  // a1 is not a unit
    EXPECT_THROW(evaluate("c4^(1/2)"), DomainError);
    EXPECT_THROW(evaluate("1/Delta + q"), DomainError);
    EXPECT_THROW(evaluate("O(q + 1)"), DomainError);
}

TEST(Eval, PrintedValuesReparseToThemselves) {
    // every value kind the tool prints evaluates back to itself
    for (const std::string s : {"tstar(a3^2)", "fstar(1/Delta)", "tstar(fstar(1/Delta))", "c4^2*c6/Delta^3",
                                "delta(c4^3)", "-5/7"}) {
        Value v = evaluate(s);
        Value back = evaluate(to_string(v));
        EXPECT_EQ(back, v) << s << " -> " << to_string(v);
    }
    Value q = evaluate("Delta + O(q^8)", {12});
    EXPECT_EQ(to_string(evaluate(to_string(q), {12})), to_string(q));
}
