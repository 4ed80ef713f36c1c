#include "doctest.h"
#include "fairdiv/errors.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/rational.hpp"

using namespace fairdiv;

TEST_CASE("rational construction reduces and keeps the denominator positive") {
  const Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), UsageError);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("6/5") == Rational(6, 5));
  CHECK(Rational::parse("-6/5") == Rational(-6, 5));
  CHECK(Rational::parse("1.2") == Rational(6, 5));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.1") == Rational(-1, 10));
  CHECK(Rational::parse(" 2/8 ") == Rational(1, 4));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
}

TEST_CASE("rational printing is canonical") {
  CHECK(Rational(6, 5).str() == "6/5");
  CHECK(Rational(-6, 5).str() == "-6/5");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("arithmetic round-trips on randomized inputs") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const Rational a(rng.range(-50, 50), rng.range(1, 20));
    const Rational b(rng.range(-50, 50), rng.range(1, 20));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    CHECK(a - a == Rational(0));
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), UsageError);
}

TEST_CASE("comparisons are exact") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1, 3) > Rational(33, 100));
  CHECK(Rational(13, 10) == Rational(26, 20));
  CHECK(min(Rational(1, 2), Rational(2, 3)) == Rational(1, 2));
  CHECK(max(Rational(1, 2), Rational(2, 3)) == Rational(2, 3));
  CHECK(Rational(-3, 7).abs() == Rational(3, 7));
  CHECK(Rational(-3, 7).sign() == -1);
}
