#include <doctest.h>

#include <limits>

#include "fup/error.hpp"
#include "fup/rational.hpp"

using fup::ExactRational;

TEST_SUITE("rational") {
  TEST_CASE("reduces and normalises sign") {
    const ExactRational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(ExactRational(0, 5) == ExactRational(0));
    CHECK_THROWS_AS(ExactRational(1, 0), fup::ParameterError);
  }

  TEST_CASE("parse") {
    CHECK(ExactRational::parse("3/2") == ExactRational(3, 2));
    CHECK(ExactRational::parse("5") == ExactRational(5));
    CHECK(ExactRational::parse(" -10/4 ") == ExactRational(-5, 2));
    CHECK_THROWS_AS(ExactRational::parse("3/"), fup::ParameterError);
    CHECK_THROWS_AS(ExactRational::parse("x"), fup::ParameterError);
    CHECK_THROWS_AS(ExactRational::parse("1/0"), fup::ParameterError);
  }

  TEST_CASE("arithmetic and ordering") {
    const ExactRational a(1, 3), b(1, 6);
    CHECK(a + b == ExactRational(1, 2));
    CHECK(a - b == ExactRational(1, 6));
    CHECK(a * b == ExactRational(1, 18));
    CHECK(a / b == ExactRational(2));
    CHECK(-a == ExactRational(-1, 3));
    CHECK(b < a);
    CHECK(abs(ExactRational(-7, 3)) == ExactRational(7, 3));
    CHECK_THROWS_AS(a / ExactRational(0), fup::ParameterError);
  }

  TEST_CASE("floor and ceil") {
    CHECK(ExactRational(7, 2).floor() == 3);
    CHECK(ExactRational(7, 2).ceil() == 4);
    CHECK(ExactRational(-7, 2).floor() == -4);
    CHECK(ExactRational(-7, 2).ceil() == -3);
    CHECK(ExactRational(4).ceil() == 4);
    CHECK(ExactRational(45, 2).to_string() == "45/2");
  }

  TEST_CASE("overflow is reported") {
    const ExactRational big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big * ExactRational(2), fup::CapacityError);
  }
}
