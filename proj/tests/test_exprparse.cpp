#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewpbw/exprparse.hpp"
#include "test_support.hpp"

using namespace skewpbw;
using namespace skewpbw::testing;

TEST_CASE("parse examples") {
  const Element x1 = Element::letter(Letter::X1), x2 = Element::letter(Letter::X2);
  CHECK(parse("[x1,x2]") == x1 * x2 - LaurentPoly::p() * (x2 * x1));
  CHECK(parse("(1 - q^-3) * x2- * g1 * f1") ==
        Element(Monomial({1, 0, 1, 0}, {Letter::X2N}), LaurentPoly::q(3) - 1));
  CHECK(parse("  x1-x2 ") == Element(Monomial({}, {Letter::X1N, Letter::X2})));
  CHECK(parse("x1 -x2") == x1 - x2);
  CHECK(parse("-1/2*q^-1*p^2") == Element(LaurentPoly::monomial(-1, 2, Rational(-1, 2))));
  CHECK(parse("g1^-2 g1^2") == Element(1));
  CHECK(parse("(x2-)^2") == parse("x2- x2-"));
}

TEST_CASE("parse errors carry position and expectations") {
  try {
    (void)parse("[[x1,x2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
    CHECK(e.expected().count("']'") == 1);
  }
  CHECK_THROWS_AS((void)parse("[x1,"), ParseError);
  CHECK_THROWS_AS((void)parse("x3"), ParseError);
  CHECK_THROWS_AS((void)parse("x1^1/2"), ParseError);
  CHECK_THROWS_AS((void)parse(""), ParseError);
  CHECK_THROWS_AS((void)parse("x1 )"), ParseError);
  CHECK_THROWS_AS((void)parse("x1^-1"), EvalError);
  CHECK_THROWS_AS((void)parse("(1+q)^-1"), EvalError);
  CHECK_NOTHROW((void)parse("(2 q g1)^-1"));
}

TEST_CASE("format examples") {
  CHECK(format(parse("1 - g1 f1")) == "1 - g1 f1");
  CHECK(format(Element()) == "0");
  CHECK(format(parse("x1 g1")) == "q^3 g1 x1");
  CHECK(format(parse("[x1,x2]")) == "x1 x2 - p x2 x1");
  CHECK(format(parse("(q^3 - 1) g2^-1 x1 - 2")) == "(q^3 - 1) g2^-1 x1 - 2");
}

TEST_CASE("format then parse is the identity on random elements") {
  std::mt19937 rng(kSeed + 10);
  for (int i = 0; i < 200; ++i) {
    const Element a = random_element(rng, 4, 5);
    const std::string s = format(a);
    CHECK_MESSAGE(parse(s) == a, s);
  }
}
