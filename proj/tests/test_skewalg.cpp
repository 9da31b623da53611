#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewpbw/exprparse.hpp"
#include "skewpbw/skewalg.hpp"
#include "test_support.hpp"

using namespace skewpbw;
using namespace skewpbw::testing;

namespace {

const Element x1 = Element::letter(Letter::X1);
const Element x2 = Element::letter(Letter::X2);
const Element n1 = Element::letter(Letter::X1N);
const Element n2 = Element::letter(Letter::X2N);
Element grp(int a, int b, int c, int d) { return Element::group({a, b, c, d}); }
LaurentPoly Q(int e) { return LaurentPoly::q(e); }
LaurentPoly P(int e) { return LaurentPoly::p(e); }
Monomial word(Word w) { return Monomial({}, std::move(w)); }

}  // namespace

TEST_CASE("pairing values") {
  CHECK(unit(pairing(word({Letter::X1}), word({Letter::X1}))) == Q(3));
  CHECK(unit(pairing(word({Letter::X2}), word({Letter::X2}))) == Q(1));
  CHECK(unit(pairing(word({Letter::X1}), word({Letter::X2}))) == P(1));
  CHECK(unit(pairing(word({Letter::X1}), word({Letter::X2N}))) == LaurentPoly::monomial(-3, -1));
  CHECK(unit(pairing(Monomial({1, 2, 0, -1}, {}), word({Letter::X1, Letter::X2N}))) == 1);
  // p12 p21 = q^-3
  CHECK(unit(pairing(word({Letter::X1}), word({Letter::X2}))) *
            unit(pairing(word({Letter::X2}), word({Letter::X1}))) ==
        Q(-3));
}

TEST_CASE("products with group elements") {
  CHECK(x1 * grp(1, 0, 0, 0) == Element(Monomial({1, 0, 0, 0}, {Letter::X1}), Q(3)));
  CHECK(n2 * grp(1, 0, 1, 0) == Element(Monomial({1, 0, 1, 0}, {Letter::X2N}), Q(3)));
  CHECK(Element(1) * (x1 + n2) == x1 + n2);
}

TEST_CASE("bracket examples") {
  CHECK(bracket(x1, x2) == x1 * x2 - P(1) * (x2 * x1));
  CHECK(bracket(x2, x1) == x2 * x1 - LaurentPoly::monomial(-3, -1) * (x1 * x2));
  CHECK(bracket(grp(1, 0, 0, 0), x1) ==
        Element(Monomial({1, 0, 0, 0}, {Letter::X1}), LaurentPoly(1) - Q(3)));
}

TEST_CASE("gamma degree") {
  CHECK(gamma_degree(x1 * n2) == Degree{1, -1});
  CHECK(gamma_degree(Element(1) - grp(1, 0, 1, 0)) == Degree{0, 0});
  CHECK_FALSE(gamma_degree(x1 + x2));
}

TEST_CASE("coproduct examples") {
  TensorElement d1;
  d1.add_term(word({Letter::X1}), Monomial(), 1);
  d1.add_term(Monomial({1, 0, 0, 0}, {}), word({Letter::X1}), 1);
  CHECK(coproduct(x1) == d1);

  const Element h = grp(1, 0, 1, 0);
  CHECK(coproduct(h) == tensor(h, h));

  // Oracle: expand Delta(x1 x2) - p Delta(x2 x1) by hand.
  const Element b = bracket(x1, x2);
  TensorElement expect = tensor(b, Element(1)) + tensor(grp(1, 1, 0, 0), b);
  expect += tensor(Element(Monomial({1, 0, 0, 0}, {Letter::X2}), LaurentPoly(1) - Q(-3)), x1);
  CHECK(coproduct(b) == expect);
}

TEST_CASE("multiplication is associative on random triples") {
  std::mt19937 rng(kSeed);
  for (int i = 0; i < 150; ++i) {
    const Element a = random_element(rng, 2, 3), b = random_element(rng, 2, 3), c = random_element(rng, 2, 3);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("pairing is bimultiplicative") {
  std::mt19937 rng(kSeed + 1);
  for (int i = 0; i < 150; ++i) {
    const Word w1 = random_word(rng, 3, true, true), w2 = random_word(rng, 2, true, true);
    const Monomial m3(random_group(rng), random_word(rng, 3, true, true));
    Word cat = w1;
    cat.insert(cat.end(), w2.begin(), w2.end());
    CHECK(pairing(word(cat), m3) == pairing(word(w1), m3) + pairing(word(w2), m3));
    CHECK(pairing(m3, word(cat)) == pairing(m3, word(w1)) + pairing(m3, word(w2)));
    CHECK(pairing(Monomial(random_group(rng), w1), m3) == pairing(word(w1), m3));
  }
}

TEST_CASE("the four bracket identities hold on random words") {
  std::mt19937 rng(kSeed + 2);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  for (int i = 0; i < 120; ++i) {
    const Monomial mu = word(random_word(rng, len(rng), true, false));
    const Monomial mv = word(random_word(rng, len(rng), true, false));
    const Monomial mw = word(random_word(rng, len(rng), false, true));
    const Monomial mvn = word(random_word(rng, len(rng), false, true));
    const Element u(mu), v(mv), w(mw), vn(mvn);

    CHECK(bracket(bracket(u, v), w) ==
          bracket(u, bracket(v, w)) + unit(pairing(mv, mw)) * bracket(bracket(u, w), v));
    CHECK(bracket(u, bracket(vn, w)) ==
          bracket(bracket(u, vn), w) + unit(pairing(mu, mvn)) * bracket(vn, bracket(u, w)));

    const Monomial a = word(random_word(rng, len(rng), true, true));
    const Monomial b = word(random_word(rng, len(rng), true, true));
    const Monomial c = word(random_word(rng, len(rng), true, true));
    const Element ea(a), eb(b), ec(c);
    CHECK(bracket(ea * eb, ec) == unit(pairing(b, c)) * (bracket(ea, ec) * eb) + ea * bracket(eb, ec));
    CHECK(bracket(ea, eb * ec) == bracket(ea, eb) * ec + unit(pairing(a, b)) * (eb * bracket(ea, ec)));
  }
}

TEST_CASE("bracket of homogeneous elements is homogeneous of summed degree") {
  std::mt19937 rng(kSeed + 3);
  for (int i = 0; i < 100; ++i) {
    const Word w1 = random_word(rng, 3, true, true), w2 = random_word(rng, 2, true, true);
    Element a(Monomial({}, w1), random_coeff(rng));
    Word w1p = w1;
    std::shuffle(w1p.begin(), w1p.end(), rng);
    a.add_term(Monomial(random_group(rng), w1p), random_coeff(rng));
    const Element b(Monomial(random_group(rng), w2), random_coeff(rng));
    const Element br = bracket(a, b);
    if (br.is_zero()) continue;
    const Degree da = *gamma_degree(a), db = *gamma_degree(b);
    CHECK(gamma_degree(br) == Degree{da[0] + db[0], da[1] + db[1]});
  }
}

TEST_CASE("coassociativity and counit laws") {
  std::vector<Element> gens = {x1, x2, n1, n2, grp(1, 0, 0, 0), grp(0, 1, 0, 0), grp(0, 0, 1, 0),
                               grp(0, 0, 0, 1)};
  std::mt19937 rng(kSeed + 4);
  std::uniform_int_distribution<std::size_t> len(1, 5);
  for (int i = 0; i < 50; ++i)
    gens.push_back(Element(Monomial(random_group(rng), random_word(rng, len(rng), true, true))));
  for (const auto& a : gens) {
    const TensorElement d = coproduct(a);
    CHECK(coproduct_left(d) == coproduct_right(d));
    CHECK(counit_left(d) == a);
    CHECK(counit_right(d) == a);
  }
  CHECK(counit(x1) == LaurentPoly());
  CHECK(counit(grp(2, 0, -1, 0)) == 1);
}

TEST_CASE("coproduct is multiplicative") {
  std::mt19937 rng(kSeed + 5);
  for (int i = 0; i < 30; ++i) {
    const Element a = random_element(rng, 2, 3), b = random_element(rng, 2, 2);
    CHECK(coproduct(a * b) == coproduct(a) * coproduct(b));
  }
}
