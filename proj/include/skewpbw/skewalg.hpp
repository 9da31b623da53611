#pragma once

// The free skew group algebra H<x1, x2, x1-, x2-> over H = <g1, g2, f1, f2>.
//
// Monomials are stored group-part-leftmost: (e, w) stands for
// g1^e0 g2^e1 f1^e2 f2^e3 * w.  A letter commutes past a group element as
// w * g = chi^w(g) * g * w.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewpbw/coeffring.hpp"

namespace skewpbw {

enum class Letter : std::uint8_t { X1 = 0, X2 = 1, X1N = 2, X2N = 3 };

inline bool is_positive(Letter l) { return l == Letter::X1 || l == Letter::X2; }
/// 0 for x1 / x1-, 1 for x2 / x2-.
inline int letter_index(Letter l) { return static_cast<int>(l) & 1; }
inline Letter positive_letter(int i) { return i == 0 ? Letter::X1 : Letter::X2; }
inline Letter negative_letter(int i) { return i == 0 ? Letter::X1N : Letter::X2N; }
inline Letter mirror(Letter l) { return static_cast<Letter>(static_cast<int>(l) ^ 2); }
std::string letter_name(Letter l);

using Word = std::vector<Letter>;

/// Exponents over (g1, g2, f1, f2).
using GroupWord = std::array<int, 4>;
inline GroupWord operator+(const GroupWord& a, const GroupWord& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
/// Group-like attached to a letter: x_i -> g_i, x_i- -> f_i.
GroupWord letter_group(Letter l);

/// Occurrences of (x1, x2, x1-, x2-).
using Constitution = std::array<int, 4>;
Constitution constitution(const Word& w);
using Degree = std::array<int, 2>;
inline Degree gamma_degree(const Constitution& c) { return {c[0] - c[2], c[1] - c[3]}; }

/// Values chi^i(g_j), chi^i(f_j) as exponents of q and p.
struct ParameterTable {
  // chi[i][k]: character of x_{i+1} on the k-th group generator (g1, g2, f1, f2).
  std::array<std::array<Exponent, 4>, 2> chi;

  /// p_ii = q^{d_i}, p_12 = p, p_21 = q^{d_1 a_12} p^-1.
  static ParameterTable from_cartan(const std::array<std::array<int, 2>, 2>& cartan,
                                    const std::array<int, 2>& d);
  static const ParameterTable& g2();

  /// Character of a word evaluated on a group word.
  [[nodiscard]] Exponent eval(const Word& w, const GroupWord& e) const;
  [[nodiscard]] Exponent eval(const Constitution& c, const GroupWord& e) const;
};

struct Monomial {
  GroupWord grp{};
  Word word;

  Monomial() = default;
  Monomial(GroupWord g, Word w) : grp(g), word(std::move(w)) {}

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Deterministic total order used for output: constitution descending, then
/// group exponents ascending, then words descending with x1 > x2 > x1- > x2-
/// and a proper prefix greater than its extensions.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Element {
 public:
  using Map = std::map<Monomial, LaurentPoly, MonomialOrder>;

  Element() = default;
  Element(const LaurentPoly& c);  // NOLINT(google-explicit-constructor)
  Element(long c) : Element(LaurentPoly(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Element(const Monomial& m, LaurentPoly c = 1);

  static Element letter(Letter l) { return Element(Monomial({}, {l})); }
  static Element group(const GroupWord& e) { return Element(Monomial(e, {})); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Map& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  /// Scalar times a group word, the only invertible shape handled here.
  [[nodiscard]] bool is_unit() const;
  [[nodiscard]] Element inverse() const;

  void add_term(const Monomial& m, const LaurentPoly& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const LaurentPoly& c);
  Element operator-() const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const LaurentPoly& c) { return a *= c; }
  friend Element operator*(const LaurentPoly& c, Element a) { return a *= c; }
  friend bool operator==(const Element&, const Element&) = default;

 private:
  Map terms_;
};

Element operator*(const Element& a, const Element& b);
Element pow(const Element& a, int n);

/// chi^{m1.word} evaluated at m2.grp + group image of m2.word.
Exponent pairing(const Monomial& m1, const Monomial& m2);
/// (e1, w1)(e2, w2) = chi^{w1}(e2) (e1 + e2, w1 w2).
std::pair<Exponent, Monomial> mul(const Monomial& a, const Monomial& b);
Element mul(const Element& a, const Element& b);
/// [a, b] = sum over monomial pairs of ab - pairing(a, b) ba.
Element bracket(const Element& a, const Element& b);

/// Letterwise substitution x_i <-> x_i- (group parts kept).
Element mirror(const Element& a);

std::optional<Degree> gamma_degree(const Element& a);
std::optional<Constitution> homogeneous_constitution(const Element& a);

struct MonomialPairOrder {
  bool operator()(const std::pair<Monomial, Monomial>& a,
                  const std::pair<Monomial, Monomial>& b) const;
};

class TensorElement {
 public:
  using Map = std::map<std::pair<Monomial, Monomial>, LaurentPoly, MonomialPairOrder>;

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Map& terms() const { return terms_; }
  void add_term(const Monomial& l, const Monomial& r, const LaurentPoly& c);
  TensorElement& operator+=(const TensorElement& o);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

 private:
  Map terms_;
};

/// (a (x) b)(c (x) d) = ac (x) bd.
TensorElement operator*(const TensorElement& a, const TensorElement& b);
TensorElement tensor(const Element& a, const Element& b);

TensorElement coproduct(const Element& a);
struct MonomialTripleOrder {
  bool operator()(const std::array<Monomial, 3>& a, const std::array<Monomial, 3>& b) const;
};
using TripleTensor = std::map<std::array<Monomial, 3>, LaurentPoly, MonomialTripleOrder>;

/// (Delta (x) id) t and (id (x) Delta) t.
TripleTensor coproduct_left(const TensorElement& t);
TripleTensor coproduct_right(const TensorElement& t);

LaurentPoly counit(const Element& a);
/// (eps (x) id) and (id (x) eps).
Element counit_left(const TensorElement& t);
Element counit_right(const TensorElement& t);

std::string to_string(const Monomial& m);

}  // namespace skewpbw
