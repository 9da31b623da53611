#pragma once

// Exact coefficient arithmetic in Q[q^{+-1}, p^{+-1}].
//
// Every structure constant of the two-parameter quantum group lives in this
// ring: p11 = q^3, p22 = q, p12 = p and p21 = q^-3 p^-1.  Linear algebra over
// the ring is done fraction-free (no rational-function type), so solutions are
// returned as numerator/denominator pairs sharing one denominator.

#include <compare>
#include <map>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace skewpbw {

class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Parses "n" or "n/d" (optional leading '-').
  static Rational parse(const std::string& text);

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_one() const { return value_ == 1; }
  [[nodiscard]] std::string numerator() const { return value_.get_num().get_str(); }
  [[nodiscard]] std::string denominator() const { return value_.get_den().get_str(); }
  [[nodiscard]] std::string to_string() const { return value_.get_str(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Exponent pair (e_q, e_p) of a Laurent monomial q^e_q p^e_p.
struct Exponent {
  int q = 0;
  int p = 0;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
  Exponent operator+(const Exponent& o) const { return {q + o.q, p + o.p}; }
  Exponent operator-(const Exponent& o) const { return {q - o.q, p - o.p}; }
};

struct Term {
  Exponent exp;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse Laurent polynomial in q and p with rational coefficients.
/// Terms are kept sorted by (e_q, e_p) lexicographically descending with no
/// zero coefficients, so structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(int eq, int ep, Rational c = 1);
  static LaurentPoly q(int e = 1) { return monomial(e, 0); }
  static LaurentPoly p(int e = 1) { return monomial(0, e); }
  static LaurentPoly from_terms(std::vector<Term> terms);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_one() const;
  /// Single-term polynomials are exactly the units of the ring.
  [[nodiscard]] bool is_unit() const { return terms_.size() == 1; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool involves_p() const;
  [[nodiscard]] const Term& leading() const { return terms_.front(); }
  [[nodiscard]] const Term& trailing() const { return terms_.back(); }

  /// Multiply by c * q^eq p^ep.
  [[nodiscard]] LaurentPoly shifted(Exponent e, const Rational& c = 1) const;
  /// Integer power; negative exponents are allowed only for units.
  [[nodiscard]] LaurentPoly pow(int n) const;
  /// Exact quotient; throws DivisionError when `d` does not divide.
  [[nodiscard]] LaurentPoly exact_div(const LaurentPoly& d) const;
  /// Quotient if `d` divides exactly.
  [[nodiscard]] std::optional<LaurentPoly> try_div(const LaurentPoly& d) const;
  /// Canonical text form, e.g. "q^3 - 1" or "-1/2*q^-1*p^2".
  [[nodiscard]] std::string to_string() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Total order used only to make containers deterministic.
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void add_scaled(const LaurentPoly& o, const Rational& s);
  std::vector<Term> terms_;
};

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);

/// A fraction num/den with den != 0; equality is cross-multiplication.
struct LaurentFraction {
  LaurentPoly num;
  LaurentPoly den = 1;
  [[nodiscard]] bool is_zero() const { return num.is_zero(); }
  [[nodiscard]] std::optional<LaurentPoly> as_poly() const { return num.try_div(den); }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const LaurentFraction& a, const LaurentFraction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

/// Cyclotomic exponents {n -> k} standing for prod_n Phi_n(q)^k.
using CycloDen = std::map<int, int>;

/// Element of Q[q^{+-1}, p^{+-1}] localized at the cyclotomic polynomials in
/// q.  Stored reduced (no Phi_n of the denominator divides the numerator), so
/// structural equality is equality.
class CycloFraction {
 public:
  CycloFraction() = default;
  CycloFraction(LaurentPoly num);  // NOLINT(google-explicit-constructor)
  CycloFraction(long c) : CycloFraction(LaurentPoly(c)) {}  // NOLINT(google-explicit-constructor)
  CycloFraction(LaurentPoly num, CycloDen den);

  /// num / den, provided den is a unit times a product of cyclotomic polynomials.
  static std::optional<CycloFraction> from_quotient(const LaurentPoly& num, const LaurentPoly& den);

  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return den_.empty(); }
  [[nodiscard]] const LaurentPoly& num() const { return num_; }
  [[nodiscard]] const CycloDen& den() const { return den_; }
  [[nodiscard]] LaurentPoly den_poly() const;
  [[nodiscard]] std::string to_string() const;

  CycloFraction operator-() const;
  CycloFraction& operator+=(const CycloFraction& o);
  CycloFraction& operator-=(const CycloFraction& o);
  CycloFraction& operator*=(const CycloFraction& o);
  friend CycloFraction operator+(CycloFraction a, const CycloFraction& b) { return a += b; }
  friend CycloFraction operator-(CycloFraction a, const CycloFraction& b) { return a -= b; }
  friend CycloFraction operator*(CycloFraction a, const CycloFraction& b) { return a *= b; }
  friend bool operator==(const CycloFraction&, const CycloFraction&) = default;

 private:
  void reduce();
  LaurentPoly num_;
  CycloDen den_;
};

/// a = unit * prod Phi_n(q)^k, or nullopt when a involves p beyond a
/// monomial factor or has a non-cyclotomic factor.
std::optional<std::pair<LaurentPoly, CycloDen>> cyclotomic_factorization(const LaurentPoly& a);

/// Reduced rational function q^shift * num / den in q alone: num(0) != 0
/// unless num = 0, den(0) != 0, den monic, gcd(num, den) = 1.  Coefficient
/// vectors are dense and ascending.
class QFraction {
 public:
  using Dense = std::vector<mpq_class>;

  QFraction() = default;
  QFraction(long c);  // NOLINT(google-explicit-constructor)
  /// Throws std::invalid_argument if `a` involves p.
  static QFraction from_poly(const LaurentPoly& a);

  [[nodiscard]] bool is_zero() const { return num_.empty(); }
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] LaurentPoly numerator() const;
  [[nodiscard]] LaurentPoly denominator() const;

  QFraction operator-() const;
  QFraction& operator+=(const QFraction& o);
  QFraction& operator-=(const QFraction& o);
  QFraction& operator*=(const QFraction& o);
  QFraction& operator/=(const QFraction& o);
  friend QFraction operator+(QFraction a, const QFraction& b) { return a += b; }
  friend QFraction operator-(QFraction a, const QFraction& b) { return a -= b; }
  friend QFraction operator*(QFraction a, const QFraction& b) { return a *= b; }
  friend QFraction operator/(QFraction a, const QFraction& b) { return a /= b; }
  friend bool operator==(const QFraction&, const QFraction&) = default;

 private:
  void normalize();
  int shift_ = 0;
  Dense num_;
  Dense den_{mpq_class(1)};
};

using QVector = std::vector<QFraction>;

/// Reduced row echelon form over Q(q): pivots are 1, pivot columns cleared.
struct QEchelon {
  std::vector<QVector> rows;
  std::vector<std::size_t> pivot_cols;
  [[nodiscard]] std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan over the first `pivot_limit` columns with the same pivot rule
/// as eliminate().
QEchelon eliminate_field(std::vector<QVector> rows, std::size_t cols, std::size_t pivot_limit);

/// Dense row of ring elements; zero entries are empty polynomials.
using CoeffVector = std::vector<LaurentPoly>;

/// Rows over a shared column index space.
class CoeffMatrix {
 public:
  explicit CoeffMatrix(std::size_t cols = 0) : cols_(cols) {}
  CoeffMatrix(std::size_t cols, std::vector<CoeffVector> rows);

  void add_row(CoeffVector row);
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const CoeffVector& row(std::size_t i) const { return rows_[i]; }
  [[nodiscard]] const std::vector<CoeffVector>& row_list() const { return rows_; }
  [[nodiscard]] CoeffMatrix transposed() const;

 private:
  std::size_t cols_;
  std::vector<CoeffVector> rows_;
};

/// Result of fraction-free Gauss-Jordan elimination.  Every pivot row holds
/// the common value `pivot` at its pivot column and zero in all other pivot
/// columns.
struct Echelon {
  std::vector<CoeffVector> rows;
  std::vector<std::size_t> pivot_cols;
  LaurentPoly pivot = 1;
  [[nodiscard]] std::size_t rank() const { return pivot_cols.size(); }
};

/// Fraction-free (Bareiss) Gauss-Jordan over the first `pivot_limit` columns.
/// Pivot rule: first column with a nonzero entry; among candidate rows the
/// entry with fewest terms, ties broken by row index.
Echelon eliminate(std::vector<CoeffVector> rows, std::size_t cols,
                  std::size_t pivot_limit);
inline Echelon eliminate(const CoeffMatrix& m) {
  return eliminate(m.row_list(), m.cols(), m.cols());
}

/// Coordinates of a target in a row span, sharing one denominator.
struct SpanCoordinates {
  std::vector<LaurentPoly> num;
  LaurentPoly den = 1;
  [[nodiscard]] LaurentFraction at(std::size_t i) const { return {num[i], den}; }
};

/// Coordinates c with sum_i c_i * row_i = target, or nullopt when the target is
/// outside the span.  The result is verified by back-substitution.
std::optional<SpanCoordinates> solve_in_span(const CoeffVector& target,
                                             const CoeffMatrix& span);
/// Same for several targets at once (one elimination).
std::vector<std::optional<SpanCoordinates>> solve_in_span_multi(
    const std::vector<CoeffVector>& targets, const CoeffMatrix& span);

/// n-th cyclotomic polynomial in q.
const LaurentPoly& cyclotomic(int n);

/// {t <= t_max : a vanishes at every primitive t-th root of unity}.
/// Throws std::invalid_argument for a == 0 or when a involves p.
std::set<int> vanishing_orders(const LaurentPoly& a, int t_max = 24);

}  // namespace skewpbw
