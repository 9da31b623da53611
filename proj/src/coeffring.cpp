#include "skewpbw/coeffring.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>

namespace skewpbw {

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(const std::string& text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (v.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  v.canonicalize();
  return Rational(v);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

// ------------------------------------------------------------- LaurentPoly

namespace {

// Descending lexicographic order on exponents.
bool term_before(const Term& a, const Term& b) { return a.exp > b.exp; }

std::vector<Term> merge_sorted(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), term_before);
  std::vector<Term> out;
  out.reserve(raw.size());
  for (auto& t : raw) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return out;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.push_back({{0, 0}, Rational(c)});
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({{0, 0}, c});
}

LaurentPoly LaurentPoly::monomial(int eq, int ep, Rational c) {
  LaurentPoly r;
  if (!c.is_zero()) r.terms_.push_back({{eq, ep}, std::move(c)});
  return r;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  LaurentPoly r;
  r.terms_ = merge_sorted(std::move(terms));
  return r;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].exp == Exponent{} && terms_[0].coeff.is_one();
}

bool LaurentPoly::involves_p() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp.p != 0; });
}

LaurentPoly LaurentPoly::shifted(Exponent e, const Rational& c) const {
  LaurentPoly r;
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.exp + e, t.coeff * c});
  return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) {
    if (!is_unit()) throw DivisionError("negative power of a non-unit Laurent polynomial");
    const Term& t = terms_[0];
    Rational c = 1;
    for (int i = 0; i < -n; ++i) c *= t.coeff;
    return monomial(t.exp.q * n, t.exp.p * n, Rational(1) / c);
  }
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

void LaurentPoly::add_scaled(const LaurentPoly& o, const Rational& s) {
  if (o.is_zero() || s.is_zero()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->exp > b->exp)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp > a->exp) {
      out.push_back({b->exp, b->coeff * s});
      ++b;
    } else {
      Rational c = a->coeff + b->coeff * s;
      if (!c.is_zero()) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  add_scaled(o, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  add_scaled(o, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_unit()) return b.shifted(a.terms_[0].exp, a.terms_[0].coeff);
  if (b.is_unit()) return a.shifted(b.terms_[0].exp, b.terms_[0].coeff);
  std::vector<Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) raw.push_back({x.exp + y.exp, x.coeff * y.coeff});
  return LaurentPoly::from_terms(std::move(raw));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

std::optional<LaurentPoly> LaurentPoly::try_div(const LaurentPoly& d) const {
  if (d.is_zero()) throw DivisionError("division by zero Laurent polynomial");
  if (is_zero()) return LaurentPoly{};
  if (d.is_unit()) {
    const Term& t = d.terms_[0];
    return shifted(Exponent{} - t.exp, Rational(1) / t.coeff);
  }
  // Exponent box of a possible quotient, per variable.
  auto range = [](const LaurentPoly& f, auto proj) {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& t : f.terms_) {
      lo = std::min(lo, proj(t.exp));
      hi = std::max(hi, proj(t.exp));
    }
    return std::pair{lo, hi};
  };
  auto pq = [](const Exponent& e) { return e.q; };
  auto pp = [](const Exponent& e) { return e.p; };
  const auto [aq_lo, aq_hi] = range(*this, pq);
  const auto [dq_lo, dq_hi] = range(d, pq);
  const auto [ap_lo, ap_hi] = range(*this, pp);
  const auto [dp_lo, dp_hi] = range(d, pp);
  const int q_lo = aq_lo - dq_lo, q_hi = aq_hi - dq_hi;
  const int p_lo = ap_lo - dp_lo, p_hi = ap_hi - dp_hi;
  if (q_lo > q_hi || p_lo > p_hi) return std::nullopt;

  const Term& lead = d.terms_.front();
  LaurentPoly rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& r = rem.terms_.front();
    const Exponent m = r.exp - lead.exp;
    if (m.q < q_lo || m.q > q_hi || m.p < p_lo || m.p > p_hi) return std::nullopt;
    Rational c = r.coeff / lead.coeff;
    rem.add_scaled(d.shifted(m), -c);
    quot.push_back({m, std::move(c)});
  }
  return LaurentPoly::from_terms(std::move(quot));
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& d) const {
  auto r = try_div(d);
  if (!r) throw DivisionError("inexact division: (" + to_string() + ") / (" + d.to_string() + ")");
  return *r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.sign() < 0;
    const Rational mag = negative ? -t.coeff : t.coeff;
    std::string mono;
    auto factor = [&mono](char var, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += var;
      if (e != 1) mono += '^' + std::to_string(e);
    };
    factor('q', t.exp.q);
    factor('p', t.exp.p);
    std::string body;
    if (mono.empty()) {
      body = mag.to_string();
    } else if (mag.is_one()) {
      body = mono;
    } else {
      body = mag.to_string() + '*' + mono;
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
    first = false;
  }
  return out;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const Term& x, const Term& y) {
        if (x.exp != y.exp) return x.exp > y.exp;
        return x.coeff < y.coeff;
      });
}

std::string LaurentFraction::to_string() const {
  if (den.is_one()) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

// ------------------------------------------------------------- CoeffMatrix

CoeffMatrix::CoeffMatrix(std::size_t cols, std::vector<CoeffVector> rows) : cols_(cols) {
  for (auto& r : rows) add_row(std::move(r));
}

void CoeffMatrix::add_row(CoeffVector row) {
  if (row.size() != cols_) throw std::invalid_argument("CoeffMatrix: row length mismatch");
  rows_.push_back(std::move(row));
}

CoeffMatrix CoeffMatrix::transposed() const {
  std::vector<CoeffVector> t(cols_, CoeffVector(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t[j][i] = rows_[i][j];
  return CoeffMatrix(rows_.size(), std::move(t));
}

// ------------------------------------------------------------- elimination

namespace {

LaurentPoly divide_by(const LaurentPoly& x, const LaurentPoly& prev) {
  if (prev.is_one() || x.is_zero()) return x;
  return x.exact_div(prev);
}

}  // namespace

Echelon eliminate(std::vector<CoeffVector> rows, std::size_t cols, std::size_t pivot_limit) {
  Echelon out;
  LaurentPoly prev = 1;
  std::size_t r = 0;
  const std::size_t n = rows.size();
  for (std::size_t col = 0; col < pivot_limit && r < n; ++col) {
    std::size_t best = n;
    for (std::size_t i = r; i < n; ++i) {
      if (rows[i][col].is_zero()) continue;
      if (best == n || rows[i][col].size() < rows[best][col].size()) best = i;
    }
    if (best == n) continue;
    std::swap(rows[r], rows[best]);
    const LaurentPoly piv = rows[r][col];
    const CoeffVector& prow = rows[r];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      CoeffVector& row = rows[i];
      const LaurentPoly factor = row[col];
      if (factor.is_zero() && piv == prev) continue;  // the update is the identity
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == col) continue;
        LaurentPoly v = piv * row[j];
        if (!factor.is_zero() && !prow[j].is_zero()) v -= factor * prow[j];
        row[j] = divide_by(v, prev);
      }
      row[col] = LaurentPoly{};
    }
    out.pivot_cols.push_back(col);
    prev = piv;
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  out.pivot = prev;
  return out;
}

std::vector<std::optional<SpanCoordinates>> solve_in_span_multi(
    const std::vector<CoeffVector>& targets, const CoeffMatrix& span) {
  const std::size_t dim = span.cols();
  const std::size_t n = span.rows();
  for (const auto& t : targets)
    if (t.size() != dim) throw std::invalid_argument("solve_in_span: target length mismatch");

  // Unknowns are the span rows; equations are the ambient columns.
  std::vector<CoeffVector> system(dim, CoeffVector(n + targets.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t w = 0; w < dim; ++w) system[w][i] = span.row(i)[w];
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (std::size_t w = 0; w < dim; ++w) system[w][n + t] = targets[t][w];

  // Inconsistent targets are caught by the back-substitution check below.
  Echelon e = eliminate(system, n + targets.size(), n);
  std::vector<std::optional<SpanCoordinates>> result;
  result.reserve(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    SpanCoordinates c;
    c.num.assign(n, LaurentPoly{});
    c.den = e.pivot;
    for (std::size_t k = 0; k < e.rank(); ++k) c.num[e.pivot_cols[k]] = e.rows[k][n + t];

    // Back-substitution check: sum num_i row_i == den * target.
    bool ok = true;
    for (std::size_t w = 0; w < dim && ok; ++w) {
      LaurentPoly acc;
      for (std::size_t i = 0; i < n; ++i)
        if (!c.num[i].is_zero() && !span.row(i)[w].is_zero()) acc += c.num[i] * span.row(i)[w];
      ok = acc == c.den * targets[t][w];
    }
    if (!ok) {
      result.emplace_back(std::nullopt);
      continue;
    }
    // Drop the common denominator when it divides every numerator.
    if (!c.den.is_one()) {
      std::vector<LaurentPoly> reduced;
      reduced.reserve(n);
      bool all = true;
      for (const auto& x : c.num) {
        auto d = x.try_div(c.den);
        if (!d) {
          all = false;
          break;
        }
        reduced.push_back(std::move(*d));
      }
      if (all) {
        c.num = std::move(reduced);
        c.den = 1;
      }
    }
    result.emplace_back(std::move(c));
  }
  return result;
}

std::optional<SpanCoordinates> solve_in_span(const CoeffVector& target, const CoeffMatrix& span) {
  return solve_in_span_multi({target}, span).front();
}

// ------------------------------------------------------------- cyclotomics

const LaurentPoly& cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: order must be positive");
  static std::mutex mu;
  static std::deque<LaurentPoly> cache{LaurentPoly{}};  // index 0 unused
  std::lock_guard lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    LaurentPoly f = LaurentPoly::q(m) - LaurentPoly(1);
    for (int d = 1; d < m; ++d)
      if (m % d == 0) f = f.exact_div(cache[d]);
    cache.push_back(std::move(f));
  }
  return cache[n];
}

std::set<int> vanishing_orders(const LaurentPoly& a, int t_max) {
  if (a.is_zero()) throw std::invalid_argument("vanishing_orders: zero polynomial vanishes everywhere");
  if (a.involves_p()) throw std::invalid_argument("vanishing_orders: polynomial involves p");
  if (t_max < 1) throw std::invalid_argument("vanishing_orders: t_max must be >= 1");
  const LaurentPoly f = a.shifted({-a.trailing().exp.q, 0});
  std::set<int> out;
  for (int t = 1; t <= t_max; ++t)
    if (f.try_div(cyclotomic(t))) out.insert(t);
  return out;
}

// ------------------------------------------------------------ CycloFraction

CycloFraction::CycloFraction(LaurentPoly num) : num_(std::move(num)) {}

CycloFraction::CycloFraction(LaurentPoly num, CycloDen den) : num_(std::move(num)), den_(std::move(den)) {
  reduce();
}

void CycloFraction::reduce() {
  std::erase_if(den_, [](const auto& kv) { return kv.second <= 0; });
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    const LaurentPoly& phi = cyclotomic(it->first);
    while (it->second > 0) {
      auto d = num_.try_div(phi);
      if (!d) break;
      num_ = std::move(*d);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

std::optional<CycloFraction> CycloFraction::from_quotient(const LaurentPoly& num, const LaurentPoly& den) {
  auto f = cyclotomic_factorization(den);
  if (!f) return std::nullopt;
  return CycloFraction(num.exact_div(f->first), f->second);
}

LaurentPoly CycloFraction::den_poly() const {
  LaurentPoly d = 1;
  for (const auto& [n, k] : den_) d *= cyclotomic(n).pow(k);
  return d;
}

std::string CycloFraction::to_string() const {
  if (den_.empty()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_poly().to_string() + ")";
}

CycloFraction CycloFraction::operator-() const {
  CycloFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

CycloFraction& CycloFraction::operator+=(const CycloFraction& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.empty()) reduce();
    return *this;
  }
  CycloDen common = den_;
  for (const auto& [n, k] : o.den_) common[n] = std::max(common[n], k);
  auto lift = [&common](const CycloFraction& f) {
    LaurentPoly x = f.num_;
    for (const auto& [n, k] : common) {
      auto it = f.den_.find(n);
      const int have = it == f.den_.end() ? 0 : it->second;
      if (k > have) x *= cyclotomic(n).pow(k - have);
    }
    return x;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(common);
  reduce();
  return *this;
}

CycloFraction& CycloFraction::operator-=(const CycloFraction& o) { return *this += -o; }

CycloFraction& CycloFraction::operator*=(const CycloFraction& o) {
  num_ *= o.num_;
  if (o.den_.empty() && den_.empty()) return *this;
  for (const auto& [n, k] : o.den_) den_[n] += k;
  reduce();
  return *this;
}

std::optional<std::pair<LaurentPoly, CycloDen>> cyclotomic_factorization(const LaurentPoly& a) {
  if (a.is_zero()) return std::nullopt;
  const Term& t = a.trailing();
  LaurentPoly rest = a.shifted(Exponent{} - t.exp);
  if (rest.involves_p()) return std::nullopt;
  CycloDen den;
  for (int n = 1; rest.size() > 1; ++n) {
    const int deg = rest.leading().exp.q;
    // phi(n) >= sqrt(n / 2), so no cyclotomic factor of degree <= deg lies beyond 2 deg^2.
    if (n > 2 * deg * deg + 2) return std::nullopt;
    while (true) {
      auto d = rest.try_div(cyclotomic(n));
      if (!d) break;
      rest = std::move(*d);
      ++den[n];
    }
  }
  return std::pair{rest.shifted(t.exp), den};
}

// ---------------------------------------------------------------- QFraction

namespace {

using Dense = QFraction::Dense;

void trim(Dense& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by b (b non-zero).
std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
  if (a.size() < b.size()) return {{}, std::move(a)};
  Dense quo(a.size() - b.size() + 1);
  const mpq_class& lead = b.back();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpq_class c = a[k + b.size() - 1] / lead;
    quo[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(quo);
  return {std::move(quo), std::move(a)};
}

void make_monic(Dense& a) {
  if (a.empty()) return;
  const mpq_class lead = a.back();
  if (lead == 1) return;
  for (auto& c : a) c /= lead;
}

Dense dense_gcd(Dense a, Dense b) {
  while (!b.empty()) {
    Dense r = dense_divmod(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

Dense dense_exact(const Dense& a, const Dense& b) { return dense_divmod(a, b).first; }

bool is_constant_one(const Dense& a) { return a.size() == 1 && a[0] == 1; }

}  // namespace

QFraction::QFraction(long c) {
  if (c != 0) num_.push_back(mpq_class(c));
}

QFraction QFraction::from_poly(const LaurentPoly& a) {
  QFraction r;
  if (a.is_zero()) return r;
  if (a.involves_p()) throw std::invalid_argument("QFraction: polynomial involves p");
  const int lo = a.trailing().exp.q;
  r.shift_ = lo;
  r.num_.assign(static_cast<std::size_t>(a.leading().exp.q - lo + 1), mpq_class(0));
  for (const auto& t : a.terms()) r.num_[static_cast<std::size_t>(t.exp.q - lo)] = t.coeff.raw();
  return r;
}

bool QFraction::is_one() const { return shift_ == 0 && is_constant_one(num_) && is_constant_one(den_); }

std::size_t QFraction::size() const { return num_.size() + den_.size(); }

LaurentPoly QFraction::numerator() const {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) ts.push_back({{shift_ + static_cast<int>(i), 0}, Rational(num_[i])});
  return LaurentPoly::from_terms(std::move(ts));
}

LaurentPoly QFraction::denominator() const {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (sgn(den_[i]) != 0) ts.push_back({{static_cast<int>(i), 0}, Rational(den_[i])});
  return LaurentPoly::from_terms(std::move(ts));
}

void QFraction::normalize() {
  trim(num_);
  if (num_.empty()) {
    shift_ = 0;
    den_ = {mpq_class(1)};
    return;
  }
  std::size_t z = 0;
  while (sgn(num_[z]) == 0) ++z;
  if (z > 0) {
    num_.erase(num_.begin(), num_.begin() + static_cast<long>(z));
    shift_ += static_cast<int>(z);
  }
  if (!is_constant_one(den_)) {
    Dense g = dense_gcd(num_, den_);
    if (g.size() > 1) {
      num_ = dense_exact(num_, g);
      den_ = dense_exact(den_, g);
    }
    const mpq_class lead = den_.back();
    if (lead != 1) {
      for (auto& c : den_) c /= lead;
      for (auto& c : num_) c /= lead;
    }
  }
}

QFraction QFraction::operator-() const {
  QFraction r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

QFraction& QFraction::operator+=(const QFraction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int s = std::min(shift_, o.shift_);
  auto lift = [s](const QFraction& f, const Dense& other_den) {
    Dense x = dense_mul(f.num_, other_den);
    x.insert(x.begin(), static_cast<std::size_t>(f.shift_ - s), mpq_class(0));
    return x;
  };
  Dense a, b, den;
  if (den_ == o.den_) {
    a = lift(*this, {mpq_class(1)});
    b = lift(o, {mpq_class(1)});
    den = den_;
  } else {
    a = lift(*this, o.den_);
    b = lift(o, den_);
    den = dense_mul(den_, o.den_);
  }
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  num_ = std::move(a);
  den_ = std::move(den);
  shift_ = s;
  normalize();
  return *this;
}

QFraction& QFraction::operator-=(const QFraction& o) { return *this += -o; }

QFraction& QFraction::operator*=(const QFraction& o) {
  if (is_zero() || o.is_zero()) return *this = QFraction();
  // Cross-cancel before multiplying.
  Dense n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
  if (!is_constant_one(d2)) {
    Dense g = dense_gcd(n1, d2);
    if (g.size() > 1) {
      n1 = dense_exact(n1, g);
      d2 = dense_exact(d2, g);
    }
  }
  if (!is_constant_one(d1)) {
    Dense g = dense_gcd(n2, d1);
    if (g.size() > 1) {
      n2 = dense_exact(n2, g);
      d1 = dense_exact(d1, g);
    }
  }
  num_ = dense_mul(n1, n2);
  den_ = dense_mul(d1, d2);
  shift_ += o.shift_;
  const mpq_class lead = den_.back();
  if (lead != 1) {
    for (auto& c : den_) c /= lead;
    for (auto& c : num_) c /= lead;
  }
  return *this;
}

QFraction& QFraction::operator/=(const QFraction& o) {
  if (o.is_zero()) throw std::domain_error("QFraction: division by zero");
  QFraction inv;
  inv.shift_ = -o.shift_;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  const mpq_class lead = inv.den_.back();
  for (auto& c : inv.den_) c /= lead;
  for (auto& c : inv.num_) c /= lead;
  return *this *= inv;
}

QEchelon eliminate_field(std::vector<QVector> rows, std::size_t cols, std::size_t pivot_limit) {
  QEchelon out;
  const std::size_t n = rows.size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < pivot_limit && r < n; ++col) {
    std::size_t best = n;
    for (std::size_t i = r; i < n; ++i) {
      if (rows[i][col].is_zero()) continue;
      if (best == n || rows[i][col].size() < rows[best][col].size()) best = i;
    }
    if (best == n) continue;
    std::swap(rows[r], rows[best]);
    QVector& prow = rows[r];
    if (!prow[col].is_one()) {
      const QFraction inv = QFraction(1) / prow[col];
      for (std::size_t j = 0; j < cols; ++j)
        if (!prow[j].is_zero()) prow[j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const QFraction f = rows[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        if (!prow[j].is_zero()) rows[i][j] -= f * prow[j];
    }
    out.pivot_cols.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

}  // namespace skewpbw
