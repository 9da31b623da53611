#include "skewpbw/skewalg.hpp"

#include <algorithm>

namespace skewpbw {

std::string letter_name(Letter l) {
  switch (l) {
    case Letter::X1: return "x1";
    case Letter::X2: return "x2";
    case Letter::X1N: return "x1-";
    case Letter::X2N: return "x2-";
  }
  return "?";
}

GroupWord letter_group(Letter l) {
  GroupWord e{};
  e[static_cast<int>(l)] = 1;
  return e;
}

Constitution constitution(const Word& w) {
  Constitution c{};
  for (Letter l : w) ++c[static_cast<int>(l)];
  return c;
}

// ------------------------------------------------------------- parameters

ParameterTable ParameterTable::from_cartan(const std::array<std::array<int, 2>, 2>& cartan,
                                           const std::array<int, 2>& d) {
  if (d[0] * cartan[0][1] != d[1] * cartan[1][0])
    throw std::invalid_argument("Cartan data is not symmetrizable by d");
  // p[i][j] as exponents of (q, p).
  std::array<std::array<Exponent, 2>, 2> pij{};
  pij[0][0] = {d[0], 0};
  pij[1][1] = {d[1], 0};
  pij[0][1] = {0, 1};
  pij[1][0] = {d[0] * cartan[0][1], -1};
  ParameterTable t{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      t.chi[i][j] = pij[i][j];      // chi^i(g_j) = p_ij
      t.chi[i][2 + j] = pij[j][i];  // chi^i(f_j) = p_ji
    }
  return t;
}

const ParameterTable& ParameterTable::g2() {
  static const ParameterTable t = from_cartan({{{2, -1}, {-3, 2}}}, {3, 1});
  return t;
}

Exponent ParameterTable::eval(const Constitution& c, const GroupWord& e) const {
  const std::array<int, 2> a{c[0] - c[2], c[1] - c[3]};
  Exponent r;
  for (int i = 0; i < 2; ++i) {
    if (a[i] == 0) continue;
    for (int k = 0; k < 4; ++k) {
      r.q += a[i] * e[k] * chi[i][k].q;
      r.p += a[i] * e[k] * chi[i][k].p;
    }
  }
  return r;
}

Exponent ParameterTable::eval(const Word& w, const GroupWord& e) const {
  return eval(constitution(w), e);
}

// ---------------------------------------------------------------- ordering

namespace {

bool word_before(const Word& a, const Word& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return static_cast<int>(a[i]) < static_cast<int>(b[i]);
  return a.size() < b.size();
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const Constitution ca = constitution(a.word), cb = constitution(b.word);
  if (ca != cb) return ca > cb;
  if (a.grp != b.grp) return a.grp < b.grp;
  if (a.word == b.word) return false;
  return word_before(a.word, b.word);
}

bool MonomialPairOrder::operator()(const std::pair<Monomial, Monomial>& a,
                                   const std::pair<Monomial, Monomial>& b) const {
  MonomialOrder lt;
  if (lt(a.first, b.first)) return true;
  if (lt(b.first, a.first)) return false;
  return lt(a.second, b.second);
}

bool MonomialTripleOrder::operator()(const std::array<Monomial, 3>& a,
                                     const std::array<Monomial, 3>& b) const {
  MonomialOrder lt;
  for (int i = 0; i < 3; ++i) {
    if (lt(a[i], b[i])) return true;
    if (lt(b[i], a[i])) return false;
  }
  return false;
}

// ----------------------------------------------------------------- Element

Element::Element(const LaurentPoly& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Element::Element(const Monomial& m, LaurentPoly c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

bool Element::is_unit() const {
  return terms_.size() == 1 && terms_.begin()->first.word.empty() &&
         terms_.begin()->second.is_unit();
}

Element Element::inverse() const {
  if (!is_unit()) throw std::domain_error("element is not invertible");
  const auto& [m, c] = *terms_.begin();
  const GroupWord& e = m.grp;
  return Element(Monomial({-e[0], -e[1], -e[2], -e[3]}, {}), c.pow(-1));
}

void Element::add_term(const Monomial& m, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const LaurentPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

// ------------------------------------------------------------- products

Exponent pairing(const Monomial& m1, const Monomial& m2) {
  GroupWord target = m2.grp;
  for (Letter l : m2.word) target[static_cast<int>(l)] += 1;
  return ParameterTable::g2().eval(m1.word, target);
}

std::pair<Exponent, Monomial> mul(const Monomial& a, const Monomial& b) {
  Monomial m(a.grp + b.grp, a.word);
  m.word.insert(m.word.end(), b.word.begin(), b.word.end());
  const Exponent s = a.word.empty() ? Exponent{} : ParameterTable::g2().eval(a.word, b.grp);
  return {s, std::move(m)};
}

Element mul(const Element& a, const Element& b) {
  Element r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto [s, m] = mul(ma, mb);
      r.add_term(m, (ca * cb).shifted(s));
    }
  return r;
}

Element operator*(const Element& a, const Element& b) { return mul(a, b); }

Element pow(const Element& a, int n) {
  if (n < 0) return pow(a.inverse(), -n);
  Element r(1);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

Element bracket(const Element& a, const Element& b) {
  Element r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const LaurentPoly c = ca * cb;
      auto [s1, ab] = mul(ma, mb);
      auto [s2, ba] = mul(mb, ma);
      r.add_term(ab, c.shifted(s1));
      r.add_term(ba, c.shifted(s2 + pairing(ma, mb), -1));
    }
  return r;
}

Element mirror(const Element& a) {
  Element r;
  for (const auto& [m, c] : a.terms()) {
    Monomial n = m;
    for (Letter& l : n.word) l = mirror(l);
    r.add_term(n, c);
  }
  return r;
}

std::optional<Constitution> homogeneous_constitution(const Element& a) {
  std::optional<Constitution> c;
  for (const auto& [m, v] : a.terms()) {
    const Constitution k = constitution(m.word);
    if (c && *c != k) return std::nullopt;
    c = k;
  }
  return c;
}

std::optional<Degree> gamma_degree(const Element& a) {
  std::optional<Degree> d;
  for (const auto& [m, v] : a.terms()) {
    const Degree k = gamma_degree(constitution(m.word));
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

// ----------------------------------------------------------------- tensors

void TensorElement::add_term(const Monomial& l, const Monomial& r, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({l, r}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  TensorElement r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      auto [s1, l] = mul(ka.first, kb.first);
      auto [s2, rr] = mul(ka.second, kb.second);
      r.add_term(l, rr, (ca * cb).shifted(s1 + s2));
    }
  return r;
}

TensorElement tensor(const Element& a, const Element& b) {
  TensorElement r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma, mb, ca * cb);
  return r;
}

namespace {

TensorElement coproduct(const Monomial& m) {
  TensorElement r;
  r.add_term(Monomial(m.grp, {}), Monomial(m.grp, {}), 1);
  for (Letter l : m.word) {
    TensorElement d;
    d.add_term(Monomial({}, {l}), Monomial(), 1);
    d.add_term(Monomial(letter_group(l), {}), Monomial({}, {l}), 1);
    r = r * d;
  }
  return r;
}

}  // namespace

TensorElement coproduct(const Element& a) {
  TensorElement r;
  for (const auto& [m, c] : a.terms()) {
    const TensorElement d = coproduct(m);
    for (const auto& [k, v] : d.terms()) r.add_term(k.first, k.second, v * c);
  }
  return r;
}

TripleTensor coproduct_left(const TensorElement& t) {
  TripleTensor r;
  for (const auto& [k, c] : t.terms()) {
    const TensorElement d = coproduct(k.first);
    for (const auto& [kk, v] : d.terms()) {
      auto& slot = r[{kk.first, kk.second, k.second}];
      slot += v * c;
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

TripleTensor coproduct_right(const TensorElement& t) {
  TripleTensor r;
  for (const auto& [k, c] : t.terms()) {
    const TensorElement d = coproduct(k.second);
    for (const auto& [kk, v] : d.terms()) {
      auto& slot = r[{k.first, kk.first, kk.second}];
      slot += v * c;
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

LaurentPoly counit(const Element& a) {
  LaurentPoly r;
  for (const auto& [m, c] : a.terms())
    if (m.word.empty()) r += c;
  return r;
}

Element counit_left(const TensorElement& t) {
  Element r;
  for (const auto& [k, c] : t.terms())
    if (k.first.word.empty()) r.add_term(k.second, c);
  return r;
}

Element counit_right(const TensorElement& t) {
  Element r;
  for (const auto& [k, c] : t.terms())
    if (k.second.word.empty()) r.add_term(k.first, c);
  return r;
}

std::string to_string(const Monomial& m) {
  static const char* names[4] = {"g1", "g2", "f1", "f2"};
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += ' ';
  };
  for (int k = 0; k < 4; ++k) {
    if (m.grp[k] == 0) continue;
    sep();
    out += names[k];
    if (m.grp[k] != 1) out += '^' + std::to_string(m.grp[k]);
  }
  for (Letter l : m.word) {
    sep();
    out += letter_name(l);
  }
  return out.empty() ? "1" : out;
}

}  // namespace skewpbw
