#include "skewpbw/pbwengine.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "skewpbw/exprparse.hpp"

namespace skewpbw {

std::string side_name(Side s) { return s == Side::Positive ? "positive" : "negative"; }

const CartanConfig& CartanConfig::g2() {
  static const CartanConfig c;
  return c;
}

Degree side_degree(const Word& w) {
  Degree d{0, 0};
  for (Letter l : w) ++d[letter_index(l)];
  return d;
}

// -------------------------------------------------------------- generators

namespace {

struct GenData {
  char id;
  const char* expr;
  Degree degree;
  const char* height;
};

constexpr const char* kHeightT = "t";
constexpr const char* kHeightT3 = "t if 3 does not divide t, else t/3";

const std::array<GenData, kPbwCount> kGens = {{
    {'F', "x2", {0, 1}, kHeightT},
    {'E', "[[[x1,x2],x2],x2]", {1, 3}, kHeightT3},
    {'D', "[[x1,x2],x2]", {1, 2}, kHeightT},
    {'C', "[[x1,x2],[[x1,x2],x2]]", {2, 3}, kHeightT3},
    {'B', "[x1,x2]", {1, 1}, kHeightT},
    {'A', "x1", {1, 0}, kHeightT3},
}};

std::vector<PbwGen> make_generators(Side s) {
  std::vector<PbwGen> out;
  for (const auto& g : kGens) {
    const std::string e = s == Side::Positive ? g.expr : mirror_expr(g.expr);
    out.push_back({g.id, s, e, parse(e), g.degree, g.height});
  }
  return out;
}

}  // namespace

const std::vector<PbwGen>& pbw_generators(Side s) {
  static const std::vector<PbwGen> pos = make_generators(Side::Positive);
  static const std::vector<PbwGen> neg = make_generators(Side::Negative);
  return s == Side::Positive ? pos : neg;
}

Degree pbw_degree(const PbwExps& e) {
  Degree d{0, 0};
  for (int k = 0; k < kPbwCount; ++k) {
    d[0] += e[k] * kGens[k].degree[0];
    d[1] += e[k] * kGens[k].degree[1];
  }
  return d;
}

std::vector<PbwExps> pbw_monomials(const Degree& d) {
  std::vector<PbwExps> out;
  if (d[0] < 0 || d[1] < 0) return out;
  PbwExps cur{};
  std::function<void(int, int, int)> rec = [&](int k, int r0, int r1) {
    if (k == kPbwCount) {
      if (r0 == 0 && r1 == 0) out.push_back(cur);
      return;
    }
    const Degree g = kGens[k].degree;
    for (int n = 0; n * g[0] <= r0 && n * g[1] <= r1; ++n) {
      cur[k] = n;
      rec(k + 1, r0 - n * g[0], r1 - n * g[1]);
    }
    cur[k] = 0;
  };
  rec(0, d[0], d[1]);
  return out;
}

std::string pbw_to_string(Side s, const PbwExps& e) {
  std::string out;
  const auto& gens = pbw_generators(s);
  for (int k = 0; k < kPbwCount; ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += gens[k].expr;
    if (e[k] != 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

std::vector<std::string> serre_exprs(Side s) {
  std::vector<std::string> v = {"[[[[x1,x2],x2],x2],x2]", "[x1,[x1,x2]]"};
  if (s == Side::Negative)
    for (auto& e : v) e = mirror_expr(e);
  return v;
}

Element serre_element(Side s, int k) { return parse(serre_exprs(s).at(k)); }

// ----------------------------------------------------------- triangular form

void TriangularForm::add_term(const TriKey& k, const CycloFraction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TriangularForm& TriangularForm::operator+=(const TriangularForm& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TriangularForm& TriangularForm::operator*=(const CycloFraction& c) {
  if (c.is_zero()) terms_.clear();
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

TriangularForm operator-(TriangularForm a, const TriangularForm& b) {
  for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
  return a;
}

nlohmann::json TriangularForm::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, c] : terms_)
    out.push_back({{"group", k.grp}, {"neg", k.neg}, {"pos", k.pos}, {"coeff", c.to_string()}});
  return out;
}

std::string format_triangular(const TriangularForm& t) {
  std::vector<std::string> parts;
  for (const auto& [k, c] : t.terms()) {
    std::string mono;
    auto add = [&mono](const std::string& s) {
      if (s.empty()) return;
      if (!mono.empty()) mono += ' ';
      mono += s;
    };
    if (k.grp != GroupWord{}) add(to_string(Monomial(k.grp, {})));
    add(pbw_to_string(Side::Negative, k.neg));
    add(pbw_to_string(Side::Positive, k.pos));
    parts.push_back(format_term(c, mono));
  }
  return join_terms(parts);
}

// ---------------------------------------------------------------- components

struct PbwEngine::Component {
  Side side;
  Degree deg;
  std::vector<Word> words;
  std::map<Word, std::size_t> index;
  std::vector<CoeffVector> ideal_rows;
  std::vector<PbwExps> pbw;
  std::size_t rank_ideal = 0;
  bool ok = false;
  std::string detail;
  std::vector<std::vector<CycloFraction>> coords;  // coords[word][pbw monomial]
};

namespace {

std::vector<Word> component_words(Side s, const Degree& d) {
  const Letter l0 = s == Side::Positive ? Letter::X1 : Letter::X1N;
  const Letter l1 = s == Side::Positive ? Letter::X2 : Letter::X2N;
  std::vector<Word> out;
  Word cur;
  std::function<void(int, int)> rec = [&](int a, int b) {
    if (a == 0 && b == 0) {
      out.push_back(cur);
      return;
    }
    if (a > 0) {
      cur.push_back(l0);
      rec(a - 1, b);
      cur.pop_back();
    }
    if (b > 0) {
      cur.push_back(l1);
      rec(a, b - 1);
      cur.pop_back();
    }
  };
  rec(d[0], d[1]);
  return out;
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

CoeffVector word_vector(const Element& a, const std::map<Word, std::size_t>& index) {
  CoeffVector v(index.size());
  for (const auto& [m, c] : a.terms()) {
    auto it = index.find(m.word);
    if (m.grp != GroupWord{} || it == index.end())
      throw std::invalid_argument("element does not lie in the requested Borel component");
    v[it->second] += c;
  }
  return v;
}

// Occurrences of letter 2 before letter 1.  The coefficient of a word w in
// any bracket polynomial is p^inversions(w) times a Laurent polynomial in q
// (up to one factor common to the whole element), because the p-part of
// pairing(u, v) is n1(u) n2(v) - n2(u) n1(v).
int inversions(const Word& w) {
  int seen2 = 0, inv = 0;
  for (Letter l : w) {
    if (letter_index(l) == 1) {
      ++seen2;
    } else {
      inv += seen2;
    }
  }
  return inv;
}

// Row entries times p^-phi(w), then divided by a common monomial when the
// row becomes free of p.  Returns the row and the monomial divided out.
std::pair<CoeffVector, Exponent> scale_row(const CoeffVector& row, const std::vector<int>& phi) {
  CoeffVector out(row.size());
  std::optional<int> common;
  bool uniform = true;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_zero()) continue;
    out[j] = row[j].shifted({0, -phi[j]});
    for (const auto& t : out[j].terms()) {
      if (common && *common != t.exp.p) uniform = false;
      common = t.exp.p;
    }
  }
  if (!uniform || !common || *common == 0) return {std::move(out), Exponent{}};
  for (auto& v : out)
    if (!v.is_zero()) v = v.shifted({0, -*common});
  return {std::move(out), Exponent{0, *common}};
}

}  // namespace

CoeffMatrix PbwEngine::serre_ideal_component(Side s, const Degree& d) {
  return CoeffMatrix(component(s, d)->words.size(), component(s, d)->ideal_rows);
}

ComponentReport PbwEngine::component_check(Side s, const Degree& d) {
  const auto c = component(s, d);
  return {s, d, c->words.size(), c->rank_ideal, c->pbw.size(), c->ok, c->detail};
}

std::shared_ptr<const PbwEngine::Component> PbwEngine::component(Side s, const Degree& d) {
  {
    std::lock_guard lock(comp_mu_);
    auto it = components_.find({s, d});
    if (it != components_.end()) return it->second;
  }
  auto built = build_component(s, d);
  std::lock_guard lock(comp_mu_);
  return components_.emplace(std::pair{s, d}, std::move(built)).first->second;
}

std::shared_ptr<const PbwEngine::Component> PbwEngine::build_component(Side s, const Degree& d) {
  if (d[0] < 0 || d[1] < 0) throw std::invalid_argument("negative multidegree");
  if (d[0] > caps_.max_deg[0] || d[1] > caps_.max_deg[1])
    throw CapExceeded("multidegree (" + std::to_string(d[0]) + "," + std::to_string(d[1]) +
                      ") exceeds the configured cap (" + std::to_string(caps_.max_deg[0]) + "," +
                      std::to_string(caps_.max_deg[1]) + ")");
  const std::size_t dim = binomial(d[0] + d[1], d[0]);
  if (dim > caps_.max_free_dim)
    throw CapExceeded("component dimension " + std::to_string(dim) + " exceeds the cap " +
                      std::to_string(caps_.max_free_dim));

  auto c = std::make_shared<Component>();
  c->side = s;
  c->deg = d;
  c->words = component_words(s, d);
  for (std::size_t i = 0; i < c->words.size(); ++i) c->index.emplace(c->words[i], i);

  // Ideal rows u * r * v, rescaled so that p drops out (see scale_row).
  for (int k = 0; k < 2; ++k) {
    const Element r = serre_element(s, k);
    const Constitution rc = *homogeneous_constitution(r);
    const Degree rd = s == Side::Positive ? Degree{rc[0], rc[1]} : Degree{rc[2], rc[3]};
    const Degree rest{d[0] - rd[0], d[1] - rd[1]};
    if (rest[0] < 0 || rest[1] < 0) continue;
    for (const Word& w : component_words(s, rest))
      for (std::size_t split = 0; split <= w.size(); ++split) {
        CoeffVector row(dim);
        for (const auto& [m, coeff] : r.terms()) {
          Word full(w.begin(), w.begin() + static_cast<long>(split));
          full.insert(full.end(), m.word.begin(), m.word.end());
          full.insert(full.end(), w.begin() + static_cast<long>(split), w.end());
          row[c->index.at(full)] += coeff;
        }
        c->ideal_rows.push_back(std::move(row));
      }
  }
  std::vector<int> phi(dim);
  for (std::size_t j = 0; j < dim; ++j) phi[j] = inversions(c->words[j]);
  auto to_field = [](const CoeffVector& row) {
    QVector out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_zero()) continue;
      if (row[j].involves_p()) throw InternalInconsistency("rescaled row still involves p");
      out[j] = QFraction::from_poly(row[j]);
    }
    return out;
  };
  std::vector<QVector> scaled;
  scaled.reserve(c->ideal_rows.size());
  for (const auto& row : c->ideal_rows) scaled.push_back(to_field(scale_row(row, phi).first));

  const QEchelon ideal = eliminate_field(std::move(scaled), dim, dim);
  c->rank_ideal = ideal.rank();
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t col : ideal.pivot_cols) is_pivot[col] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  c->pbw = pbw_monomials(d);
  const std::size_t n = c->pbw.size();
  if (free_cols.size() != n) {
    c->detail = "quotient dimension " + std::to_string(free_cols.size()) + " differs from " +
                std::to_string(n) + " PBW monomials";
    return c;
  }

  // rho(v) = v - sum_k v[c_k] * E_k restricted to the free columns.
  auto rho = [&](const QVector& v) {
    QVector out(n);
    for (std::size_t f = 0; f < n; ++f) out[f] = v[free_cols[f]];
    for (std::size_t k = 0; k < ideal.rank(); ++k) {
      const QFraction& a = v[ideal.pivot_cols[k]];
      if (a.is_zero()) continue;
      for (std::size_t f = 0; f < n; ++f) {
        const QFraction& e = ideal.rows[k][free_cols[f]];
        if (!e.is_zero()) out[f] -= a * e;
      }
    }
    return out;
  };

  // System P^T c = rho(e_w) for every word at once.  rho(e_w) is the free
  // part of e_w, or minus the free part of its reduction row.
  std::vector<QVector> system(n, QVector(n + dim));
  std::vector<Exponent> pbw_shift(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto [row, shift] = scale_row(word_vector(pbw_expansion(s, c->pbw[m]), c->index), phi);
    pbw_shift[m] = shift;
    const QVector r = rho(to_field(row));
    for (std::size_t f = 0; f < n; ++f) system[f][m] = r[f];
  }
  for (std::size_t f = 0; f < n; ++f) system[f][n + free_cols[f]] = 1;
  for (std::size_t k = 0; k < ideal.rank(); ++k)
    for (std::size_t f = 0; f < n; ++f)
      if (!ideal.rows[k][free_cols[f]].is_zero()) system[f][n + ideal.pivot_cols[k]] = -ideal.rows[k][free_cols[f]];
  const QEchelon sol = eliminate_field(std::move(system), n + dim, n);
  if (sol.rank() != n) {
    c->detail = "PBW monomials are dependent modulo the Serre ideal";
    return c;
  }
  c->coords.assign(dim, std::vector<CycloFraction>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = sol.pivot_cols[k];
    for (std::size_t w = 0; w < dim; ++w) {
      const QFraction& x = sol.rows[k][n + w];
      if (x.is_zero()) continue;
      const auto den = cyclotomic_factorization(x.denominator());
      if (!den) {
        c->detail = "PBW coordinates need a denominator outside the cyclotomic localization";
        c->coords.clear();
        return c;
      }
      // Undo the rescaling: c_m = c~_m p^(-phi(w)) / shift_m.
      const Exponent back = Exponent{0, -phi[w]} - pbw_shift[m];
      c->coords[w][m] = CycloFraction((x.numerator() * den->first.pow(-1)).shifted(back), den->second);
    }
  }
  c->ok = true;
  return c;
}

const Element& PbwEngine::pbw_expansion(Side s, const PbwExps& e) {
  {
    std::lock_guard lock(exp_mu_);
    auto it = expansions_.find({s, e});
    if (it != expansions_.end()) return it->second;
  }
  const auto& gens = pbw_generators(s);
  Element r(1);
  for (int k = 0; k < kPbwCount; ++k)
    for (int i = 0; i < e[k]; ++i) r = r * gens[k].expansion;
  std::lock_guard lock(exp_mu_);
  return expansions_.emplace(std::pair{s, e}, std::move(r)).first->second;
}

const std::map<PbwExps, CycloFraction>& PbwEngine::word_coords(Side s, const Word& w) {
  {
    std::lock_guard lock(coord_mu_);
    auto it = coord_memo_.find({s, w});
    if (it != coord_memo_.end()) return it->second;
  }
  const auto c = component(s, side_degree(w));
  if (!c->ok)
    throw InternalInconsistency(side_name(s) + " component (" + std::to_string(c->deg[0]) + "," +
                                std::to_string(c->deg[1]) + "): " + c->detail);
  std::map<PbwExps, CycloFraction> out;
  const auto& row = c->coords[c->index.at(w)];
  for (std::size_t k = 0; k < row.size(); ++k)
    if (!row[k].is_zero()) out.emplace(c->pbw[k], row[k]);
  std::lock_guard lock(coord_mu_);
  return coord_memo_.emplace(std::pair{s, w}, std::move(out)).first->second;
}

std::map<PbwExps, CycloFraction> PbwEngine::borel_coords(const Element& a, Side s) {
  std::map<PbwExps, CycloFraction> out;
  for (const auto& [m, c] : a.terms()) {
    if (m.grp != GroupWord{}) throw std::invalid_argument("borel_coords: element has group terms");
    for (Letter l : m.word)
      if (is_positive(l) != (s == Side::Positive))
        throw std::invalid_argument("borel_coords: element has letters of the other side");
    for (const auto& [e, v] : word_coords(s, m.word)) {
      auto& slot = out[e];
      slot += CycloFraction(c) * v;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// ------------------------------------------------------------ straightening

// x_i * w for a negative word w, with every negative letter moved left:
// x_i x_j- = p_ji x_j- x_i + delta_ij (1 - g_i f_i).
const Element& PbwEngine::push_positive(int i, const Word& neg) {
  {
    std::lock_guard lock(push_mu_);
    auto it = push_memo_.find({i, neg});
    if (it != push_memo_.end()) return it->second;
  }
  Element r;
  if (neg.empty()) {
    r = Element::letter(positive_letter(i));
  } else {
    const Letter y = neg.front();
    const int j = letter_index(y);
    const Word rest(neg.begin() + 1, neg.end());
    const Exponent pji = pairing(Monomial({}, {positive_letter(i)}), Monomial({}, {y}));
    r = LaurentPoly::monomial(pji.q, pji.p) * (Element::letter(y) * push_positive(i, rest));
    if (i == j) {
      GroupWord gf{};
      gf[i] = 1;
      gf[2 + i] = 1;
      r += Element(Monomial({}, rest));
      r -= Element(Monomial(gf, rest));
    }
  }
  std::lock_guard lock(push_mu_);
  return push_memo_.emplace(std::pair{i, neg}, std::move(r)).first->second;
}

const Element& PbwEngine::straighten_word(const Word& w) {
  {
    std::lock_guard lock(word_mu_);
    auto it = word_memo_.find(w);
    if (it != word_memo_.end()) return it->second;
  }
  Element r;
  if (w.empty()) {
    r = Element(1);
  } else {
    const Letter a = w.front();
    const Element& tail = straighten_word(Word(w.begin() + 1, w.end()));
    const Monomial am({}, {a});
    for (const auto& [m, c] : tail.terms()) {
      const Exponent s = ParameterTable::g2().eval(am.word, m.grp);
      const LaurentPoly cs = c.shifted(s);
      if (!is_positive(a)) {
        Word nw{a};
        nw.insert(nw.end(), m.word.begin(), m.word.end());
        r.add_term(Monomial(m.grp, std::move(nw)), cs);
        continue;
      }
      const auto split = std::find_if(m.word.begin(), m.word.end(), is_positive);
      const Word neg(m.word.begin(), split);
      const Word pos(split, m.word.end());
      for (const auto& [pm, pc] : push_positive(letter_index(a), neg).terms()) {
        Word nw = pm.word;
        nw.insert(nw.end(), pos.begin(), pos.end());
        r.add_term(Monomial(m.grp + pm.grp, std::move(nw)), cs * pc);
      }
    }
  }
  std::lock_guard lock(word_mu_);
  return word_memo_.emplace(w, std::move(r)).first->second;
}

Element PbwEngine::cross_straighten(const Element& a) {
  Element r;
  for (const auto& [m, c] : a.terms())
    for (const auto& [sm, sc] : straighten_word(m.word).terms())
      r.add_term(Monomial(m.grp + sm.grp, sm.word), c * sc);
  return r;
}

TriangularForm PbwEngine::triangular_nf(const Element& a) {
  const Element s = cross_straighten(a);
  TriangularForm out;
  for (const auto& [m, c] : s.terms()) {
    const auto split = std::find_if(m.word.begin(), m.word.end(), is_positive);
    const auto& cn = word_coords(Side::Negative, Word(m.word.begin(), split));
    const auto& cp = word_coords(Side::Positive, Word(split, m.word.end()));
    for (const auto& [en, vn] : cn) {
      const CycloFraction cv = CycloFraction(c) * vn;
      for (const auto& [ep, vp] : cp) out.add_term({m.grp, en, ep}, cv * vp);
    }
  }
  return out;
}

Element PbwEngine::expand(const TriangularForm& t) {
  Element r;
  for (const auto& [k, c] : t.terms()) {
    if (!c.is_polynomial())
      throw std::domain_error("expand: coefficient " + c.to_string() + " is not a Laurent polynomial");
    Element term = Element(Monomial(k.grp, {}), c.num()) * pbw_expansion(Side::Negative, k.neg);
    r += term * pbw_expansion(Side::Positive, k.pos);
  }
  return r;
}

PbwEngine& default_engine() {
  static PbwEngine engine;
  return engine;
}

}  // namespace skewpbw
