#include "skewpbw/coideal.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "skewpbw/exprparse.hpp"

namespace skewpbw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    rows.push_back(split(t, '|'));
  }
  return rows;
}

// "U4+" -> (Positive, 4)
std::pair<Side, int> parse_id(const std::string& id) {
  if (id.size() < 3 || id[0] != 'U' || (id.back() != '+' && id.back() != '-'))
    throw std::runtime_error("bad subalgebra id " + id);
  const int k = std::stoi(id.substr(1, id.size() - 2));
  if (k < 1 || k > kBorelCount) throw std::runtime_error("bad subalgebra id " + id);
  return {id.back() == '+' ? Side::Positive : Side::Negative, k};
}

Degree add(const Degree& a, const Degree& b) { return {a[0] + b[0], a[1] + b[1]}; }
bool le(const Degree& a, const Degree& b) { return a[0] <= b[0] && a[1] <= b[1]; }

LaurentPoly den_lcm(const std::vector<const CycloFraction*>& xs) {
  CycloDen lcm;
  for (const auto* x : xs)
    for (const auto& [n, k] : x->den()) lcm[n] = std::max(lcm[n], k);
  LaurentPoly d = 1;
  for (const auto& [n, k] : lcm) d *= cyclotomic(n).pow(k);
  return d;
}

LaurentPoly times(const CycloFraction& c, const LaurentPoly& d) {
  const CycloFraction r = c * CycloFraction(d);
  if (!r.is_polynomial()) throw std::logic_error("denominator clearing failed");
  return r.num();
}

// Clears denominators of each vector by its own lcm; returns the multipliers.
std::vector<LaurentPoly> clear_rows(const std::vector<std::vector<CycloFraction>>& in,
                                    std::vector<CoeffVector>& out) {
  std::vector<LaurentPoly> mult;
  out.clear();
  for (const auto& row : in) {
    std::vector<const CycloFraction*> ptrs;
    for (const auto& c : row) ptrs.push_back(&c);
    const LaurentPoly d = den_lcm(ptrs);
    CoeffVector v;
    v.reserve(row.size());
    for (const auto& c : row) v.push_back(c.is_zero() ? LaurentPoly{} : times(c, d));
    out.push_back(std::move(v));
    mult.push_back(d);
  }
  return mult;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string degree_string(const Degree& d) {
  return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")";
}

// Strips a common p-power; nullopt when p enters non-monomially.
std::optional<LaurentPoly> strip_p(const LaurentPoly& a) {
  if (a.is_zero()) return a;
  const int e = a.terms().front().exp.p;
  for (const auto& t : a.terms())
    if (t.exp.p != e) return std::nullopt;
  return a.shifted({0, -e});
}

}  // namespace

std::string golden_dir() {
  if (const char* env = std::getenv("SKEWPBW_GOLDEN_DIR"); env && *env) return env;
  return SKEWPBW_DEFAULT_GOLDEN_DIR;
}

std::string SubalgebraSpec::id() const {
  return "U" + std::to_string(index) + (side == Side::Positive ? "+" : "-");
}

Catalog Catalog::load(const std::string& path) {
  Catalog c;
  std::array<std::array<bool, kBorelCount>, 2> seen{};
  for (const auto& row : read_table(path)) {
    if (row.size() != 3) throw std::runtime_error("subalgebra line needs 3 fields: " + row.front());
    const auto [side, k] = parse_id(row[0]);
    SubalgebraSpec& s = c.specs_[side == Side::Positive ? 0 : 1][k - 1];
    s.side = side;
    s.index = k;
    s.label = row[1];
    if (!row[2].empty())
      for (const auto& g : split(row[2], ';')) {
        Element e = parse(g);
        if (e.is_zero()) throw std::runtime_error("zero generator in " + row[0]);
        const Word& w = e.terms().begin()->first.word;
        for (Letter l : w)
          if (is_positive(l) != (side == Side::Positive))
            throw std::runtime_error("generator on the wrong side in " + row[0]);
        s.generators.push_back(g);
        s.degrees.push_back(side_degree(w));
        s.expansions.push_back(std::move(e));
      }
    seen[side == Side::Positive ? 0 : 1][k - 1] = true;
  }
  for (const auto& side : seen)
    for (bool b : side)
      if (!b) throw std::runtime_error("subalgebra catalog incomplete: " + path);
  return c;
}

const SubalgebraSpec& Catalog::get(Side s, int index) const {
  if (index < 1 || index > kBorelCount) throw std::out_of_range("subalgebra index " + std::to_string(index));
  return specs_[s == Side::Positive ? 0 : 1][index - 1];
}

const Catalog& default_catalog() {
  static const Catalog c = Catalog::load(golden_dir() + "/subalgebras.txt");
  return c;
}

std::vector<Element> t_monomials(const SubalgebraSpec& spec, const Degree& d, const Caps& caps) {
  if (!le(d, caps.max_deg))
    throw CapExceeded("degree " + degree_string(d) + " exceeds cap " + degree_string(caps.max_deg));
  std::vector<Element> out;
  const std::size_t n = spec.generators.size();
  std::function<void(std::size_t, Degree, Element)> rec = [&](std::size_t k, Degree acc, Element prod) {
    if (acc == d) {
      out.push_back(std::move(prod));
      return;
    }
    if (k == n) return;
    rec(k + 1, acc, prod);
    for (;;) {
      acc = add(acc, spec.degrees[k]);
      if (!le(acc, d)) break;
      prod = prod * spec.expansions[k];
      rec(k + 1, acc, prod);
    }
  };
  rec(0, {0, 0}, Element(1));
  return out;
}

std::string to_string(const BlockKey& k) {
  std::string g = to_string(Monomial(k.grp, {}));
  if (g.empty()) g = "1";
  return "group " + g + ", negative degree " + degree_string(k.neg) + ", positive degree " + degree_string(k.pos);
}

// ---------------------------------------------------------------- membership

const CoidealEngine::Coords& CoidealEngine::t_coords(const SubalgebraSpec& spec, const Degree& d) {
  const auto key = std::make_tuple(spec.side, spec.index, d);
  {
    std::lock_guard lock(mu_);
    if (auto it = t_coords_.find(key); it != t_coords_.end()) return it->second;
  }
  Coords c;
  for (const auto& m : t_monomials(spec, d, engine_.caps())) c.push_back(engine_.borel_coords(m, spec.side));
  std::lock_guard lock(mu_);
  return t_coords_.emplace(key, std::move(c)).first->second;
}

MembershipResult CoidealEngine::member(const TriangularForm& z, const SubalgebraSpec& neg,
                                       const SubalgebraSpec& pos) {
  if (neg.side != Side::Negative || pos.side != Side::Positive)
    throw std::invalid_argument("member: expected a negative and a positive subalgebra");
  std::map<BlockKey, std::vector<std::pair<TriKey, const CycloFraction*>>> blocks;
  for (const auto& [k, c] : z.terms())
    blocks[BlockKey{k.grp, pbw_degree(k.neg), pbw_degree(k.pos)}].emplace_back(k, &c);

  MembershipResult res;
  for (const auto& [bk, terms] : blocks) {
    const Coords& cn = t_coords(neg, bk.neg);
    const Coords& cp = t_coords(pos, bk.pos);
    std::map<std::pair<PbwExps, PbwExps>, std::size_t> cols;
    for (const auto& [k, c] : terms) cols.emplace(std::make_pair(k.neg, k.pos), 0);
    for (const auto& a : cn)
      for (const auto& b : cp)
        for (const auto& [ea, ca] : a)
          for (const auto& [eb, cb] : b) cols.emplace(std::make_pair(ea, eb), 0);
    std::size_t idx = 0;
    for (auto& [key, i] : cols) i = idx++;

    std::vector<std::vector<CycloFraction>> span_rows;
    for (const auto& a : cn)
      for (const auto& b : cp) {
        std::vector<CycloFraction> row(cols.size());
        for (const auto& [ea, ca] : a)
          for (const auto& [eb, cb] : b) row[cols.at({ea, eb})] += ca * cb;
        span_rows.push_back(std::move(row));
      }
    std::vector<std::vector<CycloFraction>> target(1, std::vector<CycloFraction>(cols.size()));
    for (const auto& [k, c] : terms) target[0][cols.at({k.neg, k.pos})] = *c;

    std::vector<CoeffVector> rows, trow;
    clear_rows(span_rows, rows);
    clear_rows(target, trow);
    std::optional<SpanCoordinates> sol;
    if (!rows.empty()) sol = solve_in_span(trow[0], CoeffMatrix(cols.size(), rows));
    if (!sol) {
      res.member = false;
      res.failing = bk;
      return res;
    }
    res.certificates.emplace(bk, std::move(*sol));
  }
  return res;
}

TriangularForm generator_bracket(PbwEngine& engine, const Element& pos, const Element& neg) {
  return engine.triangular_nf(bracket(pos, neg));
}

PairVerdict CoidealEngine::pair_check(const SubalgebraSpec& neg, const SubalgebraSpec& pos) {
  PairVerdict v;
  v.neg = neg.index;
  v.pos = pos.index;
  for (std::size_t i = 0; i < pos.generators.size(); ++i)
    for (std::size_t j = 0; j < neg.generators.size(); ++j) {
      PairCheck c;
      c.gen_pos = pos.generators[i];
      c.gen_neg = neg.generators[j];
      c.bracket = generator_bracket(engine_, pos.expansions[i], neg.expansions[j]);
      const MembershipResult m = member(c.bracket, neg, pos);
      c.member = m.member;
      c.failing = m.failing;
      v.compatible = v.compatible && c.member;
      v.checks.push_back(std::move(c));
    }
  return v;
}

CompatibilityTable CoidealEngine::classify(unsigned threads) {
  CompatibilityTable t;
  t.verdicts.resize(kBorelCount * kBorelCount);
  parallel_for(t.verdicts.size(), threads, [&](std::size_t i) {
    t.verdicts[i] = pair_check(static_cast<int>(i / kBorelCount) + 1, static_cast<int>(i % kBorelCount) + 1);
  });
  for (const auto& v : t.verdicts) {
    t.matrix[v.neg - 1][v.pos - 1] = v.compatible;
    t.count_true += v.compatible ? 1 : 0;
  }
  return t;
}

// ---------------------------------------------------------------- identities

std::vector<IdentityLine> load_identities(const std::string& path) {
  std::vector<IdentityLine> out;
  for (const auto& row : read_table(path)) {
    if (row.size() != 4) throw std::runtime_error("identity line needs 4 fields: " + row.front());
    IdentityLine l;
    l.id = row[0];
    l.lhs = row[1];
    l.rhs_exact = row[2];
    for (auto s : split(row[3], ';')) {
      const bool opt = !s.empty() && s[0] == '?';
      if (opt) s = trim(s.substr(1));
      l.shape.push_back(s);
      l.optional_slot.push_back(opt);
    }
    out.push_back(std::move(l));
  }
  return out;
}

IdentityReport CoidealEngine::verify_identity(const IdentityLine& line) {
  IdentityReport r;
  r.id = line.id;
  r.lhs = line.lhs;
  r.computed = engine_.triangular_nf(parse(line.lhs));

  const TriangularForm exact = engine_.triangular_nf(parse(line.rhs_exact));
  r.tier2_exact = r.computed == exact;
  if (!r.tier2_exact) r.diff = format_triangular(r.computed - exact);

  std::vector<TriangularForm> basis;
  for (const auto& s : line.shape) basis.push_back(engine_.triangular_nf(parse(s)));
  const bool zero_shape = std::all_of(basis.begin(), basis.end(), [](const auto& b) { return b.is_zero(); });
  if (zero_shape) {
    r.tier1_ok = r.computed.is_zero();
    return r;
  }

  std::map<TriKey, std::size_t> cols;
  for (const auto& [k, c] : r.computed.terms()) cols.emplace(k, 0);
  for (const auto& b : basis)
    for (const auto& [k, c] : b.terms()) cols.emplace(k, 0);
  std::size_t idx = 0;
  for (auto& [k, i] : cols) i = idx++;
  auto dense = [&](const TriangularForm& t) {
    std::vector<CycloFraction> v(cols.size());
    for (const auto& [k, c] : t.terms()) v[cols.at(k)] = c;
    return v;
  };
  std::vector<std::vector<CycloFraction>> span_rows, target{dense(r.computed)};
  for (const auto& b : basis) span_rows.push_back(dense(b));
  std::vector<CoeffVector> rows, trow;
  const auto mult = clear_rows(span_rows, rows);
  const auto tmult = clear_rows(target, trow);
  const auto sol = solve_in_span(trow[0], CoeffMatrix(cols.size(), rows));
  if (!sol) {
    r.shape_coeffs.assign(basis.size(), std::nullopt);
    return r;
  }
  bool ok = true;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto c = CycloFraction::from_quotient(sol->num[k] * mult[k], sol->den * tmult[0]);
    const bool nonzero = !sol->num[k].is_zero();
    if (!line.optional_slot[k] && !nonzero) ok = false;
    r.shape_coeffs.push_back(std::move(c));
  }
  r.tier1_ok = ok;
  return r;
}

std::vector<IdentityReport> CoidealEngine::verify_appendix(const std::vector<IdentityLine>& lines,
                                                           unsigned threads) {
  std::vector<IdentityReport> out(lines.size());
  parallel_for(lines.size(), threads, [&](std::size_t i) { out[i] = verify_identity(lines[i]); });
  return out;
}

std::vector<RootsEntry> roots_report(const std::vector<IdentityReport>& reports, int t_max) {
  std::vector<RootsEntry> out;
  for (const auto& r : reports)
    for (const auto& c : r.shape_coeffs) {
      if (!c || c->is_zero()) continue;
      RootsEntry e;
      e.id = r.id;
      e.coefficient = c->to_string();
      const auto num = strip_p(c->num());
      if (!num) throw std::domain_error("coefficient of " + r.id + " is not a p-monomial multiple: " + e.coefficient);
      e.orders = vanishing_orders(*num, t_max);
      for (const auto& [n, k] : c->den())
        if (n <= t_max) e.orders.insert(n);
      out.push_back(std::move(e));
    }
  return out;
}

// ------------------------------------------------------------------ coideals

bool CoidealEngine::verify_right_coideal(const SubalgebraSpec& neg, const SubalgebraSpec& pos) {
  std::vector<const Element*> gens;
  for (const auto& e : neg.expansions) gens.push_back(&e);
  for (const auto& e : pos.expansions) gens.push_back(&e);
  for (const Element* g : gens) {
    // Delta(g) = sum_k L_k (x) b_k over triangular basis elements b_k.
    std::map<TriKey, TriangularForm> legs;
    const TensorElement d = coproduct(*g);
    for (const auto& [lr, c] : d.terms()) {
      const TriangularForm right = engine_.triangular_nf(Element(lr.second));
      if (right.is_zero()) continue;
      TriangularForm left = engine_.triangular_nf(Element(lr.first, c));
      for (const auto& [k, beta] : right.terms()) {
        TriangularForm t = left;
        t *= beta;
        legs[k] += t;
      }
    }
    for (const auto& [k, l] : legs)
      if (!l.is_zero() && !member(l, neg, pos).member) return false;
  }
  return true;
}

bool CoidealEngine::contains(std::pair<int, int> outer, std::pair<int, int> inner) {
  const auto& on = catalog_.get(Side::Negative, outer.first);
  const auto& op = catalog_.get(Side::Positive, outer.second);
  for (const SubalgebraSpec* s : {&catalog_.get(Side::Negative, inner.first), &catalog_.get(Side::Positive, inner.second)})
    for (const auto& e : s->expansions)
      if (!member(engine_.triangular_nf(e), on, op).member) return false;
  return true;
}

Lattice CoidealEngine::lattice_build(const CompatibilityTable& table) {
  Lattice l;
  for (int a = 1; a <= kBorelCount; ++a)
    for (int b = 1; b <= kBorelCount; ++b)
      if (table.matrix[a - 1][b - 1]) l.nodes.emplace_back(a, b);
  const std::size_t n = l.nodes.size();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  parallel_for(n * n, 0, [&](std::size_t k) {
    const std::size_t i = k / n, j = k % n;
    le[i][j] = i == j || contains(l.nodes[j], l.nodes[i]);
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !le[i][j] || le[j][i]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && le[i][k] && le[k][j] && !le[k][i] && !le[j][k]) cover = false;
      if (cover) l.edges.emplace_back(i, j);
    }
  return l;
}

std::string pair_label(const Catalog& c, int neg, int pos) {
  return "⟨" + c.get(Side::Negative, neg).label + "; " + c.get(Side::Positive, pos).label + "⟩";
}

// ---------------------------------------------------------------- golden I/O

std::array<std::array<bool, kBorelCount>, kBorelCount> load_intro_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  std::vector<int> cols;
  for (const auto& c : j.at("columns")) cols.push_back(parse_id(c.get<std::string>()).second);
  std::array<std::array<bool, kBorelCount>, kBorelCount> m{};
  for (const auto& row : j.at("rows")) {
    const int r = parse_id(row.at("neg").get<std::string>()).second;
    const auto& cells = row.at("cells");
    for (std::size_t k = 0; k < cols.size(); ++k) m[r - 1][cols[k] - 1] = cells.at(k).get<int>() != 0;
  }
  return m;
}

std::vector<CaseLine> load_cases(const std::string& path) {
  std::vector<CaseLine> out;
  for (const auto& row : read_table(path)) {
    if (row.size() != 4) throw std::runtime_error("case line needs 4 fields: " + row.front());
    out.push_back({row[0], parse_id(row[1]).second, parse_id(row[2]).second, row[3]});
  }
  return out;
}

// ---------------------------------------------------------------------- json

nlohmann::json to_json(const ComponentReport& r) {
  return {{"side", side_name(r.side)},
          {"multidegree", r.multidegree},
          {"dim_free", r.dim_free},
          {"rank_ideal", r.rank_ideal},
          {"n_pbw", r.n_pbw},
          {"ok", r.ok},
          {"detail", r.detail}};
}

nlohmann::json to_json(const PairVerdict& v) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : v.checks) {
    nlohmann::json o{{"generator_pos", c.gen_pos},
                     {"generator_neg", c.gen_neg},
                     {"bracket", format_triangular(c.bracket)},
                     {"member", c.member}};
    if (c.failing) o["failing_block"] = to_string(*c.failing);
    checks.push_back(std::move(o));
  }
  return {{"neg", "U" + std::to_string(v.neg) + "-"},
          {"pos", "U" + std::to_string(v.pos) + "+"},
          {"compatible", v.compatible},
          {"checks", std::move(checks)}};
}

nlohmann::json to_json(const CompatibilityTable& t) {
  nlohmann::json m = nlohmann::json::array();
  for (const auto& row : t.matrix) m.push_back(row);
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : t.verdicts) v.push_back(to_json(x));
  return {{"orientation", "rows U1-..U12-, columns U1+..U12+"},
          {"matrix", std::move(m)},
          {"count_true", t.count_true},
          {"verdicts", std::move(v)}};
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : r.shape_coeffs) coeffs.push_back(c ? nlohmann::json(c->to_string()) : nlohmann::json());
  nlohmann::json o{{"id", r.id},
                   {"lhs", r.lhs},
                   {"computed", format_triangular(r.computed)},
                   {"tier1", r.tier1_ok},
                   {"tier2_exact", r.tier2_exact},
                   {"shape_coefficients", std::move(coeffs)}};
  if (!r.tier2_exact) o["difference"] = r.diff;
  return o;
}

nlohmann::json to_json(const Lattice& l, const Catalog& c) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [a, b] : l.nodes)
    nodes.push_back({{"neg", "U" + std::to_string(a) + "-"},
                     {"pos", "U" + std::to_string(b) + "+"},
                     {"label", pair_label(c, a, b)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [i, j] : l.edges) edges.push_back({i, j});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

std::string to_dot(const Lattice& l, const Catalog& c) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < l.nodes.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + pair_label(c, l.nodes[i].first, l.nodes[i].second) + "\"];\n";
  for (const auto& [i, j] : l.edges) out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
  return out + "}\n";
}

}  // namespace skewpbw
