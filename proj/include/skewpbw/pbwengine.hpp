#pragma once

// PBW structure of the two Borel halves and the triangular normal form.
//
// Each half is the free algebra on two letters modulo the Serre relations.
// A graded component is handled by exact elimination: the ideal rows u*r*v
// are reduced fraction-free, the PBW monomials of the same degree complete
// them to a basis, and every word of the component gets its PBW coordinates
// from one solve.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewpbw/skewalg.hpp"

namespace skewpbw {

enum class Side { Positive, Negative };
std::string side_name(Side s);

struct CartanConfig {
  std::array<std::array<int, 2>, 2> cartan{{{2, -1}, {-3, 2}}};
  std::array<int, 2> d{3, 1};
  static const CartanConfig& g2();
  [[nodiscard]] ParameterTable table() const { return ParameterTable::from_cartan(cartan, d); }
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failed PBW solve: the generator list would not be a basis.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exponents over (F, E, D, C, B, A); products are taken in this order.
using PbwExps = std::array<int, 6>;
inline constexpr int kPbwCount = 6;

struct PbwGen {
  char id;
  Side side;
  std::string expr;
  Element expansion;
  Degree degree;
  std::string height_root_of_unity;
};

/// Generators in exponent order F, E, D, C, B, A.
const std::vector<PbwGen>& pbw_generators(Side s);
/// All exponent vectors with sum_k exps[k] * deg(gen_k) == d.
std::vector<PbwExps> pbw_monomials(const Degree& d);
Degree pbw_degree(const PbwExps& e);
std::string pbw_to_string(Side s, const PbwExps& e);

struct Caps {
  Degree max_deg{4, 8};
  std::size_t max_free_dim = 1000;
};

struct ComponentReport {
  Side side;
  Degree multidegree;
  std::size_t dim_free = 0;
  std::size_t rank_ideal = 0;
  std::size_t n_pbw = 0;
  bool ok = false;
  std::string detail;
};

/// Triangular basis element h * (negative PBW monomial) * (positive PBW monomial).
struct TriKey {
  GroupWord grp{};
  PbwExps neg{};
  PbwExps pos{};
  friend auto operator<=>(const TriKey&, const TriKey&) = default;
};

class TriangularForm {
 public:
  using Map = std::map<TriKey, CycloFraction>;

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Map& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  void add_term(const TriKey& k, const CycloFraction& c);
  TriangularForm& operator+=(const TriangularForm& o);
  TriangularForm& operator*=(const CycloFraction& c);
  friend TriangularForm operator-(TriangularForm a, const TriangularForm& b);
  friend bool operator==(const TriangularForm&, const TriangularForm&) = default;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  Map terms_;
};

/// Parseable rendering, e.g. "q^3 g1 f1 x2-" or "[x1,x2]^2 x1".
std::string format_triangular(const TriangularForm& t);

class PbwEngine {
 public:
  explicit PbwEngine(Caps caps = {}) : caps_(caps) {}

  [[nodiscard]] const Caps& caps() const { return caps_; }

  CoeffMatrix serre_ideal_component(Side s, const Degree& d);
  ComponentReport component_check(Side s, const Degree& d);
  std::map<PbwExps, CycloFraction> borel_coords(const Element& a, Side s);
  Element cross_straighten(const Element& a);
  TriangularForm triangular_nf(const Element& a);
  /// Back to the free algebra; fails for coefficients with denominators.
  Element expand(const TriangularForm& t);
  const Element& pbw_expansion(Side s, const PbwExps& e);

  struct Component;

 private:
  std::shared_ptr<const Component> component(Side s, const Degree& d);
  std::shared_ptr<const Component> build_component(Side s, const Degree& d);
  const std::map<PbwExps, CycloFraction>& word_coords(Side s, const Word& w);
  const Element& push_positive(int i, const Word& neg);
  const Element& straighten_word(const Word& w);

  Caps caps_;
  std::mutex comp_mu_, exp_mu_, push_mu_, word_mu_, coord_mu_;
  std::map<std::pair<Side, Degree>, std::shared_ptr<const Component>> components_;
  std::map<std::pair<Side, PbwExps>, Element> expansions_;
  std::map<std::pair<int, Word>, Element> push_memo_;
  std::map<Word, Element> word_memo_;
  std::map<std::pair<Side, Word>, std::map<PbwExps, CycloFraction>> coord_memo_;
};

/// Shared engine with default caps.
PbwEngine& default_engine();

/// Expression of the two Serre elements on a side.
std::vector<std::string> serre_exprs(Side s);
Element serre_element(Side s, int k);

/// Side-local multidegree (count of letter 1, count of letter 2) of a word.
Degree side_degree(const Word& w);

}  // namespace skewpbw
