#pragma once

// Right coideal subalgebras U- (x) k[H] (x) U+ built from two Borel right
// coideal subalgebras: catalog, membership, the pair compatibility test, the
// classification table, identity verification, coproduct checks and the
// inclusion lattice.

#include <array>
#include <map>
#include <mutex>
#include <tuple>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewpbw/pbwengine.hpp"

namespace skewpbw {

inline constexpr int kBorelCount = 12;

/// Golden data directory: $SKEWPBW_GOLDEN_DIR, else the compiled-in default.
std::string golden_dir();

struct SubalgebraSpec {
  Side side = Side::Positive;
  int index = 1;  // 1..12
  std::string label;
  std::vector<std::string> generators;
  std::vector<Element> expansions;
  std::vector<Degree> degrees;

  [[nodiscard]] std::string id() const;  // e.g. "U4+"
};

/// The 24 Borel subalgebras read from subalgebras.txt.
class Catalog {
 public:
  static Catalog load(const std::string& path);
  [[nodiscard]] const SubalgebraSpec& get(Side s, int index) const;
  [[nodiscard]] const SubalgebraSpec& trivial(Side s) const { return get(s, 1); }

 private:
  std::array<std::array<SubalgebraSpec, kBorelCount>, 2> specs_;
};

const Catalog& default_catalog();

/// Ordered products of T-generators (listed order, unbounded exponents) of
/// the given side-local multidegree.
std::vector<Element> t_monomials(const SubalgebraSpec& spec, const Degree& d, const Caps& caps = {});

struct BlockKey {
  GroupWord grp{};
  Degree neg{};
  Degree pos{};
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};
std::string to_string(const BlockKey& k);

struct MembershipResult {
  bool member = true;
  std::map<BlockKey, SpanCoordinates> certificates;
  std::optional<BlockKey> failing;
};

struct PairCheck {
  std::string gen_pos;
  std::string gen_neg;
  TriangularForm bracket;
  bool member = false;
  std::optional<BlockKey> failing;
};

struct PairVerdict {
  int neg = 1;
  int pos = 1;
  bool compatible = true;
  std::vector<PairCheck> checks;
};

struct CompatibilityTable {
  // matrix[neg - 1][pos - 1]
  std::array<std::array<bool, kBorelCount>, kBorelCount> matrix{};
  int count_true = 0;
  std::vector<PairVerdict> verdicts;
};

struct IdentityLine {
  std::string id;
  std::string lhs;
  std::string rhs_exact;
  /// First entry is the leading shape term, later entries are the alpha
  /// slots; optional slots (allowed to vanish) are flagged.
  std::vector<std::string> shape;
  std::vector<bool> optional_slot;
};
std::vector<IdentityLine> load_identities(const std::string& path);

struct IdentityReport {
  std::string id;
  std::string lhs;
  TriangularForm computed;
  bool tier1_ok = false;
  bool tier2_exact = false;
  /// Coefficient of each shape term in the computed value.
  std::vector<std::optional<CycloFraction>> shape_coeffs;
  std::string diff;
};

struct Lattice {
  std::vector<std::pair<int, int>> nodes;  // (neg, pos)
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper), covering relations
};

struct RootsEntry {
  std::string id;
  std::string coefficient;
  std::set<int> orders;
};

class CoidealEngine {
 public:
  explicit CoidealEngine(PbwEngine& engine = default_engine(), const Catalog& catalog = default_catalog())
      : engine_(engine), catalog_(catalog) {}

  [[nodiscard]] const Catalog& catalog() const { return catalog_; }
  [[nodiscard]] PbwEngine& engine() const { return engine_; }

  MembershipResult member(const TriangularForm& z, const SubalgebraSpec& neg, const SubalgebraSpec& pos);
  PairVerdict pair_check(const SubalgebraSpec& neg, const SubalgebraSpec& pos);
  PairVerdict pair_check(int neg, int pos) {
    return pair_check(catalog_.get(Side::Negative, neg), catalog_.get(Side::Positive, pos));
  }
  /// All 144 pairs, fanned out over `threads` workers (0 = hardware).
  CompatibilityTable classify(unsigned threads = 0);
  IdentityReport verify_identity(const IdentityLine& line);
  std::vector<IdentityReport> verify_appendix(const std::vector<IdentityLine>& lines, unsigned threads = 0);
  bool verify_right_coideal(const SubalgebraSpec& neg, const SubalgebraSpec& pos);
  /// U(a) contained in U(b), decided by membership of every T-generator.
  bool contains(std::pair<int, int> outer, std::pair<int, int> inner);
  Lattice lattice_build(const CompatibilityTable& table);

 private:
  using Coords = std::vector<std::map<PbwExps, CycloFraction>>;
  const Coords& t_coords(const SubalgebraSpec& spec, const Degree& d);

  PbwEngine& engine_;
  const Catalog& catalog_;
  std::mutex mu_;
  std::map<std::tuple<Side, int, Degree>, Coords> t_coords_;
};

/// Vanishing orders of every tier-1 shape coefficient (num and den, p-part
/// stripped).
std::vector<RootsEntry> roots_report(const std::vector<IdentityReport>& reports, int t_max = 24);

/// Bracket of a positive and a negative generator, orientation [g+, g-].
TriangularForm generator_bracket(PbwEngine& engine, const Element& pos, const Element& neg);

/// Label "<u-; v>" with the exprparse spelling of both generators.
std::string pair_label(const Catalog& c, int neg, int pos);

/// Intro table from intro_table.json as matrix[neg - 1][pos - 1].
std::array<std::array<bool, kBorelCount>, kBorelCount> load_intro_table(const std::string& path);

struct CaseLine {
  std::string id;  // Y24 .. Y59, N1 .. N84
  int neg = 1;
  int pos = 1;
  std::string witness;  // identity id for N cases
};
std::vector<CaseLine> load_cases(const std::string& path);

nlohmann::json to_json(const ComponentReport& r);
nlohmann::json to_json(const PairVerdict& v);
nlohmann::json to_json(const CompatibilityTable& t);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const Lattice& l, const Catalog& c);
std::string to_dot(const Lattice& l, const Catalog& c);

}  // namespace skewpbw
