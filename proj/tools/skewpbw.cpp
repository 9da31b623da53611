#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewpbw/coideal.hpp"
#include "skewpbw/exprparse.hpp"

using namespace skewpbw;
using nlohmann::json;

namespace {

struct Options {
  std::string json_path;
  std::string dot_path;
  std::vector<int> max_deg{3, 6};
  int t_max = 24;
  unsigned seed = 0;
  std::string expr;
};

struct Outcome {
  json results;
  bool pass = true;
};

json config_echo(const std::string& command, const Options& o, const Caps& caps) {
  const auto& g2 = CartanConfig::g2();
  return {{"command", command},
          {"cartan", g2.cartan},
          {"d", g2.d},
          {"caps", {{"max_deg", caps.max_deg}, {"max_free_dim", caps.max_free_dim}}},
          {"degree_box", o.max_deg},
          {"t_max", o.t_max},
          {"seed", o.seed},
          {"golden_dir", golden_dir()}};
}

// Evaluation order shuffled by the seed; results are reassembled in index order.
std::vector<std::size_t> shuffled(std::size_t n, unsigned seed) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  if (seed != 0) std::shuffle(v.begin(), v.end(), std::mt19937(seed));
  return v;
}

Outcome verify_appendix(CoidealEngine& ce, const Options& o) {
  const auto lines = load_identities(golden_dir() + "/appendix_identities.txt");
  std::vector<IdentityReport> reps(lines.size());
  for (std::size_t i : shuffled(lines.size(), o.seed)) reps[i] = ce.verify_identity(lines[i]);
  Outcome out;
  json arr = json::array();
  int t1 = 0, t2 = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    t1 += r.tier1_ok;
    t2 += r.tier2_exact;
    json j = to_json(r);
    if (!r.tier2_exact) j["quoted"] = lines[i].rhs_exact;
    arr.push_back(std::move(j));
    std::cout << r.id << "  tier1 " << (r.tier1_ok ? "ok" : "FAIL") << "  tier2 "
              << (r.tier2_exact ? "exact" : "differs") << "\n";
    if (!r.tier2_exact)
      std::cout << "    computed: " << format_triangular(r.computed) << "\n    quoted:   " << lines[i].rhs_exact << "\n";
  }
  std::cout << "tier1 " << t1 << "/" << reps.size() << ", tier2 exact " << t2 << "/" << reps.size() << "\n";
  out.pass = t1 == static_cast<int>(reps.size());
  out.results = {{"identities", std::move(arr)}, {"tier1_ok", t1}, {"tier2_exact", t2}};
  return out;
}

Outcome verify_pbw(CoidealEngine& ce, const Options& o) {
  Outcome out;
  json arr = json::array();
  for (Side s : {Side::Positive, Side::Negative})
    for (int a = 0; a <= o.max_deg[0]; ++a)
      for (int b = 0; b <= o.max_deg[1]; ++b) {
        const ComponentReport r = ce.engine().component_check(s, {a, b});
        out.pass = out.pass && r.ok;
        if (!r.ok)
          std::cout << side_name(r.side) << " (" << a << "," << b << ") FAIL " << r.detail << "\n";
        arr.push_back(to_json(r));
      }
  std::cout << arr.size() << " components, " << (out.pass ? "all ok" : "failures") << "\n";
  out.results = {{"components", std::move(arr)}};
  return out;
}

Outcome classify(CoidealEngine& ce, const Options& o) {
  CompatibilityTable t;
  t.verdicts.resize(kBorelCount * kBorelCount);
  for (std::size_t i : shuffled(t.verdicts.size(), o.seed))
    t.verdicts[i] = ce.pair_check(static_cast<int>(i / kBorelCount) + 1, static_cast<int>(i % kBorelCount) + 1);
  for (const auto& v : t.verdicts) {
    t.matrix[v.neg - 1][v.pos - 1] = v.compatible;
    t.count_true += v.compatible;
  }
  const auto gold = load_intro_table(golden_dir() + "/intro_table.json");
  Outcome out;
  out.results = to_json(t);
  out.results["matches_intro_table"] = t.matrix == gold;
  out.pass = t.count_true == 60 && t.matrix == gold;
  std::cout << "        ";
  for (int b = 1; b <= kBorelCount; ++b) std::cout << (b < 10 ? " " : "") << b << "+";
  std::cout << "\n";
  for (int a = 1; a <= kBorelCount; ++a) {
    std::cout << "U" << a << "-" << (a < 10 ? "    " : "   ");
    for (int b = 1; b <= kBorelCount; ++b) {
      const bool c = t.matrix[a - 1][b - 1];
      std::cout << "  " << (c == gold[a - 1][b - 1] ? (c ? "Y" : ".") : (c ? "!" : "?"));
    }
    std::cout << "\n";
  }
  std::cout << "compatible pairs: " << t.count_true << ", intro table " << (t.matrix == gold ? "matches" : "differs")
            << "\n";
  return out;
}

Outcome lattice(CoidealEngine& ce, const Options& o) {
  const CompatibilityTable t = ce.classify();
  const Lattice l = ce.lattice_build(t);
  Outcome out;
  out.results = to_json(l, ce.catalog());
  out.pass = l.nodes.size() == 60;
  if (!o.dot_path.empty()) {
    std::ofstream f(o.dot_path);
    if (!f) throw std::runtime_error("cannot write " + o.dot_path);
    f << to_dot(l, ce.catalog());
  }
  std::cout << l.nodes.size() << " nodes, " << l.edges.size() << " covering edges\n";
  for (const auto& [i, j] : l.edges)
    std::cout << "  " << pair_label(ce.catalog(), l.nodes[i].first, l.nodes[i].second) << "  <  "
              << pair_label(ce.catalog(), l.nodes[j].first, l.nodes[j].second) << "\n";
  return out;
}

Outcome roots(CoidealEngine& ce, const Options& o) {
  const auto reps = ce.verify_appendix(load_identities(golden_dir() + "/appendix_identities.txt"));
  const auto entries = roots_report(reps, o.t_max);
  std::set<int> all;
  json arr = json::array();
  for (const auto& e : entries) {
    all.insert(e.orders.begin(), e.orders.end());
    arr.push_back({{"id", e.id}, {"coefficient", e.coefficient}, {"orders", e.orders}});
    std::cout << e.id << "  " << e.coefficient << "  {";
    bool first = true;
    for (int t : e.orders) std::cout << (first ? "" : ",") << t, first = false;
    std::cout << "}\n";
  }
  Outcome out;
  out.pass = std::all_of(all.begin(), all.end(), [](int t) { return t <= 4 || t == 6; }) &&
             std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.tier1_ok; });
  out.results = {{"entries", std::move(arr)}, {"union", all}};
  std::cout << "union {";
  bool first = true;
  for (int t : all) std::cout << (first ? "" : ",") << t, first = false;
  std::cout << "}\n";
  return out;
}

Outcome eval(CoidealEngine& ce, const Options& o) {
  const TriangularForm t = ce.engine().triangular_nf(parse(o.expr));
  std::cout << format_triangular(t) << "\n";
  Outcome out;
  out.results = {{"input", o.expr}, {"normal_form", format_triangular(t)}, {"terms", t.to_json()}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic verification engine for two-parameter U_q(G2)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--json", o.json_path, "Write the JSON report to this path");
    sub->add_option("--seed", o.seed, "Seed for the evaluation order");
  };
  auto* c_app = app.add_subcommand("verify-appendix", "Check the 50 bracket identities");
  auto* c_pbw = app.add_subcommand("verify-pbw", "Check PBW components over a degree box");
  c_pbw->add_option("--max-deg", o.max_deg, "Degree box m1 m2")->expected(2);
  auto* c_cls = app.add_subcommand("classify", "Decide all 144 pairs");
  auto* c_lat = app.add_subcommand("lattice", "Inclusion lattice of the compatible pairs");
  c_lat->add_option("--dot", o.dot_path, "Write the Hasse diagram in DOT format");
  auto* c_roots = app.add_subcommand("roots", "Vanishing orders of the structural coefficients");
  c_roots->add_option("--tmax", o.t_max, "Largest order examined")->check(CLI::PositiveNumber);
  auto* c_eval = app.add_subcommand("eval", "Triangular normal form of an expression");
  c_eval->add_option("expr", o.expr, "Expression")->required();
  for (auto* s : {c_app, c_pbw, c_cls, c_lat, c_roots, c_eval}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    CoidealEngine ce;
    Outcome out;
    if (command == "verify-appendix") out = verify_appendix(ce, o);
    else if (command == "verify-pbw") out = verify_pbw(ce, o);
    else if (command == "classify") out = classify(ce, o);
    else if (command == "lattice") out = lattice(ce, o);
    else if (command == "roots") out = roots(ce, o);
    else out = eval(ce, o);

    if (!o.json_path.empty()) {
      json report = config_echo(command, o, ce.engine().caps());
      report["results"] = std::move(out.results);
      report["status"] = out.pass ? "pass" : "fail";
      std::ofstream f(o.json_path);
      if (!f) throw std::runtime_error("cannot write " + o.json_path);
      f << report.dump(2) << "\n";
    }
    std::cerr << command << ": " << (out.pass ? "pass" : "fail") << " in "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return out.pass ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalInconsistency& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return 1;
  } catch (const EvalError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
