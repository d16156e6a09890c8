#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnk/fuzzy_set.hpp"
#include "fnk/grid.hpp"
#include "fnk/interval.hpp"
#include "fnk/nd_automorphism.hpp"
#include "fnk/nd_negation.hpp"
#include "fnk/report.hpp"
#include "fnk/unit_automorphism.hpp"
#include "fnk/unit_negation.hpp"
#include "fnk/verify.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Inline JSON, or @path to read it from a file.
nlohmann::json parse_expr(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw fnk::ingestion_error("cannot open " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw fnk::parse_error(std::string("expression JSON: ") + e.what());
  }
}

std::string kind_of(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw fnk::parse_error("expression needs a \"kind\" field");
  return j["kind"].get<std::string>();
}

bool unit_neg_kind(const std::string& k) {
  static const std::set<std::string> kinds{"standard", "bottom",    "top",
                                           "ck",       "cupk",      "pwl",
                                           "conjugate", "from_automorphism"};
  return kinds.count(k) > 0;
}

bool nd_neg_kind(const std::string& k) {
  static const std::set<std::string> kinds{"representable", "collapse",    "bottom_n",
                                           "top_n",         "conjugate_n", "strong_from_auto"};
  return kinds.count(k) > 0;
}

bool unit_auto_kind(const std::string& k) {
  static const std::set<std::string> kinds{"identity", "power",    "pwl_inc", "compose",
                                           "inverse",  "rescaled", "rho_n"};
  return kinds.count(k) > 0;
}

bool nd_auto_kind(const std::string& k) {
  static const std::set<std::string> kinds{"from_unit", "inverse_n", "phi_n"};
  return kinds.count(k) > 0;
}

bool write_json(const std::string& path, const fnk::ordered_json& j) {
  std::ofstream out(path);
  if (!out) return false;
  out << j.dump(2) << "\n";
  return static_cast<bool>(out);
}

int cmd_eval(const std::string& neg_arg, const std::string& auto_arg,
             const std::string& point_arg) {
  fnk::NDInterval pt = fnk::parse_interval(point_arg);
  const std::string& arg = neg_arg.empty() ? auto_arg : neg_arg;
  nlohmann::json j = parse_expr(arg);
  std::string kind = kind_of(j);

  if (!neg_arg.empty()) {
    if (unit_neg_kind(kind)) {
      if (pt.dim() != 1)
        throw fnk::argument_error("unit negation expression takes a single value, got dimension " +
                                  std::to_string(pt.dim()));
      std::cout << num(fnk::UnitNegation::from_json(j).eval(pt.project(1))) << "\n";
      return 0;
    }
    if (!nd_neg_kind(kind)) throw fnk::parse_error("unknown negation kind \"" + kind + "\"");
    fnk::NDimNegation nd = fnk::NDimNegation::from_json(j);
    if (nd.dim() != pt.dim())
      throw fnk::argument_error("expression dimension " + std::to_string(nd.dim()) +
                                " does not match point dimension " + std::to_string(pt.dim()));
    std::cout << fnk::format_interval(nd.eval(pt)) << "\n";
    return 0;
  }

  if (unit_auto_kind(kind)) {
    if (pt.dim() != 1)
      throw fnk::argument_error("unit automorphism expression takes a single value, got dimension " +
                                std::to_string(pt.dim()));
    std::cout << num(fnk::UnitAutomorphism::from_json(j).eval(pt.project(1))) << "\n";
    return 0;
  }
  if (!nd_auto_kind(kind)) throw fnk::parse_error("unknown automorphism kind \"" + kind + "\"");
  fnk::NDimAutomorphism phi = fnk::NDimAutomorphism::from_json(j);
  if (phi.dim() != pt.dim())
    throw fnk::argument_error("expression dimension " + std::to_string(phi.dim()) +
                              " does not match point dimension " + std::to_string(pt.dim()));
  std::cout << fnk::format_interval(phi.eval(pt)) << "\n";
  return 0;
}

int cmd_check(const std::string& neg_arg, const std::string& props_arg, int m, double tol,
              const std::string& out_path) {
  nlohmann::json j = parse_expr(neg_arg);
  std::string kind = kind_of(j);
  bool unit = unit_neg_kind(kind);
  if (!unit && !nd_neg_kind(kind)) throw fnk::parse_error("unknown negation kind \"" + kind + "\"");

  static const std::set<std::string> unit_props{"n1", "n2", "strong", "strict"};
  static const std::set<std::string> nd_props{
      "n1",  "n2",    "dp",     "strong",          "strict",          "representable",
      "subset-monotone", "monotone-by-part", "no-degenerate-image", "lattice-duality",
      "discontinuity"};

  std::vector<std::string> props;
  std::stringstream ss(props_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) props.push_back(item);
  }
  if (props.empty()) {
    std::cerr << "fnk check: no properties given\n";
    return kExitUsage;
  }
  for (const auto& p : props) {
    if (!nd_props.count(p) && !unit_props.count(p)) {
      std::cerr << "fnk check: unknown property \"" << p << "\"\n";
      return kExitUsage;
    }
    if (unit && !unit_props.count(p)) {
      std::cerr << "fnk check: property \"" << p << "\" needs an n-dimensional expression\n";
      return kExitUsage;
    }
  }

  std::vector<fnk::PropertyReport> reports;
  if (unit) {
    fnk::UnitNegation n = fnk::UnitNegation::from_json(j);
    for (const auto& p : props) {
      if (p == "n1") reports.push_back(fnk::check_n1(n));
      else if (p == "n2") reports.push_back(fnk::check_n2(n, m, tol));
      else if (p == "strong") reports.push_back(fnk::is_strong(n, m, tol));
      else reports.push_back(fnk::is_strict(n, m, tol));
    }
  } else {
    fnk::NDimNegation nd = fnk::NDimNegation::from_json(j);
    for (const auto& p : props) {
      if (p == "n1") reports.push_back(fnk::check_n1_nd(nd));
      else if (p == "n2") reports.push_back(fnk::check_n2_nd(nd, m, tol));
      else if (p == "dp") reports.push_back(fnk::check_dp(nd, m, tol));
      else if (p == "strong") reports.push_back(fnk::is_strong_nd(nd, m, tol));
      else if (p == "strict") reports.push_back(fnk::is_strict_nd(nd, m, tol));
      else if (p == "subset-monotone") reports.push_back(fnk::is_subset_monotone(nd, m, tol));
      else if (p == "monotone-by-part") reports.push_back(fnk::is_monotone_by_part(nd, m, tol));
      else if (p == "no-degenerate-image") reports.push_back(fnk::no_degenerate_image(nd, m, tol));
      else if (p == "lattice-duality") reports.push_back(fnk::lattice_duality(nd, m, tol));
      else if (p == "discontinuity") reports.push_back(fnk::discontinuity_heuristic(nd, m));
      else {
        auto v = fnk::decide_representability(nd, m, tol, fnk::kReconTol);
        fnk::PropertyReport r;
        r.property_id = "representable";
        r.verdict = v.representable ? fnk::Verdict::pass : fnk::Verdict::fail;
        r.max_error = v.max_reconstruction_error;
        r.witness = v.witness;
        r.grid_n = nd.dim();
        r.grid_m = m;
        r.note = v.deciders_agree ? "containment scan and reconstruction agree"
                                  : "containment scan and reconstruction disagree";
        reports.push_back(std::move(r));
      }
    }
  }

  bool all = true;
  for (const auto& r : reports) {
    std::cout << r.property_id << ": " << fnk::to_string(r.verdict) << "\n";
    all = all && r.passed();
  }
  if (!out_path.empty()) {
    fnk::SuiteReport sr;
    sr.suite = "check";
    sr.config = fnk::ordered_json{{"m", m}, {"eps", tol}, {"expression", j}};
    sr.reports = std::move(reports);
    if (!write_json(out_path, sr.to_json())) {
      std::cerr << "fnk check: cannot write " << out_path << "\n";
      return kExitIo;
    }
  }
  return all ? 0 : kExitFail;
}

int cmd_theorems(const std::string& suite, int n, int m, int trials, std::uint64_t seed,
                 double tol, const std::string& out_path) {
  const auto& names = fnk::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::cerr << "fnk theorems: unknown suite \"" << suite << "\" (known:";
    for (const auto& s : names) std::cerr << " " << s;
    std::cerr << ")\n";
    return kExitUsage;
  }
  fnk::SuiteConfig cfg;
  if (n > 0) cfg.dims = {n};
  if (m > 0) {
    cfg.m_pair = m;
    cfg.m_point = m;
  }
  if (trials > 0) cfg.trials = trials;
  cfg.seed = seed;
  if (tol > 0) cfg.eps = tol;

  fnk::SuiteReport sr = fnk::run_suite(suite, cfg);
  int passed = 0;
  for (const auto& r : sr.reports) {
    std::cout << r.property_id << ": " << fnk::to_string(r.verdict) << "\n";
    if (r.passed()) ++passed;
  }
  std::cout << "suite " << suite << ": " << (sr.all_passed() ? "pass" : "fail") << " (" << passed
            << "/" << sr.reports.size() << " properties)\n";
  if (!out_path.empty() && !write_json(out_path, sr.to_json())) {
    std::cerr << "fnk theorems: cannot write " << out_path << "\n";
    return kExitIo;
  }
  return sr.all_passed() ? 0 : kExitFail;
}

int cmd_equilibrium(const std::string& neg_arg, double tol) {
  nlohmann::json j = parse_expr(neg_arg);
  std::string kind = kind_of(j);
  if (unit_neg_kind(kind)) {
    fnk::EquilibriumResult r =
        fnk::equilibrium(fnk::UnitNegation::from_json(j), tol > 0 ? tol : fnk::kSolverTol);
    switch (r.kind) {
      case fnk::EquilibriumResult::Kind::point: std::cout << num(r.point) << "\n"; break;
      case fnk::EquilibriumResult::Kind::none:
        std::cout << "none: " << r.diagnostics << "\n";
        break;
      case fnk::EquilibriumResult::Kind::undetermined:
        std::cout << "undetermined: " << r.diagnostics << "\n";
        break;
    }
    return 0;
  }
  if (!nd_neg_kind(kind)) throw fnk::parse_error("unknown negation kind \"" + kind + "\"");
  fnk::NDEquilibriumResult r =
      fnk::nd_equilibrium(fnk::NDimNegation::from_json(j), tol > 0 ? tol : fnk::kSolverTol);
  switch (r.kind) {
    case fnk::NDEquilibriumResult::Kind::point:
      if (fnk::is_degenerate(*r.point))
        std::cout << "/" << num(r.point->project(1)) << "/\n";
      else
        std::cout << fnk::format_interval(*r.point) << "\n";
      break;
    case fnk::NDEquilibriumResult::Kind::none:
      std::cout << "none: " << r.diagnostics << "\n";
      break;
    case fnk::NDEquilibriumResult::Kind::undetermined:
      std::cout << "undetermined: " << r.diagnostics << "\n";
      break;
  }
  return 0;
}

int cmd_complement(const std::string& set_path, const std::string& neg_arg,
                   const std::string& out_path, const std::string& format) {
  fnk::SetFormat fmt = format == "json" ? fnk::SetFormat::json : fnk::SetFormat::csv;
  nlohmann::json j = parse_expr(neg_arg);
  std::string kind = kind_of(j);
  if (!nd_neg_kind(kind)) throw fnk::parse_error("unknown negation kind \"" + kind + "\"");
  fnk::NDFuzzySet set = fnk::load_set(set_path, fmt);
  fnk::NDFuzzySet result = fnk::complement(set, fnk::NDimNegation::from_json(j));
  fnk::save_set(result, out_path, fmt);
  std::cout << "complement: " << result.size() << " elements -> " << out_path << "\n";
  return 0;
}

int cmd_grid_info(int n, int m) {
  fnk::SimplexGrid g(n, m);
  long long pts = g.size();
  std::cout << "points: " << pts << "\n";
  std::cout << "pairs: " << pts * pts << "\n";
  std::cout << "step: " << num(g.step()) << "\n";
  std::cout << "axis: " << m << "\n";
  if (pts * pts > fnk::kPairCap)
    std::cout << "note: pair scans sample " << fnk::kPairCap << " of " << pts * pts
              << " pairs\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-dimensional fuzzy negation toolkit"};
  app.name("fnk");
  app.require_subcommand(1);

  std::string neg_arg, auto_arg, point_arg, props_arg, out_path, set_path;
  std::string suite = "all";
  std::string format = "csv";
  int n = 0, m = 0, trials = 0;
  std::uint64_t seed = 0;
  double tol = 0;

  auto* eval = app.add_subcommand("eval", "evaluate an expression at a point");
  auto* eval_neg = eval->add_option("--neg", neg_arg, "negation expression (JSON or @file)");
  auto* eval_auto = eval->add_option("--auto", auto_arg, "automorphism expression (JSON or @file)");
  eval->add_option("--point", point_arg, "point, e.g. \"0.2,0.5\" or \"/0.3/:3\"")->required();
  eval_neg->excludes(eval_auto);
  eval_auto->excludes(eval_neg);

  auto* check = app.add_subcommand("check", "decide properties of a negation");
  check->add_option("--neg", neg_arg, "negation expression (JSON or @file)")->required();
  check->add_option("--props", props_arg, "comma-separated property list")->required();
  check->add_option("--m", m, "grid resolution (default 11)");
  check->add_option("--tol", tol, "value tolerance (default 1e-9)");
  check->add_option("--out", out_path, "write the JSON report here");

  auto* theorems = app.add_subcommand("theorems", "run a verification suite");
  theorems->add_option("--suite", suite, "suite name (default all)");
  theorems->add_option("--n", n, "restrict to one dimension");
  theorems->add_option("--m", m, "override both grid resolutions");
  theorems->add_option("--trials", trials, "specimens per dimension");
  theorems->add_option("--seed", seed, "base seed (default 0)");
  theorems->add_option("--tol", tol, "value tolerance override");
  theorems->add_option("--out", out_path, "write the JSON report here");

  auto* equil = app.add_subcommand("equilibrium", "solve N(x) = x");
  equil->add_option("--neg", neg_arg, "negation expression (JSON or @file)")->required();
  equil->add_option("--tol", tol, "residual tolerance (default 1e-12)");

  auto* compl_cmd = app.add_subcommand("complement", "complement a fuzzy set file");
  compl_cmd->add_option("--set", set_path, "input set file")->required();
  compl_cmd->add_option("--neg", neg_arg, "negation expression (JSON or @file)")->required();
  compl_cmd->add_option("--out", out_path, "output set file")->required();
  compl_cmd->add_option("--format", format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* grid = app.add_subcommand("grid-info", "describe a simplex grid");
  grid->add_option("--n", n, "dimension")->required();
  grid->add_option("--m", m, "axis resolution")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      if (neg_arg.empty() && auto_arg.empty()) {
        std::cerr << "fnk eval: need --neg or --auto\n";
        return kExitUsage;
      }
      return cmd_eval(neg_arg, auto_arg, point_arg);
    }
    if (check->parsed())
      return cmd_check(neg_arg, props_arg, m > 0 ? m : 11, tol > 0 ? tol : fnk::kEps, out_path);
    if (theorems->parsed()) return cmd_theorems(suite, n, m, trials, seed, tol, out_path);
    if (equil->parsed()) return cmd_equilibrium(neg_arg, tol);
    if (compl_cmd->parsed()) return cmd_complement(set_path, neg_arg, out_path, format);
    return cmd_grid_info(n, m);
  } catch (const fnk::parse_error& e) {
    std::cerr << "fnk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fnk::ingestion_error& e) {
    std::cerr << "fnk: " << e.what() << "\n";
    return kExitIo;
  } catch (const fnk::argument_error& e) {
    std::cerr << "fnk: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "fnk: " << e.what() << "\n";
    return kExitDomain;
  }
}
