// qconcur: concurrence-class calculator for multi-qubit states.
//
//   qconcur compute --in state.json [--classes w,ghz,ghzsub,overall,wootters,eof]
//                   [--optimize] [--restarts N] [--iters N] [--seed N]
//                   [--format human|json] [--norm-w X] [--norm-ghz X] [--norm-ghzsub X]
//   qconcur verify  [--seed N] [--norm-*]
//   qconcur sweep   {ghz-mix-q | w-m} [--format human|json] [--norm-*]
//
// Exit codes: 0 success, 1 usage error or failed verification,
//             2 malformed input file, 3 contract violation.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qconcur/concurrence.hpp"
#include "qconcur/optimize.hpp"
#include "qconcur/report_io.hpp"
#include "qconcur/selftest.hpp"
#include "qconcur/state_io.hpp"

namespace {

using namespace qconcur;

constexpr std::uint64_t kDefaultSeed = 17;

enum class OutputFormat { Human, Json };

struct Options {
  std::string input_path;
  std::string classes_arg = "auto";
  std::string sweep_name;
  bool optimize = false;
  int restarts = 32;
  int iters = 200;
  std::uint64_t seed = kDefaultSeed;
  OutputFormat format = OutputFormat::Human;
  std::optional<double> norm_w;
  std::optional<double> norm_ghz;
  std::optional<double> norm_ghzsub;

  NormalizationPolicy policy() const {
    NormalizationPolicy p;
    p.w_override = norm_w;
    p.ghz_override = norm_ghz;
    p.ghz_sub_override = norm_ghzsub;
    return p;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::set<std::string> parse_classes(const std::string& arg, bool pure, int m) {
  std::set<std::string> allowed{"w", "ghz", "ghzsub", "overall", "wootters", "eof"};
  std::set<std::string> out;
  if (arg == "auto" || arg.empty()) {
    out.insert("w");
    if (m >= 3) out.insert("ghz");
    if (m >= 4) out.insert("ghzsub");
    if (m >= 3 && pure) out.insert("overall");
    if (m == 2) {
      out.insert("wootters");
      out.insert("eof");
    }
    return out;
  }
  std::stringstream ss(arg);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (token.empty()) continue;
    if (!allowed.count(token))
      throw CLI::ValidationError("--classes", "unknown class '" + token + "'");
    out.insert(token);
  }
  if (out.empty()) throw CLI::ValidationError("--classes", "no classes selected");
  return out;
}

std::vector<ClassOperator> operator_family(const std::string& cls, int m) {
  if (cls == "w") return w_class_operator_set(m);
  if (cls == "ghz") return ghz_full_operator_set(m);
  return ghz_sub_operator_set(m);
}

const char* class_display(const std::string& cls) {
  if (cls == "w") return "W";
  if (cls == "ghz") return "GHZ";
  if (cls == "ghzsub") return "GHZ_SUB";
  if (cls == "overall") return "OVERALL";
  if (cls == "wootters") return "WOOTTERS";
  return "EOF";
}

void print_human_report(const ConcurrenceReport& r) {
  std::cout << "class " << r.class_name << "  (" << aggregation_rule_name(r.aggregation_rule)
            << ", normalization " << fmt(r.normalization_used) << ")\n";
  for (const auto& [sites, value] : r.per_operator) {
    std::cout << "  sites (";
    for (std::size_t i = 0; i < sites.size(); ++i) std::cout << (i ? "," : "") << sites[i];
    std::cout << ")  " << fmt(value) << "\n";
  }
  if (r.optimizer)
    std::cout << "  optimized: seed " << r.optimizer->seed << ", restarts "
              << r.optimizer->restarts << ", iterations " << r.optimizer->iterations << "\n";
  std::cout << "  aggregate = " << fmt(r.aggregate) << (r.heuristic ? "  (heuristic)" : "")
            << "\n";
}

void print_state_summary(const PureState& psi) {
  std::vector<int> idx(psi.amplitudes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::norm(psi.amplitudes[static_cast<std::size_t>(a)]) >
           std::norm(psi.amplitudes[static_cast<std::size_t>(b)]);
  });
  std::cout << "leading amplitudes:\n";
  for (std::size_t k = 0; k < idx.size() && k < 8; ++k) {
    const Complex a = psi.amplitudes[static_cast<std::size_t>(idx[k])];
    if (std::abs(a) < 1e-12) break;
    std::cout << "  " << ket_label(idx[k], psi.qubit_count) << "  " << fmt(a.real());
    if (a.imag() != 0.0) std::cout << (a.imag() > 0 ? " + " : " - ") << fmt(std::abs(a.imag())) << "i";
    std::cout << "\n";
  }
}

int cmd_compute(const Options& opt) {
  const StateFile loaded = load_state(opt.input_path);
  const bool pure = std::holds_alternative<PureState>(loaded);
  const int m = pure ? std::get<PureState>(loaded).qubit_count
                     : std::get<Ensemble>(loaded).qubit_count();
  const std::set<std::string> classes = parse_classes(opt.classes_arg, pure, m);
  const NormalizationPolicy policy = opt.policy();

  std::optional<DensityMatrix> rho;
  const auto density = [&]() -> const DensityMatrix& {
    if (!rho) rho = pure ? to_density(std::get<PureState>(loaded)) : densify(std::get<Ensemble>(loaded));
    return *rho;
  };

  std::vector<ConcurrenceReport> reports;
  std::optional<double> overall, wootters, eof;
  std::optional<LocalUnitary> best_unitary;

  for (const std::string& cls : {std::string("w"), std::string("ghz"), std::string("ghzsub")}) {
    if (!classes.count(cls)) continue;
    if (cls == "ghz" && m < 3)
      throw ContractViolation("class GHZ requires m >= 3, input has m = " + std::to_string(m));
    if (cls == "ghzsub" && m < 4)
      throw ContractViolation("class GHZ_SUB requires m >= 4, input has m = " + std::to_string(m));
    ConcurrenceReport r;
    if (pure) {
      const PureState& psi = std::get<PureState>(loaded);
      if (cls == "w")
        r = w_class_pure(psi, policy);
      else if (cls == "ghz" && opt.optimize) {
        OptimizeBudget budget{opt.restarts, opt.iters, opt.seed};
        auto [optimized, lu] = optimize_ghz_local_unitaries(psi, policy, budget);
        r = std::move(optimized);
        best_unitary = std::move(lu);
      } else if (cls == "ghz")
        r = ghz_class_pure(psi, policy);
      else
        r = ghz_sub_class_pure(psi, policy);
    } else {
      r = mixed_class_concurrence(density(), operator_family(cls, m));
      r.class_name = class_display(cls);
    }
    reports.push_back(std::move(r));
  }

  if (classes.count("overall")) {
    if (!pure) throw ContractViolation("class OVERALL is defined for pure states only");
    overall = overall_concurrence(std::get<PureState>(loaded), policy);
  }
  if (classes.count("wootters")) wootters = wootters_concurrence_2q(density());
  if (classes.count("eof")) eof = entanglement_of_formation_2q(density());
  if (opt.optimize && !pure)
    throw ContractViolation("--optimize applies to pure states only");

  if (opt.format == OutputFormat::Json) {
    std::cout << "{\n";
    std::cout << "  \"command\": \"compute\",\n";
    std::cout << "  \"input\": \"" << opt.input_path << "\",\n";
    std::cout << "  \"kind\": \"" << (pure ? "pure" : "ensemble") << "\",\n";
    std::cout << "  \"qubits\": " << m << ",\n";
    std::cout << "  \"seed\": " << opt.seed << ",\n";
    std::cout << "  \"classes\": [";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << "\n" << report_to_json(reports[i], 4);
    }
    std::cout << "\n  ]";
    if (overall) std::cout << ",\n  \"overall\": {\"value\": " << fmt(*overall) << ", \"heuristic\": true}";
    if (wootters) std::cout << ",\n  \"wootters\": " << fmt(*wootters);
    if (eof) std::cout << ",\n  \"entanglement_of_formation\": " << fmt(*eof);
    std::cout << "\n}\n";
    return 0;
  }

  std::cout << "input: " << opt.input_path << "  (" << (pure ? "pure" : "ensemble") << ", " << m
            << (m == 1 ? " qubit)\n" : " qubits)\n");
  if (pure) print_state_summary(std::get<PureState>(loaded));
  for (const ConcurrenceReport& r : reports) print_human_report(r);
  if (overall)
    std::cout << "class OVERALL\n  aggregate = " << fmt(*overall) << "  (heuristic)\n";
  if (wootters) std::cout << "wootters concurrence = " << fmt(*wootters) << "\n";
  if (eof) std::cout << "entanglement of formation = " << fmt(*eof) << "\n";
  return 0;
}

int cmd_verify(const Options& opt) {
  const std::vector<SelfCheck> checks = run_self_checks(opt.policy(), opt.seed);
  std::size_t width = 0;
  for (const SelfCheck& c : checks) width = std::max(width, c.name.size());
  const SelfCheck* first_failure = nullptr;
  for (const SelfCheck& c : checks) {
    std::printf("[%s] %-*s  expected %-12.6g actual %-12.6g tol %.1e\n", c.pass ? "PASS" : "FAIL",
                static_cast<int>(width), c.name.c_str(), c.expected, c.actual, c.tolerance);
    if (!c.pass && !first_failure) first_failure = &c;
  }
  const std::size_t passed =
      static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                             [](const SelfCheck& c) { return c.pass; }));
  std::printf("%zu/%zu checks passed\n", passed, checks.size());
  if (first_failure) {
    std::printf("first failure: %s (expected %.12g, actual %.12g)\n", first_failure->name.c_str(),
                first_failure->expected, first_failure->actual);
    return 1;
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  std::vector<std::pair<double, double>> rows;
  if (opt.sweep_name == "ghz-mix-q") {
    const std::vector<ClassOperator> ops = ghz_full_operator_set(3);
    for (int k = 0; k <= 40; ++k) {
      const double q = k / 40.0;
      std::vector<Ensemble::Member> members;
      if (q > 0.0) members.push_back({q, ghz_state(3, +1)});
      if (q < 1.0) members.push_back({1.0 - q, ghz_state(3, -1)});
      rows.emplace_back(q, mixed_class_concurrence(densify(Ensemble(std::move(members))), ops).aggregate);
    }
  } else if (opt.sweep_name == "w-m") {
    for (int m = 2; m <= 8; ++m)
      rows.emplace_back(m, w_class_pure(w_state(m), opt.policy()).aggregate);
  } else {
    throw CLI::ValidationError("sweep", "unknown sweep '" + opt.sweep_name +
                                            "' (expected ghz-mix-q or w-m)");
  }

  if (opt.format == OutputFormat::Json) {
    std::cout << "{\n  \"command\": \"sweep\",\n  \"name\": \"" << opt.sweep_name
              << "\",\n  \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << "\n    [" << fmt(rows[i].first) << ", " << fmt(rows[i].second) << "]";
    }
    std::cout << "\n  ]\n}\n";
  } else {
    std::cout << "# sweep: " << opt.sweep_name << "\n";
    std::cout << "# " << (opt.sweep_name == "w-m" ? "m" : "q") << "\taggregate\n";
    for (const auto& [param, value] : rows) {
      char pbuf[32];
      std::snprintf(pbuf, sizeof pbuf, "%g", param);
      std::cout << pbuf << "\t" << fmt(value) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env_seed = std::getenv("QCONCUR_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env_seed, &end, 10);
    if (end && *end == '\0') opt.seed = v;
  }

  CLI::App app{"Concurrence classes for multi-qubit pure and mixed states"};
  app.require_subcommand(1);
  std::string format_arg = "human";

  const auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--seed", opt.seed, "Deterministic seed (also via QCONCUR_SEED)");
    cmd->add_option("--norm-w", opt.norm_w, "Override the W-class normalization constant");
    cmd->add_option("--norm-ghz", opt.norm_ghz, "Override the GHZ-class normalization constant");
    cmd->add_option("--norm-ghzsub", opt.norm_ghzsub,
                    "Override the sub-GHZ-class normalization constant");
    if (with_format)
      cmd->add_option("--format", format_arg, "Output format: human or json")
          ->check(CLI::IsMember({"human", "json"}));
  };

  CLI::App* compute = app.add_subcommand("compute", "Evaluate concurrence classes for a state file");
  compute->add_option("--in", opt.input_path, "State file (pure or ensemble)")->required();
  compute->add_option("--classes", opt.classes_arg,
                      "Comma-separated subset of w,ghz,ghzsub,overall,wootters,eof (default: all applicable)");
  compute->add_flag("--optimize", opt.optimize, "Maximize the GHZ class over local unitaries");
  compute->add_option("--restarts", opt.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  compute->add_option("--iters", opt.iters, "Optimizer iterations per restart")
      ->check(CLI::PositiveNumber);
  add_common(compute, true);

  CLI::App* verify = app.add_subcommand("verify", "Run the built-in verification checks");
  add_common(verify, false);

  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate a named one-parameter family");
  sweep->add_option("name", opt.sweep_name, "Sweep name: ghz-mix-q or w-m")->required();
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  opt.format = format_arg == "json" ? OutputFormat::Json : OutputFormat::Human;

  try {
    if (compute->parsed()) return cmd_compute(opt);
    if (verify->parsed()) return cmd_verify(opt);
    return cmd_sweep(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
