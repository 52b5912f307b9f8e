// mirrorflux: grid evaluation, self-check and scenario listing.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mirrorflux/bogolubov.hpp"
#include "mirrorflux/scenarios.hpp"
#include "run_config.hpp"
#include "self_check.hpp"

namespace {

using namespace mirrorflux;
using namespace mirrorflux::cli;

constexpr int kExitConfig = 1;
constexpr int kExitCoverage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCheck = 4;

int cmd_run(const std::string& config_path, const std::map<std::string, std::string>& flags) {
  KeyValues kv;
  if (!config_path.empty()) kv = read_config_file(config_path);
  for (const auto& [k, v] : flags) kv[k] = v;
  const RunConfig config = parse_run_config(kv);
  write_run(config, render_run(config));
  return 0;
}

int cmd_check(const std::vector<std::string>& overrides, double perturbation) {
  CheckOptions opt;
  opt.perturbation = perturbation;
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE, got '" + o + "'");
    const KeyValues kv = {{o.substr(0, eq), o.substr(eq + 1)}};
    char* end = nullptr;
    const std::string& val = kv.begin()->second;
    const double t = std::strtod(val.c_str(), &end);
    if (val.empty() || end != val.c_str() + val.size()) {
      throw ConfigError("--tol " + kv.begin()->first + ": expected a number, got '" + val + "'");
    }
    opt.tolerances[kv.begin()->first] = t;
  }
  bool ok = true;
  for (const CheckResult& r : run_checks(opt)) {
    std::printf("%-48s residual %.3e  tolerance %.1e  %s\n", r.name.c_str(), r.residual,
                r.tolerance, r.passed ? "PASS" : "FAIL");
    ok = ok && r.passed;
  }
  std::printf("%s\n", ok ? "all checks passed" : "some checks FAILED");
  return ok ? 0 : kExitCheck;
}

int cmd_list(bool json) {
  const auto& infos = list_scenarios();
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : infos) {
      nlohmann::json params = nlohmann::json::array();
      for (const auto& p : s.params) {
        params.push_back({{"name", p.name},
                          {"type", "real"},
                          {"constraint", "> 0"},
                          {"default", p.default_value},
                          {"affects_result", p.affects_result},
                          {"description", p.description}});
      }
      out.push_back({{"name", s.name},
                     {"description", s.description},
                     {"default_chart", s.default_chart},
                     {"params", params}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& s : infos) {
    std::cout << s.name << "\n  " << s.description << "\n  default chart: " << s.default_chart
              << "\n";
    for (const auto& p : s.params) {
      std::cout << "  param " << p.name << " (real > 0, default " << p.default_value
                << "): " << p.description << "\n";
    }
  }
  return 0;
}

struct BogolubovArgs {
  std::string chart_a = "minkowski", family_a = "boost_eigen";
  std::string chart_b = "rindler", family_b = "plane_wave";
  double fmin = 0.1, fmax = 10.0, width = 0.5, abs_tol = 1e-8;
  // wide default packets never fit a grown window; growing only costs time
  double window_growth = 1.0;
  int n = 32, nodes = 129;
  std::string output = "-";
};

ModeBasis basis_from(const std::string& chart, const std::string& family,
                     const BogolubovArgs& a) {
  ConformalChart c = chart == "minkowski" ? minkowski_chart()
                     : chart == "rindler" ? rindler_chart()
                                          : throw ConfigError("unknown basis chart '" + chart + "'");
  ModeFamily f = family == "plane_wave"    ? ModeFamily::plane_wave
                 : family == "boost_eigen" ? ModeFamily::boost_eigen
                                           : throw ConfigError("unknown mode family '" + family + "'");
  return make_mode_basis(c, log_spaced(a.fmin, a.fmax, a.n), a.width, f);
}

int cmd_bogolubov(const BogolubovArgs& args) {
  const ModeBasis a = basis_from(args.chart_a, args.family_a, args);
  const ModeBasis b = basis_from(args.chart_b, args.family_b, args);
  QuadratureSpec spec;
  spec.abs_tol = args.abs_tol;
  spec.frequency_nodes = args.nodes;
  spec.max_window_growth = args.window_growth;
  const BogolubovPair p = compute_coefficients(a, b, spec);
  auto matrix = [](const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < m.cols; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json out;
  out["basis_a"] = {{"chart", args.chart_a}, {"family", args.family_a}};
  out["basis_b"] = {{"chart", args.chart_b}, {"family", args.family_b}};
  out["frequencies"] = log_spaced(args.fmin, args.fmax, args.n);
  out["packet_width"] = args.width;
  out["row_frequencies"] = p.row_frequencies;
  out["alpha"] = matrix(p.alpha);
  out["beta"] = matrix(p.beta);
  nlohmann::json n = nlohmann::json::array(), ne = nlohmann::json::array(),
                 norm = nlohmann::json::array();
  for (std::size_t j = 0; j < p.alpha.rows; ++j) {
    n.push_back(expected_number(p, j));
    ne.push_back(expected_number_error(p, j));
    norm.push_back(row_normalization(p, j));
  }
  out["expected_number"] = n;
  out["expected_number_error"] = ne;
  out["row_normalization"] = norm;
  out["discretization_error"] = p.discretization_error;
  out["truncated"] = p.truncated;
  out["unconverged"] = p.unconverged;
  const std::string text = out.dump(2) + "\n";
  if (args.output == "-") {
    std::cout << text;
  } else {
    std::ofstream f(args.output, std::ios::binary);
    if (!f) throw IoError("cannot open output file " + args.output);
    f << text;
    if (!f) throw IoError("cannot write output file " + args.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalized stress tensor of a 1+1D massless scalar with mirrors"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate a scenario on a grid");
  std::string config_path;
  run->add_option("--config", config_path, "flat key=value config file");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const std::string& key : run_keys()) {
    flag_opts[key] = run->add_option("--" + key, flag_values[key], "overrides '" + key + "'");
  }

  auto* check = app.add_subcommand("check", "run the invariant suites");
  std::vector<std::string> tol_overrides;
  double perturbation = 0.0;
  check->add_option("--tol", tol_overrides, "tolerance override NAME=VALUE (repeatable)");
  check->add_option("--perturb", perturbation,
                    "test hook: relative perturbation of the reference constant 1/(48 pi)");

  auto* list = app.add_subcommand("list-scenarios", "list scenarios and parameters");
  bool as_json = false;
  list->add_flag("--json", as_json, "machine-readable output");

  auto* bog = app.add_subcommand("bogolubov", "export Bogolubov coefficients as JSON");
  BogolubovArgs bargs;
  bog->add_option("--chart-a", bargs.chart_a, "basis A chart (minkowski|rindler)");
  bog->add_option("--family-a", bargs.family_a, "basis A family (plane_wave|boost_eigen)");
  bog->add_option("--chart-b", bargs.chart_b, "basis B chart (minkowski|rindler)");
  bog->add_option("--family-b", bargs.family_b, "basis B family (plane_wave|boost_eigen)");
  bog->add_option("--fmin", bargs.fmin, "lowest packet frequency");
  bog->add_option("--fmax", bargs.fmax, "highest packet frequency");
  bog->add_option("--n", bargs.n, "number of log-spaced packets");
  bog->add_option("--width", bargs.width, "packet width in log-frequency");
  bog->add_option("--abs-tol", bargs.abs_tol, "quadrature absolute tolerance");
  bog->add_option("--nodes", bargs.nodes, "minimum log-frequency nodes per packet (odd)");
  bog->add_option("--max-window-growth", bargs.window_growth,
                  "largest factor a packet window may grow by to capture its tail");
  bog->add_option("--output", bargs.output, "output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      std::map<std::string, std::string> given;
      for (const auto& [key, opt] : flag_opts) {
        if (opt->count() > 0) given[key] = flag_values[key];
      }
      return cmd_run(config_path, given);
    }
    if (*check) return cmd_check(tol_overrides, perturbation);
    if (*list) return cmd_list(as_json);
    if (*bog) return cmd_bogolubov(bargs);
  } catch (const CoverageError& e) {
    std::fprintf(stderr, "coverage error: %s\n", e.what());
    return kExitCoverage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
