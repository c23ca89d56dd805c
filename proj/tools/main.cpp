// Apache License, Version 2.0, refer to LICENSE.txt
//
// lrtx: batch front end for the exponent solvers.
//
// Subcommands: exponents, mismatched, stein, worst-case, sensitivity,
// figure2. Configuration comes from an optional JSON document (--config
// FILE, or '-' for stdin) with per-field flag overrides. Results go to
// stdout or --out as CSV or JSON.
//
// Exit codes: 0 success, 2 config error, 3 solver non-convergence,
// 4 infeasible problem.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"
#include "lrtx/lrt.hpp"
#include "lrtx/mismatch.hpp"
#include "lrtx/oracle.hpp"
#include "lrtx/sensitivity.hpp"
#include "lrtx/worst_case.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInfeasible = 4;

struct ExperimentConfig {
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> phat1 = {0.9, 0.1};
  std::vector<double> phat2 = {0.2, 0.8};
  std::string gamma = "auto_bayes";  // number, "auto_bayes" or "auto_stein"
  std::vector<double> radii;
  double epsilon = 0.1;
  std::vector<std::int64_t> n_list = {100, 500, 2000};
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  std::int64_t mc_trials = 0;  // stein: optional Monte Carlo column
  int grid_points = 100;       // sensitivity scan resolution
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(field + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const std::string& field) {
  std::vector<std::int64_t> out;
  for (double v : parse_double_list(text, field)) {
    if (v < 1 || v != std::floor(v)) {
      throw ConfigError(field + ": expected positive integers");
    }
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

void apply_json_config(const std::string& text, ExperimentConfig& cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config JSON: expected an object");

  const auto get_vector = [&](const char* key, std::vector<double>& dst) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_array()) {
      throw ConfigError(std::string(key) + ": expected an array");
    }
    dst = doc[key].get<std::vector<double>>();
  };
  get_vector("p1", cfg.p1);
  get_vector("p2", cfg.p2);
  get_vector("phat1", cfg.phat1);
  get_vector("phat2", cfg.phat2);
  if (doc.contains("gamma")) {
    if (doc["gamma"].is_number()) {
      cfg.gamma = doc["gamma"].dump();
    } else if (doc["gamma"].is_string()) {
      cfg.gamma = doc["gamma"].get<std::string>();
    } else {
      throw ConfigError("gamma: expected a number or mode string");
    }
  }
  get_vector("radii", cfg.radii);
  if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
  if (doc.contains("n")) {
    if (doc["n"].is_array()) {
      cfg.n_list = doc["n"].get<std::vector<std::int64_t>>();
    } else {
      cfg.n_list = {doc["n"].get<std::int64_t>()};
    }
  }
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
  if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
  if (doc.contains("mc_trials")) cfg.mc_trials = doc["mc_trials"].get<std::int64_t>();
  if (doc.contains("grid_points")) cfg.grid_points = doc["grid_points"].get<int>();
}

struct ResolvedConfig {
  lrtx::Distribution p1;
  lrtx::Distribution p2;
  lrtx::Distribution phat1;
  lrtx::Distribution phat2;
  ExperimentConfig raw;
};

ResolvedConfig resolve(const ExperimentConfig& cfg) {
  const auto make = [&](const std::vector<double>& v, const char* field) {
    try {
      return lrtx::Distribution(v);
    } catch (const std::exception& e) {
      throw ConfigError(std::string(field) + ": " + e.what());
    }
  };
  lrtx::Distribution phat1 = make(cfg.phat1, "phat1");
  lrtx::Distribution phat2 = make(cfg.phat2, "phat2");
  // Generating distributions default to the test pair (identity mismatch).
  lrtx::Distribution p1 = cfg.p1.empty() ? phat1 : make(cfg.p1, "p1");
  lrtx::Distribution p2 = cfg.p2.empty() ? phat2 : make(cfg.p2, "p2");

  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 0.5)) {
    throw ConfigError("epsilon: must lie in (0, 1/2)");
  }
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (cfg.radii[i] < 0.0) throw ConfigError("radii: entries must be >= 0");
    if (i > 0 && cfg.radii[i] < cfg.radii[i - 1]) {
      throw ConfigError("radii: entries must be ascending");
    }
  }
  for (auto n : cfg.n_list) {
    if (n < 1) throw ConfigError("n: entries must be >= 1");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format: expected 'csv' or 'json'");
  }
  if (cfg.grid_points < 3) throw ConfigError("grid_points: must be >= 3");
  if (cfg.mc_trials < 0) throw ConfigError("mc_trials: must be >= 0");
  return {std::move(p1), std::move(p2), std::move(phat1), std::move(phat2), cfg};
}

// Threshold resolution: a literal number, the Bayes default 0, or the
// limiting fixed-error-rate threshold llr_gap(p1 | test pair).
double resolve_gamma(const ResolvedConfig& rc, const lrtx::Distribution& phat1,
                     const lrtx::Distribution& phat2) {
  const std::string& g = rc.raw.gamma;
  if (g == "auto_bayes") return 0.0;
  if (g == "auto_stein") return lrtx::llr_gap(rc.p1, phat1, phat2);
  try {
    std::size_t pos = 0;
    const double v = std::stod(g, &pos);
    if (pos != g.size()) throw std::invalid_argument(g);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("gamma: expected a number, 'auto_bayes' or 'auto_stein'");
  }
}

// ---- output ---------------------------------------------------------------

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<json> rows;  // each row is a json array matching columns
};

std::string format_cell(const json& cell) {
  if (cell.is_null()) return "nan";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", cell.get<double>());
  return buf;
}

void write_table(const Table& table, const std::string& format,
                 std::ostream& os) {
  if (format == "json") {
    json doc;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    os << doc.dump() << "\n";
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_cell(row[i]);
    }
    os << "\n";
  }
}

void append_vector_columns(std::vector<std::string>& columns,
                           const std::string& prefix, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    columns.push_back(prefix + "_" + std::to_string(i));
  }
}

// ---- subcommands ----------------------------------------------------------

Table cmd_exponents(const ResolvedConfig& rc) {
  const double gamma = resolve_gamma(rc, rc.p1, rc.p2);
  const lrtx::ExponentPair pair = lrtx::matched_exponents(rc.p1, rc.p2, gamma);
  const double d1 = lrtx::dual_exponent_1(rc.p1, rc.p2, gamma);
  const double d2 = lrtx::dual_exponent_2(rc.p1, rc.p2, gamma);

  Table t;
  t.command = "exponents";
  t.columns = {"gamma",   "e1",   "e2",      "e1_dual", "e2_dual",
               "gap1",    "gap2", "lambda1", "lambda2"};
  const std::size_t k = rc.p1.alphabet_size();
  append_vector_columns(t.columns, "q1", k);
  append_vector_columns(t.columns, "q2", k);

  json row = json::array({gamma, pair.e1, pair.e2, d1, d2,
                          std::abs(pair.e1 - d1), std::abs(pair.e2 - d2),
                          pair.lambda1, pair.lambda2});
  for (std::size_t i = 0; i < k; ++i) row.push_back(pair.q1[i]);
  for (std::size_t i = 0; i < k; ++i) row.push_back(pair.q2[i]);
  t.rows.push_back(std::move(row));
  return t;
}

Table cmd_mismatched(const ResolvedConfig& rc) {
  const double gamma = resolve_gamma(rc, rc.phat1, rc.phat2);
  const lrtx::MismatchedTest test(rc.phat1, rc.phat2, gamma);
  const lrtx::ExponentSolution s1 = lrtx::mismatched_exponent_1(rc.p1, test);
  const lrtx::ExponentSolution s2 = lrtx::mismatched_exponent_2(rc.p2, test);
  const double d1 = lrtx::mismatched_dual_1(rc.p1, test);
  const double d2 = lrtx::mismatched_dual_2(rc.p2, test);
  const bool cond1 = lrtx::llr_gap(rc.p1, rc.phat1, rc.phat2) <= gamma;
  const bool cond2 = lrtx::llr_gap(rc.p2, rc.phat1, rc.phat2) >= gamma;

  // Does the mismatched pair land on the matched tradeoff curve of the
  // generating pair?
  bool on_curve = false;
  if (rc.p1 == rc.p2) {
    on_curve = true;  // both exponents vanish identically
  } else {
    const auto e2_matched = lrtx::matched_e2_for_e1(rc.p1, rc.p2, s1.exponent);
    if (e2_matched.has_value()) {
      on_curve = std::abs(*e2_matched - s2.exponent) <= 1e-6;
    }
  }

  Table t;
  t.command = "mismatched";
  t.columns = {"gamma_hat", "e1",      "e2",    "e1_dual", "e2_dual",
               "lambda1",   "lambda2", "cond1", "cond2",   "bayes",
               "on_curve"};
  const std::size_t k = rc.p1.alphabet_size();
  append_vector_columns(t.columns, "q1", k);
  append_vector_columns(t.columns, "q2", k);

  json row = json::array({gamma, s1.exponent, s2.exponent, d1, d2, s1.lambda,
                          s2.lambda, cond1, cond2,
                          std::min(s1.exponent, s2.exponent), on_curve});
  for (std::size_t i = 0; i < k; ++i) row.push_back(s1.achiever[i]);
  for (std::size_t i = 0; i < k; ++i) row.push_back(s2.achiever[i]);
  t.rows.push_back(std::move(row));
  return t;
}

Table cmd_stein(const ResolvedConfig& rc) {
  Table t;
  t.command = "stein";
  t.columns = {"n",        "threshold", "variance", "c_hat2",
               "exponent", "mc_eps1",   "mc_se1"};
  for (const std::int64_t n : rc.raw.n_list) {
    const lrtx::SteinReport rep = lrtx::stein_mismatched(
        rc.p1, rc.p2, rc.phat1, rc.phat2, rc.raw.epsilon, n);
    json row =
        json::array({n, rep.threshold, rep.variance, rep.c_hat2, rep.exponent});
    if (rc.raw.mc_trials > 0) {
      lrtx::oracle::SimulationConfig sim;
      sim.seed = rc.raw.seed;
      sim.trials = rc.raw.mc_trials;
      sim.n = n;
      const lrtx::oracle::MonteCarloResult mc = lrtx::oracle::monte_carlo_errors(
          rc.p1, rc.p2, rc.phat1, rc.phat2, rep.threshold, sim);
      row.push_back(mc.eps1_hat);
      row.push_back(mc.se1);
    } else {
      row.push_back(nullptr);
      row.push_back(nullptr);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_worst_case(const ResolvedConfig& rc) {
  const double gamma = resolve_gamma(rc, rc.phat1, rc.phat2);
  std::vector<double> radii = rc.raw.radii;
  if (radii.empty()) radii = {0.0, 0.001, 0.005, 0.01};

  Table t;
  t.command = "worst_case";
  t.columns = {"hypothesis", "r",    "status",          "exponent",
               "lambda",     "beta", "d_center_pleast", "critical_radius"};
  const std::size_t k = rc.phat1.alphabet_size();
  append_vector_columns(t.columns, "p_least", k);
  append_vector_columns(t.columns, "q_opt", k);

  for (const int hyp : {1, 2}) {
    const double crit = lrtx::critical_radius(rc.phat1, rc.phat2, gamma, hyp);
    const lrtx::Distribution& center = hyp == 1 ? rc.phat1 : rc.phat2;
    for (const double r : radii) {
      const lrtx::WorstCaseSolution w =
          hyp == 1 ? lrtx::worst_case_exponent_1(rc.phat1, rc.phat2, gamma, r)
                   : lrtx::worst_case_exponent_2(rc.phat1, rc.phat2, gamma, r);
      json row = json::array({hyp, r, lrtx::to_string(w.status)});
      if (std::isinf(w.exponent)) {
        row.push_back(nullptr);
      } else {
        row.push_back(w.exponent);
      }
      row.push_back(w.lambda);
      row.push_back(w.beta);
      row.push_back(lrtx::kl(center, w.p_least));
      if (std::isinf(crit)) {
        row.push_back(nullptr);
      } else {
        row.push_back(crit);
      }
      for (std::size_t i = 0; i < k; ++i) row.push_back(w.p_least[i]);
      for (std::size_t i = 0; i < k; ++i) row.push_back(w.q_opt[i]);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table cmd_sensitivity(const ResolvedConfig& rc) {
  const auto rows = lrtx::sensitivity_monotonicity_scan(rc.phat1, rc.phat2,
                                                        rc.raw.grid_points);
  // Reference radius for the quadratic-model diagnostic.
  double r_ref = 1e-4;
  for (const double r : rc.raw.radii) {
    if (r > 0.0) {
      r_ref = r;
      break;
    }
  }

  Table t;
  t.command = "sensitivity";
  t.columns = {"gamma_hat", "lambda", "s1",        "s2",
               "e1",        "e2",     "quad_dev1", "quad_dev2"};
  for (const auto& row : rows) {
    json out = json::array(
        {row.gamma_hat, row.lambda, row.s1, row.s2, row.e1, row.e2});
    for (const int hyp : {1, 2}) {
      try {
        const lrtx::QuadraticResult quad = lrtx::quadratic_worst_case(
            rc.phat1, rc.phat2, row.gamma_hat, r_ref, hyp);
        const double affine = lrtx::taylor_worst_case(
            rc.phat1, rc.phat2, row.gamma_hat, r_ref, hyp, false);
        out.push_back(std::abs(quad.value - affine));
      } catch (const std::domain_error&) {
        out.push_back(nullptr);
      }
    }
    t.rows.push_back(std::move(out));
  }
  return t;
}

// Runs fn(i) for i in [0, count) across a small thread pool; results land in
// index order regardless of scheduling.
template <typename Fn>
void parallel_rows(std::size_t count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(hw, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count;
             i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Table cmd_figure2(const ResolvedConfig& rc) {
  const double gamma = resolve_gamma(rc, rc.phat1, rc.phat2);
  std::vector<double> radii = rc.raw.radii;
  if (radii.empty()) {
    radii.resize(101);
    for (int i = 0; i <= 100; ++i) radii[i] = 0.01 * i / 100.0;
  }

  struct Row {
    double r = 0.0;
    double exact_e1 = 0.0, exact_e2 = 0.0, exact_bayes = 0.0;
    double taylor_e1 = 0.0, taylor_e2 = 0.0, taylor_bayes = 0.0;
    std::string status1, status2;
  };
  std::vector<Row> rows(radii.size());
  parallel_rows(radii.size(), [&](std::size_t i) {
    const double r = radii[i];
    const lrtx::WorstCaseSolution w1 =
        lrtx::worst_case_exponent_1(rc.phat1, rc.phat2, gamma, r);
    const lrtx::WorstCaseSolution w2 =
        lrtx::worst_case_exponent_2(rc.phat1, rc.phat2, gamma, r);
    Row& row = rows[i];
    row.r = r;
    row.exact_e1 = w1.exponent;
    row.exact_e2 = w2.exponent;
    row.exact_bayes = std::min(w1.exponent, w2.exponent);
    row.taylor_e1 = lrtx::taylor_worst_case(rc.phat1, rc.phat2, gamma, r, 1);
    row.taylor_e2 = lrtx::taylor_worst_case(rc.phat1, rc.phat2, gamma, r, 2);
    row.taylor_bayes = std::min(row.taylor_e1, row.taylor_e2);
    row.status1 = lrtx::to_string(w1.status);
    row.status2 = lrtx::to_string(w2.status);
  });

  // Slope diagnostic against the radius-zero Bayes exponent.
  const lrtx::WorstCaseSolution base1 =
      lrtx::worst_case_exponent_1(rc.phat1, rc.phat2, gamma, 0.0);
  const lrtx::WorstCaseSolution base2 =
      lrtx::worst_case_exponent_2(rc.phat1, rc.phat2, gamma, 0.0);
  const double bayes0 = std::min(base1.exponent, base2.exponent);

  Table t;
  t.command = "figure2";
  t.columns = {"r",         "exact_e1",  "exact_e2",     "exact_bayes",
               "taylor_e1", "taylor_e2", "taylor_bayes", "slope_diag",
               "status1",   "status2"};
  for (const Row& row : rows) {
    json out = json::array({row.r, row.exact_e1, row.exact_e2, row.exact_bayes,
                            row.taylor_e1, row.taylor_e2, row.taylor_bayes});
    if (row.r > 0.0) {
      out.push_back((bayes0 - row.exact_bayes) / std::sqrt(row.r));
    } else {
      out.push_back(nullptr);
    }
    out.push_back(row.status1);
    out.push_back(row.status2);
    t.rows.push_back(std::move(out));
  }
  return t;
}

int run(int argc, char** argv) {
  CLI::App app{"Error exponents of (mismatched) likelihood ratio tests"};
  app.require_subcommand(1);

  std::string config_path;
  struct FlagSet {
    std::string p1, p2, phat1, phat2, gamma, radii, n, format, out;
    double epsilon = -1.0;
    std::int64_t seed = -1;
  } flags;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "JSON config file ('-' reads stdin)");
    sub->add_option("--p1", flags.p1, "generating distribution 1 (comma list)");
    sub->add_option("--p2", flags.p2, "generating distribution 2 (comma list)");
    sub->add_option("--phat1", flags.phat1, "test distribution 1 (comma list)");
    sub->add_option("--phat2", flags.phat2, "test distribution 2 (comma list)");
    sub->add_option("--gamma", flags.gamma,
                    "threshold: number, auto_bayes or auto_stein");
    sub->add_option("--radii", flags.radii, "ball radii (comma list)");
    sub->add_option("--epsilon", flags.epsilon, "fixed error rate in (0, 1/2)");
    sub->add_option("--n", flags.n, "blocklengths (comma list)");
    sub->add_option("--seed", flags.seed, "simulation seed");
    sub->add_option("--format", flags.format, "output format: csv or json");
    sub->add_option("--out", flags.out, "output file (default stdout)");
  };

  CLI::App* sub_exponents =
      app.add_subcommand("exponents", "matched exponents, primal and dual");
  CLI::App* sub_mismatched =
      app.add_subcommand("mismatched", "mismatched-test exponent pair");
  CLI::App* sub_stein =
      app.add_subcommand("stein", "fixed-error-rate thresholds and exponent");
  CLI::App* sub_worst =
      app.add_subcommand("worst-case", "least favorable exponents over balls");
  CLI::App* sub_sens =
      app.add_subcommand("sensitivity", "sensitivity coefficient scan");
  CLI::App* sub_fig2 =
      app.add_subcommand("figure2", "worst-case Bayes exponent sweep over r");
  for (CLI::App* sub : {sub_exponents, sub_mismatched, sub_stein, sub_worst,
                        sub_sens, sub_fig2}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::string text;
      if (config_path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
      } else {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
      }
      apply_json_config(text, cfg);
    }
    // Flag overrides.
    if (!flags.p1.empty()) cfg.p1 = parse_double_list(flags.p1, "--p1");
    if (!flags.p2.empty()) cfg.p2 = parse_double_list(flags.p2, "--p2");
    if (!flags.phat1.empty()) cfg.phat1 = parse_double_list(flags.phat1, "--phat1");
    if (!flags.phat2.empty()) cfg.phat2 = parse_double_list(flags.phat2, "--phat2");
    if (!flags.gamma.empty()) cfg.gamma = flags.gamma;
    if (!flags.radii.empty()) cfg.radii = parse_double_list(flags.radii, "--radii");
    if (flags.epsilon >= 0.0) cfg.epsilon = flags.epsilon;
    if (!flags.n.empty()) cfg.n_list = parse_int_list(flags.n, "--n");
    if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (!flags.format.empty()) cfg.format = flags.format;
    if (!flags.out.empty()) cfg.out = flags.out;

    const ResolvedConfig rc = resolve(cfg);

    Table table;
    if (sub_exponents->parsed()) table = cmd_exponents(rc);
    if (sub_mismatched->parsed()) table = cmd_mismatched(rc);
    if (sub_stein->parsed()) table = cmd_stein(rc);
    if (sub_worst->parsed()) table = cmd_worst_case(rc);
    if (sub_sens->parsed()) table = cmd_sensitivity(rc);
    if (sub_fig2->parsed()) table = cmd_figure2(rc);

    if (rc.raw.out.empty()) {
      write_table(table, rc.raw.format, std::cout);
    } else {
      std::ofstream out(rc.raw.out, std::ios::binary);
      if (!out) throw ConfigError("cannot open output file: " + rc.raw.out);
      write_table(table, rc.raw.format, out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lrtx::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lrtx::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
