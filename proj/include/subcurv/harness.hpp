#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace subcurv {

struct AlgoResult {
  double value = 0;
  std::optional<double> ratio;  // present iff exact OPT was computed and positive
};

/// One experiment cell: a generated instance, the algorithms run on it, and
/// every curvature / certificate quantity computed for it.
struct ExperimentRecord {
  std::string suite;      // tier1 | maxcut | moderate | lambda_sweep | custom
  std::string objective;  // exp_design | coverage | feature_selection | maxcut | gclin
  std::string family;     // maxcut graph family, otherwise empty
  int n = 0;
  int k = 0;
  double cost_scale = 0;
  std::optional<double> lambda;
  std::uint64_t seed = 0;

  std::map<std::string, AlgoResult> algos;

  std::optional<double> opt_value;
  std::optional<double> rho;
  bool rho_heuristic = false;
  std::optional<double> alpha_g;        // certificate-grade total curvature of g
  std::optional<double> alpha_analytic; // closed-form value for the family
  std::optional<double> c_f;
  std::optional<double> c_g;
  std::optional<double> c_g_raw;
  std::optional<double> r_hat;
  std::optional<double> r_opt_aware;
  std::optional<double> s_hat;
  bool s_formal = false;
  std::optional<double> guarantee_theorem;
  std::optional<double> guarantee_clipped;
  std::optional<double> guarantee_unclipped;
  std::optional<double> guarantee_cert;
  std::optional<double> hfwk;
  std::optional<bool> monotone;
  std::optional<double> proxy_curvature;
  std::optional<double> reference_bound;
  bool proxy_diagnostic_only = false;

  int prune_events = 0;
  std::uint64_t oracle_queries = 0;
  double wall_time_ms = 0;  // excluded from deterministic reports
  bool partial = false;

  nlohmann::json to_json(bool include_timing) const;
  static ExperimentRecord from_json(const nlohmann::json& j);
};

/// Generic sweep description; the named suites below are presets of this.
struct SweepConfig {
  std::string suite = "custom";
  std::string objective;
  int n = 0;
  int k = 0;
  nlohmann::json family_params = nlohmann::json::object();
  std::vector<double> cost_scales;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algorithms;
  bool compute_opt = true;
  bool compute_curvature = true;
  bool verify = true;

  nlohmann::json to_json() const;
  static SweepConfig from_json(const nlohmann::json& j);
};

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

struct Tier1Options {
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  bool verify = true;
};
/// Small-instance suite: n=20, k=5, exact OPT, three decomposable families,
/// seven cost scales each.
std::vector<ExperimentRecord> run_tier1(const Tier1Options& opts = {});

struct MaxcutOptions {
  int num_seeds = 20;
  bool verify = true;
};
/// Cut suite: n in {16,20}, k in {n/4, n/3, n/2}, planted-distractor and
/// Erdos-Renyi families, graph RNG seeded seed*1000 + n*100 + k.
std::vector<ExperimentRecord> run_maxcut_suite(const MaxcutOptions& opts = {});

struct ModerateOptions {
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  bool compute_removal_certificate = true;
};
/// Larger instances without exact OPT: trajectory diagnostics plus the
/// heuristic-baseline bound.
std::vector<ExperimentRecord> run_moderate(const ModerateOptions& opts = {});

struct LambdaSweepOptions {
  int n = 12;
  int k = 6;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> lambdas{0.1, 0.25, 0.5, 0.75, 1.0, 1.5};
  bool verify = true;
};
/// Redundancy-weight sweep on synthetic similarity instances with exact OPT;
/// reports the trajectory-curvature proxy against the 2*lambda reference.
std::vector<ExperimentRecord> run_lambda_sweep(const LambdaSweepOptions& opts = {});

/// Re-checks the guarantee and certificate inequalities stored in records;
/// throws with diagnostics on any violation.
void verify_records(const std::vector<ExperimentRecord>& records);

/// Deterministic report in csv, json, or markdown. Records are ordered by
/// (suite, objective, family, n, k, cost/lambda, seed); timing fields are
/// excluded unless requested.
std::string emit_report(std::vector<ExperimentRecord> records, const std::string& format,
                        bool include_timing = false);

std::vector<ExperimentRecord> records_from_json(const nlohmann::json& j);

}  // namespace subcurv
