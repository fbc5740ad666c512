// Command-line surface for the submodular curvature toolkit.
//
// Exit codes: 0 success, 1 validation failure, 2 invariant violation detected
// during a verification pass. Errors are emitted as JSON on stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subcurv/certificates.hpp"
#include "subcurv/checks.hpp"
#include "subcurv/continuous.hpp"
#include "subcurv/curvature.hpp"
#include "subcurv/exact.hpp"
#include "subcurv/greedy.hpp"
#include "subcurv/harness.hpp"
#include "subcurv/objectives.hpp"

namespace {

using nlohmann::json;
using namespace subcurv;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json opt_to_json(const OptResult& opt) {
  json j;
  j["value"] = opt.value;
  j["k"] = opt.k;
  json sets = json::array();
  for (const auto& s : opt.optimal_sets) sets.push_back(s.elements());
  j["optimal_sets"] = sets;
  return j;
}

OptResult opt_from_json(const json& j, int n) {
  OptResult opt;
  opt.value = j.at("value").get<double>();
  opt.k = j.at("k").get<int>();
  for (const auto& s : j.at("optimal_sets"))
    opt.optimal_sets.push_back(Subset::of(n, s.get<std::vector<int>>()));
  return opt;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

struct GenArgs {
  std::string objective, out;
  std::uint64_t seed = 0;
  int n = 20, d = 5, m = 40, groups = 4, k = 5;
  double kappa = 5.0, sigma2 = 1.0, p = 0.2, rho = 0.7, cost_scale = 0.0, lambda = 0.5;
  std::string family = "planted";
};

int cmd_gen(const GenArgs& a) {
  GeneratedInstance gen = [&] {
    if (a.objective == "exp_design")
      return gen_exp_design(a.seed, a.n, a.d, a.kappa, a.cost_scale, a.sigma2);
    if (a.objective == "coverage") return gen_coverage(a.seed, a.n, a.m, a.p, a.cost_scale);
    if (a.objective == "feature_selection")
      return gen_feature_selection(a.seed, a.n, a.groups, a.rho, a.sigma2, a.cost_scale);
    if (a.objective == "maxcut") return gen_maxcut(a.seed, a.n, a.k, a.family);
    if (a.objective == "gclin") return gen_gclin(a.seed, a.n, a.lambda);
    throw std::invalid_argument("unknown objective: " + a.objective);
  }();
  write_json_file(a.out, gen.instance.to_json());
  return 0;
}

struct RunArgs {
  std::string instance, alg = "gp", out;
  int k = 5;
  std::uint64_t seed = 0;
  double tau_prune = 0.0;
  bool no_verify = false;
};

int cmd_run(const RunArgs& a) {
  Instance inst = Instance::from_json(read_json_file(a.instance));
  BuiltObjective built = build_objective(inst);
  const ValueOracle& f = built.f;

  json out;
  std::optional<Trajectory> traj;
  if (a.alg == "gp") {
    traj = greedy_prune(f, a.k, a.tau_prune);
    out = traj->to_json();
  } else if (a.alg == "greedy") {
    traj = standard_greedy(f, a.k);
    out = traj->to_json();
  } else if (a.alg == "dg") {
    if (!built.dec) throw std::invalid_argument("distorted greedy needs a decomposable instance");
    Subset s = distorted_greedy(*built.dec, a.k);
    out = {{"algorithm", "dg"}, {"k", a.k}, {"set", s.elements()}, {"value", f.value(s)}};
  } else if (a.alg == "rg") {
    Subset s = random_greedy(f, a.k, a.seed);
    out = {{"algorithm", "rg"}, {"k", a.k}, {"seed", a.seed}, {"set", s.elements()},
           {"value", f.value(s)}};
  } else if (a.alg == "best_prefix") {
    Subset s = best_prefix_greedy(f, a.k);
    out = {{"algorithm", "best_prefix"}, {"k", a.k}, {"set", s.elements()},
           {"value", f.value(s)}};
  } else {
    throw std::invalid_argument("unknown algorithm: " + a.alg);
  }
  write_json_file(a.out, out);

  if (!a.no_verify && traj && f.n() <= 24) {
    OptResult opt = exact_opt(f, a.k);
    json verification;
    verification["opt_value"] = opt.value;
    if (a.alg == "gp") {
      GreedyCurvature cg = curvature_greedy(f, *traj, opt);
      const bool mono = monotone_given_submodular(f);
      const double bound = guarantee(cg.value, mono) * opt.value - 1e-9;
      verification["c_g"] = cg.value;
      verification["guarantee_bound"] = bound;
      if (opt.value > 0 && traj->final_value() < bound)
        throw std::runtime_error("verification failed: guarantee inequality violated");
      if (built.dec) {
        const double alpha =
            cc_curvature_total(built.dec->g(), /*skip_nonpositive_singletons=*/true);
        RemovalCertificate cert = certificate_removal(*built.dec, *traj, alpha);
        const double r = certificate_opt_aware(*built.dec, *traj, opt);
        verification["r_hat"] = cert.r_hat;
        verification["r_opt_aware"] = r;
        if (cg.value > alpha / (1.0 - cert.r_hat) + 1e-9 ||
            cg.value > alpha / (1.0 - r) + 1e-9)
          throw std::runtime_error("verification failed: certificate inequality violated");
      }
    }
    verification["passed"] = true;
    std::cout << verification.dump(2) << "\n";
  }
  return 0;
}

int cmd_opt(const std::string& instance_path, int k, double eps, const std::string& out) {
  Instance inst = Instance::from_json(read_json_file(instance_path));
  if (inst.n > 24) throw std::invalid_argument("exact optimization requires n <= 24");
  BuiltObjective built = build_objective(inst);
  write_json_file(out, opt_to_json(exact_opt(built.f, k, eps)));
  return 0;
}

int cmd_curvature(const std::string& instance_path, const std::string& traj_path,
                  const std::string& opt_path, const std::string& out) {
  Instance inst = Instance::from_json(read_json_file(instance_path));
  BuiltObjective built = build_objective(inst);
  const ValueOracle& f = built.f;

  CurvatureReport report;
  if (inst.n <= 16)
    report.monotone = check_monotone(f).ok;
  else
    report.monotone = monotone_given_submodular(f);

  if (inst.n <= 14) {
    bool positive = true;
    for (int e = 0; e < inst.n && positive; ++e) {
      Subset single(inst.n);
      single.add(e);
      positive = f.value(single) > 0;
    }
    if (positive) {
      GlobalCurvature global = curvature_global(f);
      report.c_f = global.value;
      report.c_f_admissible = global.admissible;
      report.admissible_pairs = global.admissible_pairs;
    }
  }

  if (report.monotone)
    report.alpha_cc = cc_curvature_total(f, /*skip_nonpositive_singletons=*/true);

  if (!traj_path.empty() && !opt_path.empty()) {
    Trajectory traj = Trajectory::from_json(read_json_file(traj_path));
    OptResult opt = opt_from_json(read_json_file(opt_path), inst.n);
    GreedyCurvature cg = curvature_greedy(f, traj, opt);
    report.c_g = cg.value;
    report.c_g_raw = cg.raw;
    report.c_g_admissible = cg.admissible;
  }

  report.guarantee_nonmonotone = guarantee(report.c_g, false);
  if (report.monotone) report.guarantee_monotone = guarantee(std::min(report.c_g, 1.0), true);

  json payload = report.to_json();
  payload["instance"] = instance_path;
  payload["trajectory"] = traj_path.empty() ? json() : json(traj_path);
  write_json_file(out, payload);
  return 0;
}

int cmd_certify(const std::string& instance_path, const std::string& traj_path,
                const std::string& opt_path, const std::string& out) {
  Instance inst = Instance::from_json(read_json_file(instance_path));
  BuiltObjective built = build_objective(inst);
  if (!built.dec) throw std::invalid_argument("certificates need a decomposable instance");
  Trajectory traj = Trajectory::from_json(read_json_file(traj_path));

  CertificateReport report;
  report.alpha_g = cc_curvature_total(built.dec->g(), /*skip_nonpositive_singletons=*/true);
  report.alpha_analytic = analytic_alpha(inst);
  RemovalCertificate cert = certificate_removal(*built.dec, traj, report.alpha_g);
  report.r_hat = cert.r_hat;
  report.c_hat = cert.c_hat;
  report.guarantee_cert = guarantee(cert.c_hat, false);
  SingletonDiagnostic diag = singleton_diagnostic(*built.dec, traj, report.alpha_g);
  report.s_hat = diag.s_hat;
  report.s_formal = diag.formal;

  if (!opt_path.empty()) {
    OptResult opt = opt_from_json(read_json_file(opt_path), inst.n);
    report.r_opt_aware = certificate_opt_aware(*built.dec, traj, opt);
    if (!opt.optimal_sets.empty() && !opt.optimal_sets.front().empty()) {
      const Subset& opt_set = opt.optimal_sets.front();
      const double g_opt = built.dec->g().value(opt_set);
      if (g_opt > 0) report.hfwk_mult = hfwk_bound(built.dec->cost(opt_set) / g_opt);
    }
  }

  json payload = report.to_json();
  payload["instance"] = instance_path;
  payload["trajectory"] = traj_path;
  write_json_file(out, payload);
  return 0;
}

struct MlxArgs {
  std::string instance, algo = "dmcgp", family = "cardinality", out;
  int T = 200, k = 0;
  std::string parts, capacities;
  bool exact = true;
  int samples = 0;
  std::uint64_t seed = 0;
};

int cmd_mlx(const MlxArgs& a) {
  Instance inst = Instance::from_json(read_json_file(a.instance));
  BuiltObjective built = build_objective(inst);
  const ValueOracle& f = built.f;

  ConstraintFamily fam = [&] {
    if (a.family == "cardinality") {
      if (a.k < 1) throw std::invalid_argument("cardinality family needs --k");
      return ConstraintFamily::cardinality(inst.n, a.k);
    }
    if (a.family == "partition")
      return ConstraintFamily::partition_matroid(inst.n, parse_int_list(a.parts),
                                                 parse_int_list(a.capacities));
    throw std::invalid_argument("unknown constraint family: " + a.family);
  }();

  FractionalTrajectory traj;
  if (a.samples > 0 && !a.exact) {
    if (a.algo != "dmcgp")
      throw std::invalid_argument("sampled mode supports only --algo dmcgp");
    traj = dmcgp_sampled(f, fam, a.T, a.samples, a.seed);
  } else {
    if (inst.n > 20)
      throw std::invalid_argument("exact multilinear path requires n <= 20; use --samples");
    MultilinearEvaluator F(f);
    traj = (a.algo == "wdmcgp") ? wdmcgp(F, fam, a.T) : dmcgp(F, fam, a.T);
  }
  write_json_file(a.out, traj.to_json());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out,
              const std::string& report_fmt, const std::string& report_out, bool no_verify,
              bool timing) {
  SweepConfig config = SweepConfig::from_json(read_json_file(config_path));
  if (no_verify) config.verify = false;
  std::vector<ExperimentRecord> records = run_sweep(config);
  if (!no_verify) verify_records(records);
  write_text_file(out, emit_report(records, "json", timing));
  if (!report_fmt.empty()) {
    const std::string path = report_out.empty() ? out + "." + report_fmt : report_out;
    write_text_file(path, emit_report(records, report_fmt, timing));
  }
  return 0;
}

int cmd_maxcut(const std::string& suite, int seeds, const std::string& out, bool no_verify,
               bool timing) {
  if (suite != "paper") throw std::invalid_argument("unknown maxcut suite: " + suite);
  MaxcutOptions opts;
  opts.num_seeds = seeds;
  opts.verify = !no_verify;
  std::vector<ExperimentRecord> records = run_maxcut_suite(opts);
  if (!no_verify) verify_records(records);
  write_text_file(out, emit_report(records, "json", timing));
  return 0;
}

int cmd_report(const std::string& records_path, const std::string& format,
               const std::string& out) {
  auto records = records_from_json(read_json_file(records_path));
  write_text_file(out, emit_report(records, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subcurv: curvature-parameterized submodular maximization toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--objective", gen_args.objective,
                  "exp_design | coverage | feature_selection | maxcut | gclin")
      ->required();
  gen->add_option("--n", gen_args.n, "ground-set size");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--cost-scale", gen_args.cost_scale, "cost scale c_s");
  gen->add_option("--d", gen_args.d, "design dimension (exp_design)");
  gen->add_option("--kappa", gen_args.kappa, "target condition number (exp_design)");
  gen->add_option("--sigma2", gen_args.sigma2, "noise variance");
  gen->add_option("--m", gen_args.m, "item count (coverage)");
  gen->add_option("--p", gen_args.p, "edge probability (coverage)");
  gen->add_option("--groups", gen_args.groups, "feature groups (feature_selection)");
  gen->add_option("--rho", gen_args.rho, "within-group correlation (feature_selection)");
  gen->add_option("--k", gen_args.k, "community size / budget (maxcut)");
  gen->add_option("--family", gen_args.family, "maxcut family: planted | erdos_renyi");
  gen->add_option("--lambda", gen_args.lambda, "redundancy weight (gclin)");
  gen->add_option("--out", gen_args.out, "output instance path")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a discrete algorithm on an instance");
  run->add_option("--instance", run_args.instance, "instance JSON path")->required();
  run->add_option("--alg", run_args.alg, "gp | greedy | dg | rg | best_prefix");
  run->add_option("--k", run_args.k, "cardinality budget");
  run->add_option("--seed", run_args.seed, "seed for the randomized algorithm");
  run->add_option("--tau-prune", run_args.tau_prune, "pruning tolerance (default 0)");
  run->add_flag("--no-verify", run_args.no_verify, "skip the verification pass");
  run->add_option("--out", run_args.out, "output trajectory/result path")->required();

  std::string opt_instance, opt_out;
  int opt_k = 5;
  double opt_eps = 1e-9;
  auto* opt_cmd = app.add_subcommand("opt", "Exact optimum by enumeration (n <= 24)");
  opt_cmd->add_option("--instance", opt_instance, "instance JSON path")->required();
  opt_cmd->add_option("--k", opt_k, "cardinality budget");
  opt_cmd->add_option("--eps", opt_eps, "tie tolerance for listing optima");
  opt_cmd->add_option("--out", opt_out, "output path")->required();

  std::string curv_instance, curv_traj, curv_opt, curv_out;
  auto* curv = app.add_subcommand("curvature", "Curvature report for an instance");
  curv->add_option("--instance", curv_instance, "instance JSON path")->required();
  curv->add_option("--trajectory", curv_traj, "trajectory JSON path (for c_g)");
  curv->add_option("--opt", curv_opt, "optimum JSON path (for c_g)");
  curv->add_option("--out", curv_out, "output path")->required();

  std::string cert_instance, cert_traj, cert_opt, cert_out;
  auto* cert = app.add_subcommand("certify", "Certificate report for a decomposable run");
  cert->add_option("--instance", cert_instance, "instance JSON path")->required();
  cert->add_option("--trajectory", cert_traj, "trajectory JSON path")->required();
  cert->add_option("--opt", cert_opt, "optimum JSON path (optional)");
  cert->add_option("--out", cert_out, "output path")->required();

  MlxArgs mlx_args;
  auto* mlx = app.add_subcommand("mlx", "Multilinear continuous algorithms");
  mlx->add_option("--instance", mlx_args.instance, "instance JSON path")->required();
  mlx->add_option("--algo", mlx_args.algo, "dmcgp | wdmcgp");
  mlx->add_option("--T", mlx_args.T, "step count");
  mlx->add_option("--family", mlx_args.family, "cardinality | partition");
  mlx->add_option("--k", mlx_args.k, "cardinality bound");
  mlx->add_option("--parts", mlx_args.parts, "comma list: part id per element");
  mlx->add_option("--capacities", mlx_args.capacities, "comma list: per-part capacity");
  mlx->add_flag("--exact,!--no-exact", mlx_args.exact, "use the exact extension (n <= 20)");
  mlx->add_option("--samples", mlx_args.samples, "samples per slope (sampled mode)");
  mlx->add_option("--seed", mlx_args.seed, "sampling seed");
  mlx->add_option("--out", mlx_args.out, "output trajectory path")->required();

  std::string sweep_config, sweep_out, sweep_fmt, sweep_report_out;
  bool sweep_no_verify = false, sweep_timing = false;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep from a config file");
  sweep->add_option("--config", sweep_config, "sweep config JSON path")->required();
  sweep->add_option("--out", sweep_out, "records output path")->required();
  sweep->add_option("--report", sweep_fmt, "also emit a report: csv | markdown | json");
  sweep->add_option("--report-out", sweep_report_out, "report output path");
  sweep->add_flag("--no-verify", sweep_no_verify, "skip verification passes");
  sweep->add_flag("--timing", sweep_timing, "include wall-time fields in outputs");

  std::string mc_suite = "paper", mc_out;
  int mc_seeds = 20;
  bool mc_no_verify = false, mc_timing = false;
  auto* mc = app.add_subcommand("maxcut", "Run the cut-function suite");
  mc->add_option("--suite", mc_suite, "suite name (paper)");
  mc->add_option("--seeds", mc_seeds, "seeds per configuration");
  mc->add_option("--out", mc_out, "records output path")->required();
  mc->add_flag("--no-verify", mc_no_verify, "skip verification passes");
  mc->add_flag("--timing", mc_timing, "include wall-time fields in outputs");

  std::string rep_records, rep_format = "csv", rep_out;
  auto* rep = app.add_subcommand("report", "Convert records to csv/markdown/json");
  rep->add_option("--records", rep_records, "records JSON path")->required();
  rep->add_option("--format", rep_format, "csv | markdown | json");
  rep->add_option("--out", rep_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (run->parsed()) return cmd_run(run_args);
    if (opt_cmd->parsed()) return cmd_opt(opt_instance, opt_k, opt_eps, opt_out);
    if (curv->parsed()) return cmd_curvature(curv_instance, curv_traj, curv_opt, curv_out);
    if (cert->parsed()) return cmd_certify(cert_instance, cert_traj, cert_opt, cert_out);
    if (mlx->parsed()) return cmd_mlx(mlx_args);
    if (sweep->parsed())
      return cmd_sweep(sweep_config, sweep_out, sweep_fmt, sweep_report_out, sweep_no_verify,
                       sweep_timing);
    if (mc->parsed()) return cmd_maxcut(mc_suite, mc_seeds, mc_out, mc_no_verify, mc_timing);
    if (rep->parsed()) return cmd_report(rep_records, rep_format, rep_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "validation"}}.dump() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "validation"}}.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "validation"}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "invariant"}}.dump() << "\n";
    return 2;
  }
  return 0;
}
