#include "subcurv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "subcurv/certificates.hpp"
#include "subcurv/checks.hpp"
#include "subcurv/curvature.hpp"
#include "subcurv/exact.hpp"
#include "subcurv/greedy.hpp"
#include "subcurv/objectives.hpp"

namespace subcurv {

namespace {

constexpr double kCellBudgetMs = 600000.0;  // single-cell wall-clock guard

std::uint64_t derived_rg_seed(std::uint64_t seed, int n, int k) {
  // distinct deterministic stream for the randomized baseline
  return (seed * 1000 + std::uint64_t(n) * 100 + std::uint64_t(k)) ^ 0x9E3779B97F4A7C15ull;
}

struct CellSpec {
  std::string suite;
  std::string objective;
  int n = 0;
  int k = 0;
  double cost_scale = 0;
  std::uint64_t seed = 0;
  nlohmann::json family_params = nlohmann::json::object();
  std::vector<std::string> algorithms;
  bool compute_opt = true;
  bool compute_curvature = true;
  bool verify = true;
};

GeneratedInstance generate_for_cell(const CellSpec& cell) {
  const auto& p = cell.family_params;
  if (cell.objective == "exp_design")
    return gen_exp_design(cell.seed, cell.n, p.value("d", 5), p.value("kappa", 5.0),
                          cell.cost_scale, p.value("sigma2", 1.0));
  if (cell.objective == "coverage")
    return gen_coverage(cell.seed, cell.n, p.value("m", 2 * cell.n), p.value("p_edge", 0.2),
                        cell.cost_scale);
  if (cell.objective == "feature_selection")
    return gen_feature_selection(cell.seed, cell.n, p.value("groups", 4),
                                 p.value("rho_within", 0.7), p.value("sigma2", 1.0),
                                 cell.cost_scale);
  if (cell.objective == "maxcut")
    return gen_maxcut(cell.seed, cell.n, cell.k, p.value("family", "planted"));
  if (cell.objective == "gclin")
    return gen_gclin(cell.seed, cell.n, p.value("lambda", 0.5));
  throw std::invalid_argument("unknown objective in sweep: " + cell.objective);
}

ExperimentRecord run_cell(const CellSpec& cell) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  ExperimentRecord rec;
  rec.suite = cell.suite;
  rec.objective = cell.objective;
  rec.n = cell.n;
  rec.k = cell.k;
  rec.cost_scale = cell.cost_scale;
  rec.seed = cell.seed;
  if (cell.objective == "maxcut") rec.family = cell.family_params.value("family", "planted");
  if (cell.objective == "gclin") rec.lambda = cell.family_params.value("lambda", 0.5);

  GeneratedInstance gen = generate_for_cell(cell);
  const ValueOracle& f = gen.built.f;
  const auto& dec = gen.built.dec;

  if (dec) {
    rec.alpha_analytic = analytic_alpha(gen.instance);
    // certificates need the true total curvature of g, not the closed form
    rec.alpha_g = cc_curvature_total(dec->g(), /*skip_nonpositive_singletons=*/true);
  }

  std::optional<Trajectory> gp_traj;
  std::map<std::string, Subset> sets;
  const std::uint64_t queries_before = f.eval_count();
  for (const auto& alg : cell.algorithms) {
    if (elapsed_ms() > kCellBudgetMs) {
      rec.partial = true;
      break;
    }
    if (alg == "gp") {
      gp_traj = greedy_prune(f, cell.k);
      rec.prune_events = gp_traj->prune_event_count();
      sets.emplace("gp", gp_traj->final_set());
      rec.algos["gp"].value = gp_traj->final_value();
    } else if (alg == "greedy") {
      Trajectory t = standard_greedy(f, cell.k);
      sets.emplace("greedy", t.final_set());
      rec.algos["greedy"].value = t.final_value();
    } else if (alg == "forced_greedy") {
      Trajectory t = forced_greedy(f, cell.k);
      sets.emplace("forced_greedy", t.final_set());
      rec.algos["forced_greedy"].value = t.final_value();
    } else if (alg == "dg") {
      if (!dec) throw std::invalid_argument("distorted greedy needs a decomposable objective");
      Subset s = distorted_greedy(*dec, cell.k);
      rec.algos["dg"].value = f.value(s);
      sets.emplace("dg", s);
    } else if (alg == "rg") {
      Subset s = random_greedy(f, cell.k, derived_rg_seed(cell.seed, cell.n, cell.k));
      rec.algos["rg"].value = f.value(s);
      sets.emplace("rg", s);
    } else if (alg == "best_prefix") {
      Subset s = best_prefix_greedy(f, cell.k);
      rec.algos["best_prefix"].value = f.value(s);
      sets.emplace("best_prefix", s);
    } else {
      throw std::invalid_argument("unknown algorithm in sweep: " + alg);
    }
  }
  rec.oracle_queries = f.eval_count() - queries_before;

  // monotone determination: exact for submodular objectives
  rec.monotone = monotone_given_submodular(f);

  std::optional<OptResult> opt;
  if (cell.compute_opt && cell.n <= 24 && !rec.partial) {
    opt = exact_opt(f, cell.k);
    rec.opt_value = opt->value;
    if (opt->value > 0)
      for (auto& [name, result] : rec.algos) result.ratio = result.value / opt->value;
    if (dec && !opt->optimal_sets.empty() && !opt->optimal_sets.front().empty()) {
      const Subset& opt_set = opt->optimal_sets.front();
      const double g_opt = dec->g().value(opt_set);
      if (g_opt > 0) {
        rec.rho = dec->cost(opt_set) / g_opt;
        rec.hfwk = hfwk_bound(*rec.rho);
      }
    }
  }

  if (cell.compute_curvature && !rec.partial) {
    if (cell.n <= 14) {
      // global curvature only when singletons allow it
      bool positive_singletons = true;
      for (int e = 0; e < cell.n && positive_singletons; ++e) {
        Subset single(cell.n);
        single.add(e);
        positive_singletons = f.value(single) > 0;
      }
      if (positive_singletons) rec.c_f = curvature_global(f).value;
    }
    if (opt && gp_traj) {
      GreedyCurvature cg = curvature_greedy(f, *gp_traj, *opt);
      rec.c_g = cg.value;
      rec.c_g_raw = cg.raw;
      rec.guarantee_theorem = guarantee(cg.value, *rec.monotone);
      rec.guarantee_clipped = guarantee(cg.value, false);
      rec.guarantee_unclipped = guarantee(std::min(cg.value, 1.0), true);
    }
  }

  if (dec && gp_traj && !rec.partial) {
    RemovalCertificate cert = certificate_removal(*dec, *gp_traj, *rec.alpha_g);
    rec.r_hat = cert.r_hat;
    rec.guarantee_cert = guarantee(cert.c_hat, false);
    SingletonDiagnostic diag = singleton_diagnostic(*dec, *gp_traj, *rec.alpha_g);
    rec.s_hat = diag.s_hat;
    rec.s_formal = diag.formal;
    if (opt) rec.r_opt_aware = certificate_opt_aware(*dec, *gp_traj, *opt);
  }

  // heuristic cost ratio when no exact OPT: best-known set stands in
  if (!opt && dec && !sets.empty()) {
    const Subset* best = nullptr;
    double best_val = 0;
    for (const auto& [name, s] : sets) {
      const double v = rec.algos.at(name).value;
      if (!best || v > best_val) {
        best = &s;
        best_val = v;
      }
    }
    if (best && !best->empty()) {
      const double g_best = dec->g().value(*best);
      if (g_best > 0) {
        rec.rho = dec->cost(*best) / g_best;
        rec.rho_heuristic = true;
        rec.hfwk = hfwk_bound(*rec.rho);
      }
    }
  }

  rec.wall_time_ms = elapsed_ms();
  if (cell.verify) verify_records({rec});
  return rec;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double total = 0;
  for (double x : v) total += x;
  return total / double(v.size());
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

std::string fmt_full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::sort(records.begin(), records.end(), [](const ExperimentRecord& a,
                                               const ExperimentRecord& b) {
    auto key = [](const ExperimentRecord& r) {
      return std::make_tuple(r.suite, r.objective, r.family, r.n, r.k, r.cost_scale,
                             r.lambda.value_or(-1.0), r.seed);
    };
    return key(a) < key(b);
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// serialization

namespace {

void put_opt(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

std::optional<double> get_opt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

nlohmann::json ExperimentRecord::to_json(bool include_timing) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["objective"] = objective;
  j["family"] = family;
  j["n"] = n;
  j["k"] = k;
  j["cost_scale"] = cost_scale;
  put_opt(j, "lambda", lambda);
  j["seed"] = seed;
  nlohmann::json algos_json = nlohmann::json::object();
  for (const auto& [name, res] : algos) {
    nlohmann::json a;
    a["value"] = res.value;
    put_opt(a, "ratio", res.ratio);
    algos_json[name] = a;
  }
  j["algorithms"] = algos_json;
  put_opt(j, "opt_value", opt_value);
  put_opt(j, "rho", rho);
  j["rho_heuristic"] = rho_heuristic;
  put_opt(j, "alpha_g", alpha_g);
  put_opt(j, "alpha_analytic", alpha_analytic);
  put_opt(j, "c_f", c_f);
  put_opt(j, "c_g", c_g);
  put_opt(j, "c_g_raw", c_g_raw);
  put_opt(j, "r_hat", r_hat);
  put_opt(j, "r_opt_aware", r_opt_aware);
  put_opt(j, "s_hat", s_hat);
  j["s_formal"] = s_formal;
  put_opt(j, "guarantee_theorem", guarantee_theorem);
  put_opt(j, "guarantee_clipped", guarantee_clipped);
  put_opt(j, "guarantee_unclipped", guarantee_unclipped);
  put_opt(j, "guarantee_cert", guarantee_cert);
  if (hfwk && std::isinf(*hfwk))
    j["hfwk"] = "-inf";
  else
    put_opt(j, "hfwk", hfwk);
  if (monotone)
    j["monotone"] = *monotone;
  else
    j["monotone"] = nullptr;
  put_opt(j, "proxy_curvature", proxy_curvature);
  put_opt(j, "reference_bound", reference_bound);
  j["proxy_diagnostic_only"] = proxy_diagnostic_only;
  j["prune_events"] = prune_events;
  j["oracle_queries"] = oracle_queries;
  if (include_timing) j["wall_time_ms"] = wall_time_ms;
  j["partial"] = partial;
  return j;
}

ExperimentRecord ExperimentRecord::from_json(const nlohmann::json& j) {
  ExperimentRecord r;
  r.suite = j.at("suite").get<std::string>();
  r.objective = j.at("objective").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.cost_scale = j.at("cost_scale").get<double>();
  r.lambda = get_opt(j, "lambda");
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [name, a] : j.at("algorithms").items()) {
    AlgoResult res;
    res.value = a.at("value").get<double>();
    res.ratio = get_opt(a, "ratio");
    r.algos[name] = res;
  }
  r.opt_value = get_opt(j, "opt_value");
  r.rho = get_opt(j, "rho");
  r.rho_heuristic = j.at("rho_heuristic").get<bool>();
  r.alpha_g = get_opt(j, "alpha_g");
  r.alpha_analytic = get_opt(j, "alpha_analytic");
  r.c_f = get_opt(j, "c_f");
  r.c_g = get_opt(j, "c_g");
  r.c_g_raw = get_opt(j, "c_g_raw");
  r.r_hat = get_opt(j, "r_hat");
  r.r_opt_aware = get_opt(j, "r_opt_aware");
  r.s_hat = get_opt(j, "s_hat");
  r.s_formal = j.at("s_formal").get<bool>();
  r.guarantee_theorem = get_opt(j, "guarantee_theorem");
  r.guarantee_clipped = get_opt(j, "guarantee_clipped");
  r.guarantee_unclipped = get_opt(j, "guarantee_unclipped");
  r.guarantee_cert = get_opt(j, "guarantee_cert");
  if (j.at("hfwk").is_string())
    r.hfwk = -std::numeric_limits<double>::infinity();
  else
    r.hfwk = get_opt(j, "hfwk");
  if (!j.at("monotone").is_null()) r.monotone = j.at("monotone").get<bool>();
  r.proxy_curvature = get_opt(j, "proxy_curvature");
  r.reference_bound = get_opt(j, "reference_bound");
  r.proxy_diagnostic_only = j.at("proxy_diagnostic_only").get<bool>();
  r.prune_events = j.at("prune_events").get<int>();
  r.oracle_queries = j.at("oracle_queries").get<std::uint64_t>();
  if (j.contains("wall_time_ms")) r.wall_time_ms = j.at("wall_time_ms").get<double>();
  r.partial = j.at("partial").get<bool>();
  return r;
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["objective"] = objective;
  j["n"] = n;
  j["k"] = k;
  j["family_params"] = family_params;
  j["cost_scales"] = cost_scales;
  j["seeds"] = seeds;
  j["algorithms"] = algorithms;
  j["compute_opt"] = compute_opt;
  j["compute_curvature"] = compute_curvature;
  j["verify"] = verify;
  return j;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig c;
  c.suite = j.value("suite", "custom");
  c.objective = j.value("objective", "");
  c.n = j.value("n", 0);
  c.k = j.value("k", 0);
  c.family_params = j.value("family_params", nlohmann::json::object());
  c.cost_scales = j.value("cost_scales", std::vector<double>{});
  c.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  c.algorithms = j.value("algorithms", std::vector<std::string>{});
  c.compute_opt = j.value("compute_opt", true);
  c.compute_curvature = j.value("compute_curvature", true);
  c.verify = j.value("verify", true);
  if (c.compute_opt && c.n > 24)
    throw std::invalid_argument("compute_opt requires n <= 24");
  return c;
}

// ---------------------------------------------------------------------------
// suites

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
  if (config.suite == "tier1") {
    Tier1Options opts;
    if (!config.seeds.empty()) opts.seeds = config.seeds;
    opts.verify = config.verify;
    return run_tier1(opts);
  }
  if (config.suite == "maxcut") {
    MaxcutOptions opts;
    if (!config.seeds.empty()) opts.num_seeds = static_cast<int>(config.seeds.size());
    opts.verify = config.verify;
    return run_maxcut_suite(opts);
  }
  if (config.suite == "moderate") {
    ModerateOptions opts;
    if (!config.seeds.empty()) opts.seeds = config.seeds;
    return run_moderate(opts);
  }
  if (config.suite == "lambda_sweep") {
    LambdaSweepOptions opts;
    if (!config.seeds.empty()) opts.seeds = config.seeds;
    opts.verify = config.verify;
    return run_lambda_sweep(opts);
  }

  if (config.objective.empty()) throw std::invalid_argument("sweep config needs an objective");
  if (config.seeds.empty()) throw std::invalid_argument("sweep config needs seeds");
  std::vector<double> scales = config.cost_scales.empty() ? std::vector<double>{0.0}
                                                          : config.cost_scales;
  std::vector<ExperimentRecord> records;
  for (double cs : scales)
    for (std::uint64_t seed : config.seeds) {
      CellSpec cell;
      cell.suite = "custom";
      cell.objective = config.objective;
      cell.n = config.n;
      cell.k = config.k;
      cell.cost_scale = cs;
      cell.seed = seed;
      cell.family_params = config.family_params;
      cell.algorithms = config.algorithms.empty()
                            ? std::vector<std::string>{"gp", "greedy"}
                            : config.algorithms;
      cell.compute_opt = config.compute_opt;
      cell.compute_curvature = config.compute_curvature;
      cell.verify = config.verify;
      records.push_back(run_cell(cell));
    }
  sort_records(records);
  return records;
}

std::vector<ExperimentRecord> run_tier1(const Tier1Options& opts) {
  struct FamilySpec {
    const char* objective;
    nlohmann::json params;
    std::vector<double> scales;
  };
  const std::vector<FamilySpec> families = {
      {"exp_design",
       {{"d", 5}, {"kappa", 5.0}, {"sigma2", 1.0}},
       {0, 0.03, 0.06, 0.10, 0.15, 0.20, 0.28}},
      {"coverage", {{"m", 40}, {"p_edge", 0.2}}, {0, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0}},
      {"feature_selection",
       {{"groups", 4}, {"rho_within", 0.7}, {"sigma2", 1.0}},
       {0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8}},
  };

  std::vector<ExperimentRecord> records;
  for (const auto& fam : families)
    for (double cs : fam.scales)
      for (std::uint64_t seed : opts.seeds) {
        CellSpec cell;
        cell.suite = "tier1";
        cell.objective = fam.objective;
        cell.n = 20;
        cell.k = 5;
        cell.cost_scale = cs;
        cell.seed = seed;
        cell.family_params = fam.params;
        cell.algorithms = {"gp", "dg"};
        cell.compute_opt = true;
        cell.compute_curvature = true;
        cell.verify = opts.verify;
        records.push_back(run_cell(cell));
      }
  sort_records(records);
  return records;
}

std::vector<ExperimentRecord> run_maxcut_suite(const MaxcutOptions& opts) {
  std::vector<ExperimentRecord> records;
  for (const char* family : {"planted", "erdos_renyi"})
    for (int n : {16, 20})
      for (int k : {n / 4, n / 3, n / 2})
        for (int seed = 0; seed < opts.num_seeds; ++seed) {
          CellSpec cell;
          cell.suite = "maxcut";
          cell.objective = "maxcut";
          cell.n = n;
          cell.k = k;
          cell.seed = seed;
          cell.family_params = {{"family", family}};
          // the cut baseline takes exactly k elements with no early stop
          cell.algorithms = {"forced_greedy", "gp", "rg"};
          cell.compute_opt = true;
          cell.compute_curvature = true;
          cell.verify = opts.verify;
          records.push_back(run_cell(cell));
        }
  sort_records(records);
  return records;
}

std::vector<ExperimentRecord> run_moderate(const ModerateOptions& opts) {
  struct FamilySpec {
    const char* objective;
    int n, k;
    nlohmann::json params;
    std::vector<double> scales;
  };
  const std::vector<FamilySpec> families = {
      {"exp_design",
       200,
       20,
       {{"d", 10}, {"kappa", 5.0}, {"sigma2", 1.0}},
       {0, 0.02, 0.05, 0.10, 0.15, 0.22, 0.30}},
      {"coverage", 300, 30, {{"m", 600}, {"p_edge", 0.05}}, {0, 0.5, 1.5, 3.0, 5.0, 8.0, 12.0}},
      {"feature_selection",
       100,
       15,
       {{"groups", 10}, {"rho_within", 0.7}, {"sigma2", 1.0}},
       {0, 0.03, 0.08, 0.15, 0.25, 0.4, 0.6}},
  };

  std::vector<ExperimentRecord> records;
  for (const auto& fam : families)
    for (double cs : fam.scales)
      for (std::uint64_t seed : opts.seeds) {
        CellSpec cell;
        cell.suite = "moderate";
        cell.objective = fam.objective;
        cell.n = fam.n;
        cell.k = fam.k;
        cell.cost_scale = cs;
        cell.seed = seed;
        cell.family_params = fam.params;
        cell.algorithms = {"gp", "dg"};
        cell.compute_opt = false;
        cell.compute_curvature = false;
        cell.verify = false;  // no exact quantities to cross-check
        ExperimentRecord rec = run_cell(cell);
        if (!opts.compute_removal_certificate) {
          rec.r_hat.reset();
          rec.guarantee_cert.reset();
        }
        records.push_back(std::move(rec));
      }
  sort_records(records);
  return records;
}

std::vector<ExperimentRecord> run_lambda_sweep(const LambdaSweepOptions& opts) {
  if (opts.n > 14)
    throw std::invalid_argument("lambda sweep needs n <= 14 for exact optimum and curvature");
  std::vector<ExperimentRecord> records;
  for (double lambda : opts.lambdas)
    for (std::uint64_t seed : opts.seeds) {
      const auto start = std::chrono::steady_clock::now();
      ExperimentRecord rec;
      rec.suite = "lambda_sweep";
      rec.objective = "gclin";
      rec.n = opts.n;
      rec.k = opts.k;
      rec.lambda = lambda;
      rec.seed = seed;

      GeneratedInstance gen = gen_gclin(seed, opts.n, lambda);
      const ValueOracle& f = gen.built.f;

      const std::uint64_t queries_before = f.eval_count();
      Trajectory prefixes = forced_greedy(f, opts.k);
      Subset best(opts.n);
      double best_val = 0;
      for (const auto& step : prefixes.steps)
        if (step.value > best_val) {
          best_val = step.value;
          best = step.active;
        }
      rec.algos["best_prefix"].value = best_val;
      rec.oracle_queries = f.eval_count() - queries_before;

      OptResult opt = exact_opt(f, opts.k);
      rec.opt_value = opt.value;
      if (opt.value > 0) rec.algos["best_prefix"].ratio = best_val / opt.value;

      GreedyCurvature proxy = curvature_greedy(f, prefixes, opt);
      rec.proxy_curvature = proxy.value;
      rec.reference_bound = 2.0 * lambda;
      rec.proxy_diagnostic_only = lambda > 1.0;
      rec.guarantee_clipped = guarantee(proxy.value, false);
      rec.monotone = check_monotone(f).ok;

      if (opts.verify) {
        if (lambda <= 1.0 && *rec.proxy_curvature > 2.0 * lambda + 1e-9)
          throw std::runtime_error("trajectory-curvature proxy exceeds the 2*lambda reference");
        if (lambda <= 0.5 && !*rec.monotone)
          throw std::runtime_error("low-redundancy instance unexpectedly non-monotone");
      }

      rec.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      records.push_back(std::move(rec));
    }
  sort_records(records);
  return records;
}

// ---------------------------------------------------------------------------
// verification and reports

void verify_records(const std::vector<ExperimentRecord>& records) {
  std::ostringstream problems;
  for (const auto& r : records) {
    auto context = [&] {
      std::ostringstream os;
      os << r.suite << "/" << r.objective << (r.family.empty() ? "" : "/" + r.family) << " n="
         << r.n << " k=" << r.k << " cost=" << r.cost_scale << " seed=" << r.seed << ": ";
      return os.str();
    };
    if (r.opt_value && *r.opt_value > 0 && r.guarantee_theorem && r.algos.count("gp")) {
      const double lhs = r.algos.at("gp").value;
      const double rhs = *r.guarantee_theorem * *r.opt_value - 1e-9;
      if (lhs < rhs)
        problems << context() << "guarantee inequality violated (value " << lhs << " < bound "
                 << rhs << ")\n";
    }
    if (r.c_g && r.alpha_g && r.r_hat) {
      if (*r.c_g > *r.alpha_g / (1.0 - *r.r_hat) + 1e-9)
        problems << context() << "removal certificate does not dominate greedy curvature\n";
    }
    if (r.c_g && r.alpha_g && r.r_opt_aware) {
      if (*r.c_g > *r.alpha_g / (1.0 - *r.r_opt_aware) + 1e-9)
        problems << context() << "opt-aware certificate does not dominate greedy curvature\n";
    }
    if (r.s_hat && r.r_hat && *r.s_hat > *r.r_hat + 1e-9)
      problems << context() << "singleton ratio exceeds removal-marginal ratio\n";
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw std::runtime_error("record verification failed:\n" + msg);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_csv(const std::vector<ExperimentRecord>& records, bool include_timing) {
  std::vector<std::string> algo_names;
  for (const auto& r : records)
    for (const auto& [name, _] : r.algos)
      if (std::find(algo_names.begin(), algo_names.end(), name) == algo_names.end())
        algo_names.push_back(name);
  std::sort(algo_names.begin(), algo_names.end());

  std::ostringstream os;
  os << "suite,objective,family,n,k,cost_scale,lambda,seed";
  for (const auto& a : algo_names) os << "," << a << "_value," << a << "_ratio";
  os << ",opt_value,rho,rho_heuristic,alpha_g,alpha_analytic,c_f,c_g,c_g_raw,r_hat,r_opt_aware,s_hat,"
        "s_formal,guarantee_theorem,guarantee_clipped,guarantee_unclipped,guarantee_cert,"
        "hfwk,monotone,proxy_curvature,reference_bound,proxy_diagnostic_only,prune_events,"
        "oracle_queries,partial";
  if (include_timing) os << ",wall_time_ms";
  os << "\n";

  auto opt_fmt = [](const std::optional<double>& v) {
    return v ? fmt_full(*v) : std::string();
  };
  for (const auto& r : records) {
    os << csv_escape(r.suite) << "," << csv_escape(r.objective) << "," << csv_escape(r.family)
       << "," << r.n << "," << r.k << "," << fmt_full(r.cost_scale) << ","
       << opt_fmt(r.lambda) << "," << r.seed;
    for (const auto& a : algo_names) {
      auto it = r.algos.find(a);
      if (it == r.algos.end())
        os << ",,";
      else
        os << "," << fmt_full(it->second.value) << "," << opt_fmt(it->second.ratio);
    }
    os << "," << opt_fmt(r.opt_value) << "," << opt_fmt(r.rho) << ","
       << (r.rho_heuristic ? "1" : "0") << "," << opt_fmt(r.alpha_g) << ","
       << opt_fmt(r.alpha_analytic) << "," << opt_fmt(r.c_f)
       << "," << opt_fmt(r.c_g) << "," << opt_fmt(r.c_g_raw) << "," << opt_fmt(r.r_hat) << ","
       << opt_fmt(r.r_opt_aware) << "," << opt_fmt(r.s_hat) << "," << (r.s_formal ? "1" : "0")
       << "," << opt_fmt(r.guarantee_theorem) << "," << opt_fmt(r.guarantee_clipped) << ","
       << opt_fmt(r.guarantee_unclipped) << "," << opt_fmt(r.guarantee_cert) << ","
       << opt_fmt(r.hfwk) << "," << (r.monotone ? (*r.monotone ? "1" : "0") : "") << ","
       << opt_fmt(r.proxy_curvature) << "," << opt_fmt(r.reference_bound) << ","
       << (r.proxy_diagnostic_only ? "1" : "0") << "," << r.prune_events << ","
       << r.oracle_queries << "," << (r.partial ? "1" : "0");
    if (include_timing) os << "," << fmt_full(r.wall_time_ms);
    os << "\n";
  }
  return os.str();
}

struct GroupStats {
  std::vector<double> rho, gp_ratio, dg_ratio, greedy_ratio, rg_ratio, c_g;
  std::vector<double> guar_clipped, guar_cert, hfwk, gp_value, dg_value, s_hat;
  std::vector<double> proxy, guarantee;
  double alpha_g = 0;
  int gp_beats_greedy = 0;
  int count = 0;
  int prune_instances = 0;
};

std::string emit_markdown(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;

  auto collect = [&](const std::string& suite) {
    std::map<std::tuple<std::string, std::string, int, int, double, double>, GroupStats> groups;
    for (const auto& r : records) {
      if (r.suite != suite) continue;
      auto key = std::make_tuple(r.objective, r.family, r.n, r.k, r.cost_scale,
                                 r.lambda.value_or(-1.0));
      GroupStats& g = groups[key];
      ++g.count;
      if (r.rho) g.rho.push_back(*r.rho);
      if (r.c_g) g.c_g.push_back(*r.c_g);
      if (r.alpha_g) g.alpha_g = *r.alpha_g;
      if (r.guarantee_clipped) g.guar_clipped.push_back(*r.guarantee_clipped);
      if (r.guarantee_cert) g.guar_cert.push_back(*r.guarantee_cert);
      if (r.hfwk && std::isfinite(*r.hfwk)) g.hfwk.push_back(*r.hfwk);
      if (r.s_hat) g.s_hat.push_back(*r.s_hat);
      if (r.proxy_curvature) g.proxy.push_back(*r.proxy_curvature);
      auto ratio_of = [&](const char* name) -> std::optional<double> {
        auto it = r.algos.find(name);
        if (it == r.algos.end()) return std::nullopt;
        return it->second.ratio;
      };
      if (auto v = ratio_of("gp")) g.gp_ratio.push_back(*v);
      if (auto v = ratio_of("dg")) g.dg_ratio.push_back(*v);
      if (auto v = ratio_of("greedy")) g.greedy_ratio.push_back(*v);
      if (auto v = ratio_of("forced_greedy")) g.greedy_ratio.push_back(*v);
      if (auto v = ratio_of("rg")) g.rg_ratio.push_back(*v);
      if (r.algos.count("gp")) g.gp_value.push_back(r.algos.at("gp").value);
      if (r.algos.count("dg")) g.dg_value.push_back(r.algos.at("dg").value);
      const char* baseline = r.algos.count("forced_greedy") ? "forced_greedy" : "greedy";
      if (r.algos.count("gp") && r.algos.count(baseline) &&
          r.algos.at("gp").value > r.algos.at(baseline).value + 1e-9)
        ++g.gp_beats_greedy;
      if (r.prune_events > 0) ++g.prune_instances;
    }
    return groups;
  };

  auto tier1 = collect("tier1");
  if (!tier1.empty()) {
    os << "## Small-instance suite (exact optimum)\n\n";
    os << "| Objective | cost | rho | GP ratio | DG ratio | c_g | Curv. guar. | Cert. guar. | "
          "HFWK |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& [key, g] : tier1) {
      os << "| " << std::get<0>(key) << " | " << fmt(std::get<4>(key), 2) << " | "
         << fmt(mean(g.rho), 2) << " | " << fmt(mean(g.gp_ratio), 2) << " | "
         << fmt(mean(g.dg_ratio), 2) << " | " << fmt(mean(g.c_g), 2) << " | "
         << fmt(mean(g.guar_clipped), 2) << " | " << fmt(mean(g.guar_cert), 2) << " | "
         << fmt(mean(g.hfwk), 2) << " |\n";
    }
    os << "\n";
  }

  auto maxcut = collect("maxcut");
  if (!maxcut.empty()) {
    os << "## MaxCut suite\n\n";
    os << "| Family | n | k | Greedy | GP | Random | GP > Greedy | Pruned instances |\n";
    os << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& [key, g] : maxcut) {
      os << "| " << std::get<1>(key) << " | " << std::get<2>(key) << " | " << std::get<3>(key)
         << " | " << fmt(mean(g.greedy_ratio), 3) << " | " << fmt(mean(g.gp_ratio), 3) << " | "
         << fmt(mean(g.rg_ratio), 3) << " | " << g.gp_beats_greedy << "/" << g.count << " | "
         << g.prune_instances << "/" << g.count << " |\n";
    }
    os << "\n";
  }

  auto moderate = collect("moderate");
  if (!moderate.empty()) {
    os << "## Moderate-scale suite (no exact optimum)\n\n";
    os << "| Objective | cost | f_GP | f_DG | c_hat (singleton) | Diag. | HFWK |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& [key, g] : moderate) {
      const double s_hat_mean = mean(g.s_hat);
      const double c_hat = g.alpha_g / (1.0 - s_hat_mean);
      const double cb = std::max(1.0, c_hat);
      const double diag = -std::expm1(-cb) / cb;
      os << "| " << std::get<0>(key) << " | " << fmt(std::get<4>(key), 2) << " | "
         << fmt(mean(g.gp_value), 2) << " | " << fmt(mean(g.dg_value), 2) << " | "
         << fmt(c_hat, 2) << " | " << fmt(diag, 2) << " | " << fmt(mean(g.hfwk), 2) << " |\n";
    }
    os << "\n";
  }

  auto sweep = collect("lambda_sweep");
  if (!sweep.empty()) {
    os << "## Redundancy-weight sweep\n\n";
    os << "| lambda | mean proxy curvature | reference 2*lambda | clipped guarantee |\n";
    os << "|---|---|---|---|\n";
    for (const auto& [key, g] : sweep) {
      const double lambda = std::get<5>(key);
      os << "| " << fmt(lambda, 2) << " | " << fmt(mean(g.proxy), 3) << " | "
         << fmt(2 * lambda, 2) << " | " << fmt(mean(g.guar_clipped), 3) << " |\n";
    }
    os << "\n";
  }

  auto custom = collect("custom");
  if (!custom.empty()) {
    os << "## Custom sweep\n\n";
    os << "| Objective | n | k | cost | GP ratio | Greedy ratio | c_g |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& [key, g] : custom) {
      os << "| " << std::get<0>(key) << " | " << std::get<2>(key) << " | " << std::get<3>(key)
         << " | " << fmt(std::get<4>(key), 2) << " | " << fmt(mean(g.gp_ratio), 3) << " | "
         << fmt(mean(g.greedy_ratio), 3) << " | " << fmt(mean(g.c_g), 2) << " |\n";
    }
    os << "\n";
  }

  return os.str();
}

}  // namespace

std::string emit_report(std::vector<ExperimentRecord> records, const std::string& format,
                        bool include_timing) {
  sort_records(records);
  if (format == "json") {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) j["records"].push_back(r.to_json(include_timing));
    return j.dump(2) + "\n";
  }
  if (format == "csv") return emit_csv(records, include_timing);
  if (format == "markdown") return emit_markdown(records);
  throw std::invalid_argument("unknown report format: " + format);
}

std::vector<ExperimentRecord> records_from_json(const nlohmann::json& j) {
  std::vector<ExperimentRecord> records;
  for (const auto& r : j.at("records")) records.push_back(ExperimentRecord::from_json(r));
  return records;
}

}  // namespace subcurv
