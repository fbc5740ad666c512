#include "subcurv/objectives.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subcurv/rng.hpp"

namespace subcurv {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out(r, c) = m.at(r, c);
  return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
  Matrix out;
  out.rows = static_cast<int>(m.rows());
  out.cols = static_cast<int>(m.cols());
  out.data.resize(std::size_t(out.rows) * out.cols);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = m(r, c);
  return out;
}

Eigen::MatrixXd random_gaussian(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.normal();
  return m;
}

// Orthonormal columns via Householder QR of a Gaussian matrix.
Eigen::MatrixXd random_orthogonal(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd a = random_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  return q;
}

std::vector<std::pair<int, int>> edges_from_params(const nlohmann::json& params,
                                                   const char* key) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : params.at(key)) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edge entries must be index pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

double condition_number(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const auto& ev = es.eigenvalues();
  double lo = ev(0), hi = ev(ev.size() - 1);
  if (lo <= 0) throw std::invalid_argument("matrix not positive definite");
  return hi / lo;
}

ValueOracle build_exp_design_g(const Instance& inst) {
  const Eigen::MatrixXd x = to_eigen(inst.matrices.at("X"));
  const double sigma2 = inst.params.at("sigma2").get<double>();
  const int n = inst.n;
  const int d = static_cast<int>(x.cols());
  return ValueOracle(n, [x, sigma2, d](const Subset& s) {
    if (s.empty()) return 0.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int e : s.elements()) m += x.row(e).transpose() * x.row(e) / sigma2;
    Eigen::MatrixXd posterior = m.llt().solve(Eigen::MatrixXd::Identity(d, d));
    return double(d) - posterior.trace();
  });
}

ValueOracle build_coverage_g(const Instance& inst) {
  const int n = inst.n;
  const int m = inst.params.at("m").get<int>();
  auto edges = edges_from_params(inst.params, "edges");
  const int words = (m + 63) / 64;
  std::vector<std::vector<std::uint64_t>> covers(n, std::vector<std::uint64_t>(words, 0));
  for (auto [v, item] : edges) {
    if (v < 0 || v >= n || item < 0 || item >= m)
      throw std::invalid_argument("coverage edge outside range");
    covers[v][item >> 6] |= 1ull << (item & 63);
  }
  return ValueOracle(n, [covers, words](const Subset& s) {
    std::vector<std::uint64_t> acc(words, 0);
    for (int v : s.elements())
      for (int w = 0; w < words; ++w) acc[w] |= covers[v][w];
    int covered = 0;
    for (auto w : acc) covered += __builtin_popcountll(w);
    return double(covered);
  });
}

ValueOracle build_feature_selection_g(const Instance& inst) {
  const Eigen::MatrixXd sigma = to_eigen(inst.matrices.at("Sigma"));
  const double sigma2 = inst.params.at("sigma2").get<double>();
  return ValueOracle(inst.n, [sigma, sigma2](const Subset& s) {
    if (s.empty()) return 0.0;
    auto idx = s.elements();
    const int sz = static_cast<int>(idx.size());
    Eigen::MatrixXd m(sz, sz);
    for (int a = 0; a < sz; ++a)
      for (int b = 0; b < sz; ++b)
        m(a, b) = (a == b ? 1.0 : 0.0) + sigma(idx[a], idx[b]) / sigma2;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("log-det objective: submatrix not positive definite");
    double logdet = 0;
    for (int a = 0; a < sz; ++a) logdet += std::log(llt.matrixL()(a, a));
    return logdet;  // 0.5 * log det = sum of log diag(L)
  });
}

ValueOracle build_maxcut_f(const Instance& inst) {
  const int n = inst.n;
  auto edges = edges_from_params(inst.params, "edges");
  const int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::invalid_argument("bad edge in graph instance");
    adj[u][v >> 6] |= 1ull << (v & 63);
    adj[v][u >> 6] |= 1ull << (u & 63);
  }
  return ValueOracle(n, [adj, words, n](const Subset& s) {
    std::vector<std::uint64_t> in_set(words, 0);
    for (int v : s.elements()) in_set[v >> 6] |= 1ull << (v & 63);
    int cut = 0;
    for (int v : s.elements())
      for (int w = 0; w < words; ++w) cut += __builtin_popcountll(adj[v][w] & ~in_set[w]);
    (void)n;
    return double(cut);
  });
}

ValueOracle build_gclin_f(const Instance& inst) {
  const Eigen::MatrixXd sim = to_eigen(inst.matrices.at("similarity"));
  const double lambda = inst.params.at("lambda").get<double>();
  const int n = inst.n;
  Eigen::VectorXd colsum = sim.colwise().sum();
  return ValueOracle(n, [sim, colsum, lambda](const Subset& s) {
    auto idx = s.elements();
    double relevance = 0, redundancy = 0;
    for (int j : idx) relevance += colsum(j);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        redundancy += 2.0 * sim(idx[a], idx[b]);
    return relevance - lambda * redundancy;
  });
}

}  // namespace

BuiltObjective build_objective(const Instance& inst) {
  BuiltObjective out;
  out.objective = inst.objective;
  if (inst.objective == "exp_design" || inst.objective == "coverage" ||
      inst.objective == "feature_selection") {
    if (!inst.costs) throw std::invalid_argument("decomposable instance missing costs");
    ValueOracle g;
    if (inst.objective == "exp_design")
      g = build_exp_design_g(inst);
    else if (inst.objective == "coverage")
      g = build_coverage_g(inst);
    else
      g = build_feature_selection_g(inst);
    out.dec = DecomposableOracle(g, *inst.costs);
    out.f = out.dec->f();
  } else if (inst.objective == "maxcut") {
    out.f = build_maxcut_f(inst);
  } else if (inst.objective == "gclin") {
    out.f = build_gclin_f(inst);
  } else {
    throw std::invalid_argument("unknown objective: " + inst.objective);
  }
  return out;
}

GeneratedInstance gen_exp_design(std::uint64_t seed, int n, int d, double kappa,
                                 double cost_scale, double sigma2) {
  if (n < d || d < 1) throw std::invalid_argument("experimental design needs n >= d >= 1");
  if (kappa < 1.0) throw std::invalid_argument("condition number must be >= 1");
  if (cost_scale < 0) throw std::invalid_argument("cost scale must be >= 0");

  Rng rng(seed);
  Eigen::MatrixXd u = random_orthogonal(rng, n, d);
  Eigen::MatrixXd v = random_orthogonal(rng, d, d);
  Eigen::VectorXd sv(d);
  const double top = std::sqrt(kappa);
  for (int i = 0; i < d; ++i)
    sv(i) = (d == 1) ? top : 1.0 + (top - 1.0) * double(i) / double(d - 1);
  Eigen::MatrixXd x = u * sv.asDiagonal() * v.transpose();

  double mean_norm = 0;
  for (int e = 0; e < n; ++e) mean_norm += x.row(e).norm();
  mean_norm /= n;
  std::vector<double> costs(n);
  for (int e = 0; e < n; ++e) costs[e] = cost_scale * x.row(e).norm() / mean_norm;

  Instance inst;
  inst.objective = "exp_design";
  inst.n = n;
  inst.seed = seed;
  inst.params = {{"d", d}, {"kappa", kappa}, {"sigma2", sigma2}, {"cost_scale", cost_scale}};
  inst.matrices["X"] = from_eigen(x);
  inst.costs = costs;
  return {inst, build_objective(inst)};
}

GeneratedInstance gen_coverage(std::uint64_t seed, int n, int m, double p_edge,
                               double cost_scale) {
  if (n < 1 || m < 1) throw std::invalid_argument("coverage needs n, m >= 1");
  if (p_edge < 0 || p_edge > 1) throw std::invalid_argument("edge probability must be in [0,1]");
  if (cost_scale < 0) throw std::invalid_argument("cost scale must be >= 0");

  Rng rng(seed);
  nlohmann::json edges = nlohmann::json::array();
  std::vector<int> degree(n, 0);
  for (int v = 0; v < n; ++v)
    for (int item = 0; item < m; ++item)
      if (rng.uniform01() < p_edge) {
        edges.push_back({v, item});
        ++degree[v];
      }

  double mean_deg = 0;
  for (int v = 0; v < n; ++v) mean_deg += degree[v];
  mean_deg /= n;
  std::vector<double> costs(n, 0.0);
  if (mean_deg > 0)
    for (int v = 0; v < n; ++v) costs[v] = cost_scale * degree[v] / mean_deg;

  Instance inst;
  inst.objective = "coverage";
  inst.n = n;
  inst.seed = seed;
  inst.params = {{"m", m}, {"p_edge", p_edge}, {"cost_scale", cost_scale}, {"edges", edges}};
  inst.costs = costs;
  return {inst, build_objective(inst)};
}

GeneratedInstance gen_feature_selection(std::uint64_t seed, int p, int groups,
                                        double rho_within, double sigma2,
                                        double cost_scale) {
  if (p < 1 || groups < 1 || p % groups != 0)
    throw std::invalid_argument("feature count must divide evenly into groups");
  if (rho_within < 0 || rho_within >= 1)
    throw std::invalid_argument("within-group correlation must be in [0,1)");
  if (cost_scale < 0) throw std::invalid_argument("cost scale must be >= 0");

  Rng rng(seed);
  const int group_size = p / groups;
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (i != j && i / group_size == j / group_size) sigma(i, j) = rho_within;
  Eigen::MatrixXd z = random_gaussian(rng, p, p);
  Eigen::MatrixXd noise = 0.05 * 0.5 * (z + z.transpose());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (i != j && i / group_size != j / group_size) sigma(i, j) += noise(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  double min_eig = es.eigenvalues()(0);
  double pd_shift = 0.0;
  if (min_eig <= 1e-8) {
    pd_shift = std::abs(min_eig) + 0.05;
    sigma += pd_shift * Eigen::MatrixXd::Identity(p, p);
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sigma).eigenvalues()(0) <= 0)
      throw std::runtime_error("covariance not positive definite after shift; regenerate with a new seed");
  }

  std::vector<double> costs(p);
  for (int e = 0; e < p; ++e)
    costs[e] = cost_scale * std::max(0.01, 1.0 + 0.3 * rng.normal());

  Instance inst;
  inst.objective = "feature_selection";
  inst.n = p;
  inst.seed = seed;
  inst.params = {{"groups", groups},
                 {"rho_within", rho_within},
                 {"sigma2", sigma2},
                 {"cost_scale", cost_scale},
                 {"pd_shift", pd_shift}};
  inst.matrices["Sigma"] = from_eigen(sigma);
  inst.costs = costs;
  return {inst, build_objective(inst)};
}

GeneratedInstance gen_maxcut(std::uint64_t seed, int n, int k, const std::string& family) {
  if (n < 2) throw std::invalid_argument("graph needs at least two vertices");
  if (family != "planted" && family != "erdos_renyi")
    throw std::invalid_argument("maxcut family must be planted or erdos_renyi");
  if (family == "planted" && n < 2 * k)
    throw std::invalid_argument("planted family needs n >= 2k");

  Rng rng(seed * 1000 + std::uint64_t(n) * 100 + std::uint64_t(k));
  auto community = [&](int v) { return v < k ? 0 : (v < 2 * k ? 1 : 2); };
  auto edge_prob = [&](int u, int v) {
    if (family == "erdos_renyi") return 0.3;
    int a = community(u), b = community(v);
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 0) return 0.8;
    if (a == 1 && b == 1) return 0.2;
    if (a == 2 && b == 2) return 0.3;
    if (a == 0 && b == 1) return 0.3;
    return 0.4;  // A-C and B-C
  };

  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < edge_prob(u, v)) edges.push_back({u, v});

  Instance inst;
  inst.objective = "maxcut";
  inst.n = n;
  inst.seed = seed;
  inst.params = {{"family", family}, {"k", k}, {"edges", edges}};
  return {inst, build_objective(inst)};
}

GeneratedInstance gen_gclin(std::uint64_t seed, int n, double lambda) {
  if (n < 1) throw std::invalid_argument("ground set must be nonempty");
  if (lambda < 0) throw std::invalid_argument("redundancy weight must be >= 0");

  Rng rng(seed);
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    sim(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) sim(i, j) = sim(j, i) = rng.uniform01();
  }

  Instance inst;
  inst.objective = "gclin";
  inst.n = n;
  inst.seed = seed;
  inst.params = {{"lambda", lambda}};
  inst.matrices["similarity"] = from_eigen(sim);
  return {inst, build_objective(inst)};
}

double analytic_alpha(const Instance& inst) {
  if (inst.objective == "coverage") return 1.0;
  if (inst.objective == "exp_design") {
    const Eigen::MatrixXd x = to_eigen(inst.matrices.at("X"));
    const double sigma2 = inst.params.at("sigma2").get<double>();
    const int d = static_cast<int>(x.cols());
    Eigen::MatrixXd info =
        x.transpose() * x / sigma2 + Eigen::MatrixXd::Identity(d, d);
    return 1.0 - 1.0 / condition_number(info);
  }
  if (inst.objective == "feature_selection") {
    const Eigen::MatrixXd sigma = to_eigen(inst.matrices.at("Sigma"));
    const double sigma2 = inst.params.at("sigma2").get<double>();
    const int p = inst.n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p) + sigma / sigma2;
    return 1.0 - 1.0 / condition_number(m);
  }
  throw std::invalid_argument("analytic curvature unavailable for objective: " + inst.objective);
}

PositiveRestriction restrict_to_positive_singletons(const ValueOracle& f) {
  PositiveRestriction out;
  const int n = f.n();
  for (int e = 0; e < n; ++e) {
    Subset single(n);
    single.add(e);
    if (f.value(single) > 0)
      out.kept.push_back(e);
    else
      out.dropped.push_back(e);
  }
  if (out.kept.empty())
    throw std::invalid_argument("no element has positive singleton value");
  auto kept = out.kept;
  out.oracle = ValueOracle(static_cast<int>(kept.size()), [f, kept, n](const Subset& s) {
    Subset orig(n);
    for (int i : s.elements()) orig.add(kept[i]);
    return f.value(orig);
  });
  return out;
}

}  // namespace subcurv
