#include "subcurv/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subcurv/rng.hpp"

namespace subcurv {

namespace {

void check_budget(const ValueOracle& f, int k) {
  if (!f.valid()) throw std::invalid_argument("invalid oracle");
  if (k < 1 || k > f.n()) throw std::invalid_argument("budget k out of range");
}

// argmax of f(S+e)-cur over e not in S, ties toward lower index.
// Returns {-1, 0} when S already holds every element.
std::pair<int, double> best_addition(const ValueOracle& f, const Subset& s, double cur) {
  int best = -1;
  double best_gain = 0;
  for (int e = 0; e < f.n(); ++e) {
    if (s.contains(e)) continue;
    Subset t = s;
    t.add(e);
    double gain = f.value(t) - cur;
    if (best == -1 || gain > best_gain) {
      best = e;
      best_gain = gain;
    }
  }
  return {best, best_gain};
}

Trajectory run_greedy(const ValueOracle& f, int k, bool prune, double tau_prune) {
  check_budget(f, k);
  const std::uint64_t queries_before = f.eval_count();
  Trajectory traj;
  traj.n = f.n();
  traj.k = k;

  Subset active(f.n());
  double cur = f.value(active);  // 0 by normalization

  for (int i = 1; i <= k; ++i) {
    auto [elem, gain] = best_addition(f, active, cur);
    if (elem < 0 || gain <= 0) {
      TrajectoryStep stop;
      stop.iteration = i;
      stop.pre_prune = active;
      stop.active = active;
      stop.value = cur;
      traj.steps.push_back(std::move(stop));
      traj.early_stop = true;
      break;
    }

    TrajectoryStep step;
    step.iteration = i;
    step.selected = elem;
    active.add(elem);
    cur += gain;
    step.pre_prune = active;

    if (prune) {
      bool removed = true;
      while (removed) {
        removed = false;
        for (int a = 0; a < f.n(); ++a) {
          if (!active.contains(a)) continue;
          Subset rest = active;
          rest.remove(a);
          double rest_val = f.value(rest);
          if (cur - rest_val <= tau_prune) {  // marginal of a to the rest
            active = rest;
            cur = rest_val;
            step.pruned.push_back(a);
            removed = true;
            break;  // rescan from the lowest index
          }
        }
      }
    }

    step.active = active;
    step.value = cur;
    traj.steps.push_back(std::move(step));
  }

  traj.oracle_queries = f.eval_count() - queries_before;
  return traj;
}

}  // namespace

Subset Trajectory::active_set(int i) const {
  if (i < 0 || i > k) throw std::out_of_range("trajectory index out of range");
  if (i == 0) return Subset(n);
  const int last = static_cast<int>(steps.size());
  return steps[std::min(i, last) - 1].active;
}

const Subset& Trajectory::final_set() const {
  if (steps.empty()) throw std::logic_error("empty trajectory");
  return steps.back().active;
}

double Trajectory::final_value() const {
  if (steps.empty()) throw std::logic_error("empty trajectory");
  return steps.back().value;
}

int Trajectory::prune_event_count() const {
  int c = 0;
  for (const auto& s : steps) c += static_cast<int>(s.pruned.size());
  return c;
}

std::vector<Subset> Trajectory::realized_active_sets() const {
  std::vector<Subset> sets;
  for (const auto& s : steps) sets.push_back(s.active);
  return sets;
}

nlohmann::json Trajectory::to_json() const {
  nlohmann::json out;
  out["k"] = k;
  out["n"] = n;
  out["queries"] = oracle_queries;
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json js;
    js["i"] = s.iteration;
    if (s.selected)
      js["selected"] = *s.selected;
    else
      js["selected"] = nullptr;
    js["pre_prune"] = s.pre_prune.elements();
    js["pruned"] = s.pruned;
    js["active"] = s.active.elements();
    js["value"] = s.value;
    steps_json.push_back(std::move(js));
  }
  out["steps"] = steps_json;
  return out;
}

Trajectory Trajectory::from_json(const nlohmann::json& j) {
  Trajectory traj;
  traj.k = j.at("k").get<int>();
  traj.n = j.at("n").get<int>();
  traj.oracle_queries = j.at("queries").get<std::uint64_t>();
  for (const auto& js : j.at("steps")) {
    TrajectoryStep s;
    s.iteration = js.at("i").get<int>();
    if (!js.at("selected").is_null()) s.selected = js.at("selected").get<int>();
    s.pre_prune = Subset::of(traj.n, js.at("pre_prune").get<std::vector<int>>());
    s.pruned = js.at("pruned").get<std::vector<int>>();
    s.active = Subset::of(traj.n, js.at("active").get<std::vector<int>>());
    s.value = js.at("value").get<double>();
    if (!s.selected) traj.early_stop = true;
    traj.steps.push_back(std::move(s));
  }
  return traj;
}

Trajectory greedy_prune(const ValueOracle& f, int k, double tau_prune) {
  return run_greedy(f, k, true, tau_prune);
}

Trajectory standard_greedy(const ValueOracle& f, int k) {
  return run_greedy(f, k, false, 0.0);
}

Subset distorted_greedy(const DecomposableOracle& dec, int k) {
  if (!dec.valid()) throw std::invalid_argument("distorted greedy needs a decomposable oracle");
  const ValueOracle& g = dec.g();
  check_budget(g, k);
  Subset s(g.n());
  double g_cur = g.value(s);
  for (int i = 0; i < k; ++i) {
    const double distortion = std::pow(1.0 - 1.0 / k, k - (i + 1));
    int best = -1;
    double best_score = 0, best_gain = 0;
    for (int e = 0; e < g.n(); ++e) {
      if (s.contains(e)) continue;
      Subset t = s;
      t.add(e);
      double gain = g.value(t) - g_cur;
      double score = distortion * gain - dec.cost(e);
      if (score > best_score) {  // strict: skip the step unless positive
        best = e;
        best_score = score;
        best_gain = gain;
      }
    }
    if (best >= 0) {
      s.add(best);
      g_cur += best_gain;
    }
  }
  return s;
}

Subset random_greedy(const ValueOracle& f, int k, std::uint64_t seed) {
  check_budget(f, k);
  Rng rng(seed);
  Subset s(f.n());
  double cur = f.value(s);
  for (int step = 0; step < k; ++step) {
    std::vector<std::pair<double, int>> gains;  // (-gain, index) for stable order
    for (int e = 0; e < f.n(); ++e) {
      if (s.contains(e)) continue;
      Subset t = s;
      t.add(e);
      gains.emplace_back(-(f.value(t) - cur), e);
    }
    std::sort(gains.begin(), gains.end());
    const int real = std::min<int>(k, static_cast<int>(gains.size()));
    const int pick = rng.uniform_int(0, k - 1);  // pads with zero-marginal dummies
    if (pick < real && -gains[pick].first > 0) {
      s.add(gains[pick].second);
      cur += -gains[pick].first;
    }
  }
  return s;
}

Trajectory forced_greedy(const ValueOracle& f, int k) {
  check_budget(f, k);
  const std::uint64_t queries_before = f.eval_count();
  Trajectory traj;
  traj.n = f.n();
  traj.k = k;

  Subset s(f.n());
  double cur = f.value(s);
  for (int i = 1; i <= k; ++i) {
    auto [elem, gain] = best_addition(f, s, cur);
    if (elem < 0) break;  // ground set exhausted
    s.add(elem);
    cur += gain;
    TrajectoryStep step;
    step.iteration = i;
    step.selected = elem;
    step.pre_prune = s;
    step.active = s;
    step.value = cur;
    traj.steps.push_back(std::move(step));
  }
  traj.oracle_queries = f.eval_count() - queries_before;
  return traj;
}

Subset best_prefix_greedy(const ValueOracle& f, int k) {
  Trajectory traj = forced_greedy(f, k);
  Subset best_set(f.n());
  double best_val = 0;  // empty prefix
  for (const auto& step : traj.steps) {
    if (step.value > best_val) {
      best_val = step.value;
      best_set = step.active;
    }
  }
  return best_set;
}

}  // namespace subcurv
