#include "subcurv/instance.hpp"

#include <stdexcept>

namespace subcurv {

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  Matrix m;
  m.rows = j.at("rows").get<int>();
  m.cols = j.at("cols").get<int>();
  m.data = j.at("data").get<std::vector<double>>();
  if (m.rows < 0 || m.cols < 0 ||
      m.data.size() != std::size_t(m.rows) * std::size_t(m.cols))
    throw std::invalid_argument("matrix payload shape mismatch");
  return m;
}

}  // namespace

nlohmann::json Instance::to_json() const {
  nlohmann::json j;
  j["objective"] = objective;
  j["n"] = n;
  j["seed"] = seed;
  j["params"] = params;
  nlohmann::json mats = nlohmann::json::object();
  for (const auto& [name, m] : matrices) mats[name] = matrix_to_json(m);
  j["matrices"] = mats;
  if (costs)
    j["costs"] = *costs;
  else
    j["costs"] = nullptr;
  return j;
}

Instance Instance::from_json(const nlohmann::json& j) {
  for (const char* key : {"objective", "n", "seed", "params", "matrices", "costs"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("instance missing field: ") + key);
  Instance inst;
  inst.objective = j.at("objective").get<std::string>();
  inst.n = j.at("n").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("params").is_object()) throw std::invalid_argument("instance params must be an object");
  inst.params = j.at("params");
  for (const auto& [name, payload] : j.at("matrices").items())
    inst.matrices[name] = matrix_from_json(payload);
  if (!j.at("costs").is_null()) {
    auto c = j.at("costs").get<std::vector<double>>();
    if (static_cast<int>(c.size()) != inst.n)
      throw std::invalid_argument("cost vector size must match n");
    inst.costs = std::move(c);
  }
  if (inst.n < 1) throw std::invalid_argument("instance n must be positive");
  return inst;
}

}  // namespace subcurv
