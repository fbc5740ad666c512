#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace subcurv {

/// Dense row-major matrix payload for instance files.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  double at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
  double& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
};

/// Shared on-disk instance model:
/// { "objective": string, "n": int, "params": object,
///   "matrices": { name: {rows, cols, data} } , "costs": [..] | null, "seed": int }
/// Edge lists live in params as index pairs.
struct Instance {
  std::string objective;
  int n = 0;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, Matrix> matrices;
  std::optional<std::vector<double>> costs;

  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);
};

}  // namespace subcurv
