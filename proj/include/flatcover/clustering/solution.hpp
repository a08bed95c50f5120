#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flatcover/core/cost.hpp"
#include "flatcover/core/flat.hpp"
#include "flatcover/core/point_cloud.hpp"

namespace flatcover {

struct ClusteringSolution {
  std::vector<AffineFlat> flats;
  std::vector<std::size_t> assignment;  // per record, index into flats
  double cost = 0.0;
};

/// True iff every record's assigned flat is within tol of its nearest flat.
inline bool is_voronoi_consistent(const FloatCloud& cloud, const ClusteringSolution& sol, double tol) {
  if (sol.assignment.size() != cloud.size() || sol.flats.empty()) return false;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (sol.assignment[i] >= sol.flats.size()) return false;
    const Eigen::VectorXd x = as_vector(cloud[i]);
    const double mine = dist2_point_flat(x, sol.flats[sol.assignment[i]]);
    if (mine > nearest_flat(x, sol.flats).second + tol) return false;
  }
  return true;
}

/// Nearest-flat assignment (ties to the lowest index) and its cost.
inline ClusteringSolution assign_to_nearest(const FloatCloud& cloud, std::vector<AffineFlat> flats) {
  ClusteringSolution s;
  s.flats = std::move(flats);
  s.assignment.resize(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto [j, d2] = nearest_flat(as_vector(cloud[i]), s.flats);
    s.assignment[i] = j;
    s.cost += weight_of(cloud[i]) * d2;
  }
  return s;
}

}  // namespace flatcover
