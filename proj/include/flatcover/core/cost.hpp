#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flatcover/core/flat.hpp"
#include "flatcover/core/point_cloud.hpp"

namespace flatcover {

/// Index of the nearest flat and its squared distance. Ties go to the
/// lowest index.
inline std::pair<std::size_t, double> nearest_flat(const Eigen::VectorXd& x, std::span<const AffineFlat> flats) {
  if (flats.empty()) throw std::invalid_argument("empty flat list");
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < flats.size(); ++j) {
    double dj = dist2_point_flat(x, flats[j]);
    if (dj < bd) {
      bd = dj;
      best = j;
    }
  }
  return {best, bd};
}

/// Sum over records of multiplicity times the squared distance to the
/// nearest flat.
inline double total_cost(const FloatCloud& cloud, std::span<const AffineFlat> flats) {
  if (flats.empty()) throw std::invalid_argument("total_cost needs at least one flat");
  double c = 0.0;
  for (const auto& r : cloud.records()) c += weight_of(r) * nearest_flat(as_vector(r), flats).second;
  return c;
}

inline Rational total_cost(const ExactCloud& cloud, std::span<const ExactFlat> flats) {
  if (flats.empty()) throw std::invalid_argument("total_cost needs at least one flat");
  Rational c = 0;
  for (const auto& r : cloud.records()) {
    Rational best = dist2_point_flat(r.coords, flats[0]);
    for (std::size_t j = 1; j < flats.size(); ++j) {
      Rational dj = dist2_point_flat(r.coords, flats[j]);
      if (dj < best) best = dj;
    }
    c += Rational(r.mult) * best;
  }
  return c;
}

/// Cost of a fixed assignment (record i charged to flats[assignment[i]]).
inline double assignment_cost(const FloatCloud& cloud, std::span<const AffineFlat> flats,
                              std::span<const std::size_t> assignment) {
  if (assignment.size() != cloud.size()) throw std::invalid_argument("assignment length mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (assignment[i] >= flats.size()) throw std::out_of_range("assignment refers to a missing flat");
    c += weight_of(cloud[i]) * dist2_point_flat(as_vector(cloud[i]), flats[assignment[i]]);
  }
  return c;
}

}  // namespace flatcover
