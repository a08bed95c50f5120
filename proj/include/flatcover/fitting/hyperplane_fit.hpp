#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "flatcover/core/exact_linalg.hpp"
#include "flatcover/core/flat.hpp"
#include "flatcover/core/hyperplane.hpp"

namespace flatcover {

/// Hyperplane through at most d affinely independent points. With fewer
/// than d points the hull is extended by e_1, e_2, ... in order, skipping
/// any direction already in the span, until it has dimension d-1.
inline Hyperplane fit_hyperplane_exact(const std::vector<ExactVector>& points) {
  if (points.empty()) throw std::invalid_argument("fit_hyperplane_exact needs at least one point");
  const std::size_t d = points[0].size();
  if (d == 0) throw std::invalid_argument("zero-dimensional points");
  if (points.size() > d) throw std::invalid_argument("more than d points cannot be affinely independent");
  ExactMatrix dirs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != d) throw std::invalid_argument("dimension mismatch in fit_hyperplane_exact");
    ExactVector v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = points[i][j] - points[0][j];
    dirs.push_back(std::move(v));
  }
  std::size_t rank = dirs.empty() ? 0 : exact_rank(dirs);
  if (rank != dirs.size()) throw std::invalid_argument("points are affinely dependent");
  for (std::size_t j = 0; j < d && dirs.size() + 1 < d; ++j) {
    ExactVector e(d, Rational(0));
    e[j] = 1;
    dirs.push_back(e);
    if (exact_rank(dirs) == rank + 1)
      ++rank;
    else
      dirs.pop_back();
  }
  // Solve c0 + c.x = 0 at the base point and c.dir = 0 for every direction.
  ExactMatrix sys;
  ExactVector row0{Rational(1)};
  row0.insert(row0.end(), points[0].begin(), points[0].end());
  sys.push_back(std::move(row0));
  for (const auto& v : dirs) {
    ExactVector row{Rational(0)};
    row.insert(row.end(), v.begin(), v.end());
    sys.push_back(std::move(row));
  }
  auto ker = kernel_vector(std::move(sys));
  if (!ker) throw std::invalid_argument("points are affinely dependent");
  return Hyperplane::from_coefficients(*ker);
}

/// Greedy affine basis (first point, then every point raising the affine
/// rank), as indices into points.
inline std::vector<std::size_t> affine_basis(const std::vector<ExactVector>& points) {
  std::vector<std::size_t> basis;
  if (points.empty()) return basis;
  basis.push_back(0);
  ExactMatrix dirs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    ExactVector v(points[i].size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = points[i][j] - points[0][j];
    dirs.push_back(std::move(v));
    if (exact_rank(dirs) == dirs.size())
      basis.push_back(i);
    else
      dirs.pop_back();
  }
  return basis;
}

/// A hyperplane containing every given point, or nullopt when their affine
/// hull is the whole space.
inline std::optional<Hyperplane> hyperplane_through(const std::vector<ExactVector>& points) {
  if (points.empty()) throw std::invalid_argument("hyperplane_through needs at least one point");
  const auto idx = affine_basis(points);
  if (idx.size() > points[0].size()) return std::nullopt;
  std::vector<ExactVector> sub;
  for (auto i : idx) sub.push_back(points[i]);
  return fit_hyperplane_exact(sub);
}

}  // namespace flatcover
