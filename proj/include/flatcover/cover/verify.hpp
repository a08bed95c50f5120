#pragma once

#include <stdexcept>
#include <vector>

#include "flatcover/core/hyperplane.hpp"
#include "flatcover/core/point_cloud.hpp"

namespace flatcover {

struct CoverSolution {
  std::vector<Hyperplane> hyperplanes;
};

/// Exact membership check: every record lies on at least one hyperplane.
inline bool verify_cover(const ExactCloud& cloud, const std::vector<Hyperplane>& planes) {
  for (const auto& h : planes)
    if (h.dim() != cloud.dim()) throw std::invalid_argument("hyperplane dimension differs from cloud dimension");
  for (const auto& r : cloud.records()) {
    bool hit = false;
    for (const auto& h : planes)
      if ((hit = h.contains(r.coords))) break;
    if (!hit) return false;
  }
  return true;
}

inline std::vector<std::size_t> covered_records(const ExactCloud& cloud, const Hyperplane& h) {
  if (h.dim() != cloud.dim()) throw std::invalid_argument("hyperplane dimension differs from cloud dimension");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (h.contains(cloud[i].coords)) out.push_back(i);
  return out;
}

}  // namespace flatcover
