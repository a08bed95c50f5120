#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "flatcover/core/rational.hpp"

namespace flatcover {

/// One position of a multiset: coordinates plus a positive multiplicity.
/// Multiplicities are arbitrary precision since generated instances stack
/// astronomically many copies on a single position.
template <class T>
struct PointRecord {
  std::vector<T> coords;
  BigInt mult{1};
};

template <class T>
class PointCloud {
 public:
  using value_type = T;

  PointCloud() = default;
  explicit PointCloud(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("point cloud dimension must be positive");
  }
  PointCloud(std::size_t dim, std::vector<PointRecord<T>> records) : PointCloud(dim) {
    for (auto& r : records) push(std::move(r));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<PointRecord<T>>& records() const { return records_; }
  const PointRecord<T>& operator[](std::size_t i) const { return records_[i]; }

  void add(std::vector<T> coords, BigInt mult = 1) { push(PointRecord<T>{std::move(coords), std::move(mult)}); }

  BigInt total_weight() const {
    BigInt w = 0;
    for (const auto& r : records_) w += r.mult;
    return w;
  }

  /// Sub-cloud made of the given record indices, in the given order.
  PointCloud subset(std::span<const std::size_t> idx) const {
    PointCloud out(dim_);
    out.records_.reserve(idx.size());
    for (auto i : idx) out.records_.push_back(records_.at(i));
    return out;
  }

 private:
  void push(PointRecord<T> r) {
    if (r.coords.size() != dim_)
      throw std::invalid_argument("record has " + std::to_string(r.coords.size()) + " coordinates, cloud dimension is " +
                                  std::to_string(dim_));
    if (r.mult < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if constexpr (std::is_same_v<T, Rational>)
      for (auto& c : r.coords) c.canonicalize();
    records_.push_back(std::move(r));
  }

  std::size_t dim_ = 1;
  std::vector<PointRecord<T>> records_;
};

using FloatCloud = PointCloud<double>;
using ExactCloud = PointCloud<Rational>;

inline Eigen::VectorXd as_vector(const PointRecord<double>& r) {
  return Eigen::Map<const Eigen::VectorXd>(r.coords.data(), static_cast<Eigen::Index>(r.coords.size()));
}

inline double weight_of(const PointRecord<double>& r) { return r.mult.get_d(); }

/// Float view of an exact cloud (coordinates rounded to nearest double).
inline FloatCloud to_float(const ExactCloud& c) {
  FloatCloud out(c.dim());
  for (const auto& r : c.records()) {
    std::vector<double> xs;
    xs.reserve(r.coords.size());
    for (const auto& q : r.coords) xs.push_back(q.get_d());
    out.add(std::move(xs), r.mult);
  }
  return out;
}

/// Indices of records grouped by identical coordinates; each group is one
/// distinct position, listed in order of first appearance.
template <class T>
std::vector<std::vector<std::size_t>> distinct_positions(const PointCloud<T>& c) {
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return c[a].coords < c[b].coords; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && c[order[k]].coords == c[order[k - 1]].coords)
      groups.back().push_back(order[k]);
    else
      groups.push_back({order[k]});
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

}  // namespace flatcover
