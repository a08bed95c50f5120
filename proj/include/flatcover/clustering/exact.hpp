#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flatcover/clustering/partitions.hpp"
#include "flatcover/clustering/solution.hpp"
#include "flatcover/core/guard.hpp"
#include "flatcover/fitting/best_fit.hpp"

namespace flatcover {

struct ExactOptions {
  bool prune = true;
  std::uint64_t guard = kDefaultGuard;
  std::optional<double> budget;  // decision mode when set
};

struct ExactResult {
  ClusteringSolution solution;
  std::uint64_t leaves = 0;  // complete partitions evaluated
  std::uint64_t pruned = 0;  // subtrees cut by the bound
  std::optional<bool> within_budget;
};

namespace detail {

inline void check_cluster_args(const FloatCloud& cloud, std::size_t k, int r) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  check_rank(cloud.dim(), r);
  if (cloud.empty()) throw std::invalid_argument("empty point cloud");
}

/// Records in canonical order (coordinates, then multiplicity), so the
/// search does not depend on input order.
inline std::vector<std::size_t> canonical_order(const FloatCloud& cloud) {
  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cloud[a].coords != cloud[b].coords) return cloud[a].coords < cloud[b].coords;
    return cloud[a].mult < cloud[b].mult;
  });
  return order;
}

/// Optimal single-flat cost of the listed records (two-pass scatter).
inline double block_cost(const FloatCloud& cloud, const std::vector<std::size_t>& members, int r) {
  if (members.empty()) return 0.0;
  const auto d = static_cast<Eigen::Index>(cloud.dim());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  double w = 0.0;
  for (auto i : members) {
    c += weight_of(cloud[i]) * as_vector(cloud[i]);
    w += weight_of(cloud[i]);
  }
  c /= w;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (auto i : members) {
    Eigen::VectorXd y = as_vector(cloud[i]) - c;
    s.noalias() += weight_of(cloud[i]) * y * y.transpose();
  }
  return tail_eigen_sum(s, r);
}

class ExactSearch {
 public:
  ExactSearch(const FloatCloud& cloud, std::size_t k, int r, bool prune)
      : cloud_(cloud), k_(k), r_(r), prune_(prune), order_(canonical_order(cloud)) {}

  ExactResult run() {
    blocks_.assign(k_, {});
    costs_.assign(k_, 0.0);
    labels_.assign(order_.size(), 0);
    descend(0, 0);
    ExactResult out;
    out.solution = std::move(best_);
    out.leaves = leaves_;
    out.pruned = pruned_;
    return out;
  }

 private:
  bool cut(double lb) const {
    return prune_ && have_best_ && lb > best_cost_ + 1e-9 * std::max(1.0, best_cost_);
  }

  void descend(std::size_t pos, std::size_t used) {
    if (pos == order_.size()) {
      leaf(used);
      return;
    }
    const std::size_t idx = order_[pos];
    const std::size_t limit = std::min(used + 1, k_);
    for (std::size_t b = 0; b < limit; ++b) {
      blocks_[b].push_back(idx);
      const double saved = costs_[b];
      if (prune_) costs_[b] = block_cost(cloud_, blocks_[b], r_);
      const double lb = std::accumulate(costs_.begin(), costs_.end(), 0.0);
      if (cut(lb)) {
        ++pruned_;
      } else {
        labels_[pos] = b;
        descend(pos + 1, std::max(used, b + 1));
      }
      costs_[b] = saved;
      blocks_[b].pop_back();
    }
  }

  void leaf(std::size_t used) {
    ++leaves_;
    std::vector<AffineFlat> flats;
    double cost = 0.0;
    for (std::size_t b = 0; b < used; ++b) {
      auto fit = best_fit_flat(cloud_.subset(blocks_[b]), r_);
      cost += fit.cost;
      flats.push_back(std::move(fit.flat));
    }
    if (have_best_ && !(cost < best_cost_)) return;
    have_best_ = true;
    best_cost_ = cost;
    while (flats.size() < k_) flats.push_back(flats.back());
    best_.flats = std::move(flats);
    best_.cost = cost;
    best_.assignment.assign(cloud_.size(), 0);
    for (std::size_t p = 0; p < order_.size(); ++p) best_.assignment[order_[p]] = labels_[p];
  }

  const FloatCloud& cloud_;
  std::size_t k_;
  int r_;
  bool prune_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<double> costs_;
  std::vector<std::size_t> labels_;
  ClusteringSolution best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  bool have_best_ = false;
  std::uint64_t leaves_ = 0, pruned_ = 0;
};

}  // namespace detail

/// Exact k-flat clustering: searches every partition of the records into
/// at most k blocks, fits each block optimally and keeps the cheapest.
/// With pruning on, a branch is abandoned once the optimal fit costs of its
/// partial blocks already exceed the incumbent. The returned assignment is
/// the optimal partition; flats beyond the number of used blocks repeat the
/// last fitted flat.
inline ExactResult solve_exact(const FloatCloud& cloud, std::size_t k, int r, const ExactOptions& opt = {}) {
  detail::check_cluster_args(cloud, k, r);
  check_partition_guard(cloud.size(), k, opt.guard);
  auto res = detail::ExactSearch(cloud, k, r, opt.prune).run();
  if (opt.budget) res.within_budget = res.solution.cost <= *opt.budget;
  return res;
}

/// Number of partitions (at most k blocks) that reproduce themselves when
/// each block is fitted and every record is reassigned to its nearest
/// fitted flat, ties to the lowest block.
inline std::uint64_t count_consistent_partitions(const FloatCloud& cloud, std::size_t k, int r,
                                                 std::uint64_t guard = kDefaultGuard) {
  detail::check_cluster_args(cloud, k, r);
  check_partition_guard(cloud.size(), k, guard);
  PartitionIterator it(cloud.size(), k);
  std::uint64_t count = 0;
  do {
    const auto& lab = it.labels();
    const std::size_t nb = it.blocks();
    std::vector<std::vector<std::size_t>> members(nb);
    for (std::size_t i = 0; i < lab.size(); ++i) members[lab[i]].push_back(i);
    std::vector<AffineFlat> flats;
    for (const auto& m : members) flats.push_back(best_fit_flat(cloud.subset(m), r).flat);
    bool same = true;
    for (std::size_t i = 0; i < lab.size() && same; ++i)
      same = nearest_flat(as_vector(cloud[i]), flats).first == lab[i];
    if (same) ++count;
  } while (it.next());
  return count;
}

}  // namespace flatcover
