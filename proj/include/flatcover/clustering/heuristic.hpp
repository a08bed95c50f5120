#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "flatcover/clustering/exact.hpp"
#include "flatcover/clustering/solution.hpp"
#include "flatcover/core/rng.hpp"
#include "flatcover/fitting/best_fit.hpp"

namespace flatcover {

struct HeuristicConfig {
  int restarts = 10;
  int max_iter = 100;
  double rel_tol = 1e-12;
  std::uint64_t rng_seed = 0;
  int threads = 1;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  }
};

struct HeuristicRun {
  ClusteringSolution solution;
  std::vector<double> trace;  // cost after every assignment round
  int iterations = 0;
};

namespace detail {

inline std::vector<AffineFlat> refit(const FloatCloud& cloud, const ClusteringSolution& cur, std::size_t k, int r) {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < cur.assignment.size(); ++i) members[cur.assignment[i]].push_back(i);
  // Records by decreasing residual, for reseeding empty blocks.
  std::vector<std::size_t> by_residual(cloud.size());
  std::iota(by_residual.begin(), by_residual.end(), 0);
  std::vector<double> res(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    res[i] = dist2_point_flat(as_vector(cloud[i]), cur.flats[cur.assignment[i]]);
  std::stable_sort(by_residual.begin(), by_residual.end(), [&](std::size_t a, std::size_t b) { return res[a] > res[b]; });
  std::size_t next_seed = 0;
  std::vector<AffineFlat> flats(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!members[j].empty()) {
      flats[j] = best_fit_flat(cloud.subset(members[j]), r).flat;
    } else {
      const std::size_t i = by_residual[next_seed % by_residual.size()];
      ++next_seed;
      const std::size_t one[] = {i};
      flats[j] = best_fit_flat(cloud.subset(one), r).flat;
    }
  }
  return flats;
}

}  // namespace detail

/// One restart of solve_heuristic with its full cost trace.
inline HeuristicRun heuristic_restart(const FloatCloud& cloud, std::size_t k, int r, const HeuristicConfig& cfg,
                                       std::uint64_t restart) {
  CounterRng rng(cfg.rng_seed, restart);
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(r) + 1, cloud.size());
  std::vector<AffineFlat> flats;
  for (std::size_t j = 0; j < k; ++j) flats.push_back(best_fit_flat(cloud.subset(rng.sample(cloud.size(), m)), r).flat);
  HeuristicRun run;
  ClusteringSolution cur = assign_to_nearest(cloud, std::move(flats));
  run.trace.push_back(cur.cost);
  for (int it = 0; it < cfg.max_iter; ++it) {
    ++run.iterations;
    ClusteringSolution nxt = assign_to_nearest(cloud, detail::refit(cloud, cur, k, r));
    run.trace.push_back(nxt.cost);
    const double gain = cur.cost - nxt.cost;
    if (nxt.cost <= cur.cost) cur = std::move(nxt);
    if (gain < cfg.rel_tol * std::max(cur.cost, std::numeric_limits<double>::min())) break;
  }
  run.solution = std::move(cur);
  return run;
}

/// Alternating assign/refit from random seeds; the best restart wins, ties
/// to the lowest restart index, so results do not depend on threading.
inline ClusteringSolution solve_heuristic(const FloatCloud& cloud, std::size_t k, int r, const HeuristicConfig& cfg = {}) {
  detail::check_cluster_args(cloud, k, r);
  cfg.validate();
  const auto n = static_cast<std::uint64_t>(cfg.restarts);
  std::vector<HeuristicRun> runs(n);
  if (cfg.threads <= 1) {
    for (std::uint64_t s = 0; s < n; ++s) runs[s] = heuristic_restart(cloud, k, r, cfg, s);
  } else {
    for (std::uint64_t base = 0; base < n; base += static_cast<std::uint64_t>(cfg.threads)) {
      std::vector<std::future<HeuristicRun>> jobs;
      for (std::uint64_t s = base; s < std::min(n, base + static_cast<std::uint64_t>(cfg.threads)); ++s)
        jobs.push_back(std::async(std::launch::async, [&, s] { return heuristic_restart(cloud, k, r, cfg, s); }));
      for (std::uint64_t s = base; s < base + jobs.size(); ++s) runs[s] = jobs[s - base].get();
    }
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s].solution.cost < runs[best].solution.cost) best = s;
  return std::move(runs[best].solution);
}

}  // namespace flatcover
