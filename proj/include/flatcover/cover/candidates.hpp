#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "flatcover/clustering/partitions.hpp"
#include "flatcover/core/errors.hpp"
#include "flatcover/core/guard.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/cover/verify.hpp"
#include "flatcover/fitting/hyperplane_fit.hpp"

namespace flatcover {

inline constexpr std::uint64_t kDefaultCandidateGuard = 10'000'000ULL;

struct CandidateHyperplane {
  Hyperplane hyperplane;
  std::vector<std::size_t> covered;  // record indices, ascending
};

/// Number of nonempty subsets of at most d out of m positions.
inline BigInt subset_count(std::size_t m, std::size_t d) {
  BigInt total = 0;
  for (std::size_t s = 1; s <= d && s <= m; ++s) {
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), m, s);
    total += c;
  }
  return total;
}

/// Representative coordinates of each distinct position.
inline std::vector<ExactVector> position_coords(const ExactCloud& cloud,
                                                const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<ExactVector> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(cloud[g.front()].coords);
  return out;
}

namespace detail {

struct CandidateEnumerator {
  const ExactCloud& cloud;
  const std::vector<ExactVector>& pos;
  std::vector<CandidateHyperplane> out;
  std::map<Hyperplane, std::size_t> seen;
  std::vector<std::size_t> chosen;

  void emit() {
    std::vector<ExactVector> pts;
    for (auto i : chosen) pts.push_back(pos[i]);
    Hyperplane h = fit_hyperplane_exact(pts);
    if (seen.count(h)) return;
    seen.emplace(h, out.size());
    out.push_back({h, covered_records(cloud, h)});
  }

  void grow(std::size_t from, ExactMatrix& dirs) {
    for (std::size_t i = from; i < pos.size(); ++i) {
      if (!chosen.empty()) {
        ExactVector v(pos[i].size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = pos[i][j] - pos[chosen[0]][j];
        dirs.push_back(std::move(v));
        if (exact_rank(dirs) != dirs.size()) {
          dirs.pop_back();
          continue;
        }
      }
      chosen.push_back(i);
      emit();
      if (chosen.size() < cloud.dim()) grow(i + 1, dirs);
      chosen.pop_back();
      if (!chosen.empty()) dirs.pop_back();
    }
  }
};

}  // namespace detail

/// Every hyperplane fitted through an affinely independent subset of at
/// most d distinct positions (completed along e_1, e_2, ... when smaller),
/// deduplicated, in order of first generation. Subsets are visited in
/// lexicographic order of position indices.
inline std::vector<CandidateHyperplane> generate_candidates(const ExactCloud& cloud,
                                                            std::uint64_t guard = kDefaultCandidateGuard) {
  const auto groups = distinct_positions(cloud);
  const BigInt total = subset_count(groups.size(), cloud.dim());
  if (total > BigInt(static_cast<unsigned long>(guard)))
    throw GuardError("candidate generation", saturate_u64(total), guard);
  const auto pos = position_coords(cloud, groups);
  detail::CandidateEnumerator en{cloud, pos, {}, {}, {}};
  ExactMatrix dirs;
  en.grow(0, dirs);
  return std::move(en.out);
}

}  // namespace flatcover
