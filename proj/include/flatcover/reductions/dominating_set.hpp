#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/errors.hpp"
#include "flatcover/core/hyperplane.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/reductions/graph.hpp"

namespace flatcover {

/// Entry of the Vandermonde value table: base g + 2 for 0-based row g,
/// raised to the 0-based column index.
inline BigInt vandermonde_value(std::size_t row, std::size_t col) {
  return ipow(static_cast<unsigned long>(row + 2), static_cast<unsigned long>(col));
}

/// Hyperplane Cover instance built from a graph on d vertices: d*k' points
/// per vertex in R^d. Point rows are numbered g = v*d*k' + i; coordinate
/// j (1-based) of row g is 1 when j-1 is in N[v] and (g+2)^j otherwise.
struct VandermondeInstance {
  ColoredGraph graph;
  std::size_t k = 0;
  ExactCloud cloud;
  std::vector<std::size_t> vertex_of;                 // per record
  std::vector<std::size_t> copy_of;                   // per record
  std::vector<std::vector<bool>> neighborhood_mask;   // [v][coordinate]

  std::size_t dim() const { return graph.size(); }
  std::size_t copies() const { return dim() * k; }
};

/// strict = false skips the k' > 1 and no-universal-vertex preconditions;
/// the construction itself is unchanged, only the equivalence guarantee is.
inline VandermondeInstance ds_to_hyperplane_cover(const ColoredGraph& g, std::size_t k_prime, bool strict = true) {
  const std::size_t d = g.size();
  if (d <= 1) throw std::invalid_argument("graph needs at least two vertices");
  if (k_prime == 0 || (strict && k_prime <= 1)) throw std::invalid_argument("k' must be at least 2");
  if (strict)
    for (std::size_t v = 0; v < d; ++v)
      if (g.degree(v) == d - 1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " has degree d-1 and dominates alone");
  VandermondeInstance inst;
  inst.graph = g;
  inst.k = k_prime;
  inst.cloud = ExactCloud(d);
  const std::size_t per = d * k_prime;
  inst.neighborhood_mask.assign(d, std::vector<bool>(d, false));
  for (std::size_t v = 0; v < d; ++v)
    for (auto u : g.closed_neighborhood(v)) inst.neighborhood_mask[v][u] = true;
  for (std::size_t v = 0; v < d; ++v)
    for (std::size_t i = 0; i < per; ++i) {
      const std::size_t row = v * per + i;
      std::vector<Rational> x(d);
      for (std::size_t c = 0; c < d; ++c)
        x[c] = inst.neighborhood_mask[v][c] ? Rational(1) : Rational(vandermonde_value(row, c + 1));
      inst.cloud.add(std::move(x));
      inst.vertex_of.push_back(v);
      inst.copy_of.push_back(i);
    }
  return inst;
}

/// The planes x[u] = 1 for u in S.
inline std::vector<Hyperplane> dominating_set_to_cover_witness(const VandermondeInstance& inst,
                                                               const std::vector<std::size_t>& s) {
  if (!inst.graph.is_dominating(s)) throw std::invalid_argument("vertex set is not dominating");
  if (s.size() > inst.k) throw std::invalid_argument("dominating set larger than k");
  std::vector<Hyperplane> out;
  for (auto u : s) out.push_back(Hyperplane::coordinate(inst.dim(), u, Rational(1)));
  return out;
}

/// Reads a dominating set off a cover: each plane that contains every
/// point of some vertex groups yields the smallest vertex adjacent or
/// equal to all of them.
inline std::vector<std::size_t> cover_to_dominating_set(const VandermondeInstance& inst,
                                                        const std::vector<Hyperplane>& planes) {
  const std::size_t d = inst.dim();
  std::vector<std::vector<bool>> group_hit(planes.size(), std::vector<bool>(d, true));
  for (std::size_t r = 0; r < inst.cloud.size(); ++r) {
    bool any = false;
    for (std::size_t j = 0; j < planes.size(); ++j) {
      if (planes[j].dim() != d) throw std::invalid_argument("plane dimension differs from instance");
      if (planes[j].contains(inst.cloud[r].coords))
        any = true;
      else
        group_hit[j][inst.vertex_of[r]] = false;
    }
    if (!any) throw std::invalid_argument("planes do not cover point " + std::to_string(r));
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < planes.size(); ++j) {
    std::vector<bool> common(d, true);
    bool some = false;
    for (std::size_t v = 0; v < d; ++v) {
      if (!group_hit[j][v]) continue;
      some = true;
      for (std::size_t u = 0; u < d; ++u) common[u] = common[u] && inst.neighborhood_mask[v][u];
    }
    if (!some) continue;
    auto it = std::find(common.begin(), common.end(), true);
    if (it == common.end())
      throw IntegrityError("plane " + planes[j].str() + " covers vertex groups without a common neighbor");
    const auto w = static_cast<std::size_t>(it - common.begin());
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  if (!inst.graph.is_dominating(out)) throw IntegrityError("extracted vertex set does not dominate");
  return out;
}

}  // namespace flatcover
