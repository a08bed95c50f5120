#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "flatcover/clustering/solution.hpp"
#include "flatcover/cover/verify.hpp"
#include "flatcover/reductions/dominating_set.hpp"
#include "flatcover/reductions/line_cost.hpp"
#include "flatcover/reductions/rmis.hpp"

namespace flatcover {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Named exact checks; the CLI prints these verbatim.
struct VerifyReport {
  std::vector<AuditCheck> checks;
  bool ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.ok; });
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

inline VerifyReport verify_cover_witness(const ExactCloud& cloud, const std::vector<Hyperplane>& planes, std::size_t k) {
  VerifyReport rep;
  rep.add("size <= k", planes.size() <= k, std::to_string(planes.size()) + " of " + std::to_string(k));
  bool dims = std::all_of(planes.begin(), planes.end(), [&](const Hyperplane& h) { return h.dim() == cloud.dim(); });
  rep.add("dimension", dims);
  rep.add("covers every point", dims && verify_cover(cloud, planes));
  return rep;
}

/// A hyperplane witness for a dominating-set instance: it must cover and
/// map back to a dominating set of size at most k.
inline VerifyReport verify_ds_cover(const VandermondeInstance& inst, const std::vector<Hyperplane>& planes) {
  VerifyReport rep = verify_cover_witness(inst.cloud, planes, inst.k);
  if (!rep.ok()) return rep;
  try {
    const auto s = cover_to_dominating_set(inst, planes);
    std::string list;
    for (auto v : s) list += (list.empty() ? "" : ",") + std::to_string(v);
    rep.add("maps to dominating set", inst.graph.is_dominating(s) && s.size() <= inst.k, "{" + list + "}");
  } catch (const std::exception& e) {
    rep.add("maps to dominating set", false, e.what());
  }
  return rep;
}

/// A vertex-set witness: it must dominate and its planes must cover.
inline VerifyReport verify_ds_vertices(const VandermondeInstance& inst, const std::vector<std::size_t>& s) {
  VerifyReport rep;
  const bool in_range = std::all_of(s.begin(), s.end(), [&](std::size_t v) { return v < inst.dim(); });
  rep.add("vertices in range", in_range);
  if (!in_range) return rep;
  rep.add("dominating", inst.graph.is_dominating(s));
  rep.add("size <= k", s.size() <= inst.k, std::to_string(s.size()) + " of " + std::to_string(inst.k));
  if (!rep.ok()) return rep;
  const auto planes = dominating_set_to_cover_witness(inst, s);
  rep.add("covers every point", verify_cover(inst.cloud, planes));
  return rep;
}

/// Multicolored selection (0-based j per class): the structural audit, the
/// independence of the picked vertices and the exact cost against B.
inline VerifyReport verify_rmis_selection(const RmisInstance& inst, const std::vector<std::size_t>& selection) {
  VerifyReport rep;
  const auto audit = audit_rmis(inst);
  for (const auto& c : audit.checks) rep.checks.push_back(c);
  if (selection.size() != inst.params.ell ||
      std::any_of(selection.begin(), selection.end(), [&](std::size_t j) { return j >= inst.params.nu; })) {
    rep.add("selection shape", false, "need one index below nu per class");
    return rep;
  }
  std::vector<std::size_t> verts;
  for (std::size_t i = 0; i < selection.size(); ++i) verts.push_back(inst.vertex_at(i, selection[i]));
  rep.add("independent", inst.graph.is_independent(verts));
  const Rational cost = exact_solution_cost(inst, independent_set_to_lines(inst, selection));
  rep.add("cost <= B", cost <= Rational(inst.params.B), "cost = " + format_rational(cost) + ", B = " + inst.params.B.get_str());
  return rep;
}

inline VerifyReport verify_clustering(const FloatCloud& cloud, const ClusteringSolution& sol, double tol,
                                      std::optional<double> budget = std::nullopt) {
  VerifyReport rep;
  const bool shape = sol.assignment.size() == cloud.size() && !sol.flats.empty() &&
                     std::all_of(sol.flats.begin(), sol.flats.end(),
                                 [&](const AffineFlat& f) { return f.ambient_dim() == static_cast<Eigen::Index>(cloud.dim()); });
  rep.add("shape", shape);
  if (!shape) return rep;
  rep.add("voronoi consistent", is_voronoi_consistent(cloud, sol, tol));
  const double c = assignment_cost(cloud, sol.flats, sol.assignment);
  rep.add("reported cost", std::abs(c - sol.cost) <= tol * std::max(1.0, std::abs(c)), "recomputed " + detail::format_double(c));
  if (budget) rep.add("cost <= B", c <= *budget);
  return rep;
}

}  // namespace flatcover
