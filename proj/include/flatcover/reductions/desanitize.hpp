#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/errors.hpp"
#include "flatcover/core/rational.hpp"
#include "flatcover/reductions/line_cost.hpp"
#include "flatcover/reductions/rmis.hpp"

namespace flatcover {

/// count distinct points (x + t*step, y), t = 0..count-1, replacing one
/// multiplicity-count record at the integer position (x, y).
struct PerturbedRun {
  BigInt x, y, count;
};

struct DesanitizedSet {
  std::vector<PerturbedRun> runs;
  BigInt total;    // N
  Rational step;   // 1 / (3 B N^2)
  Rational delta;  // 1 / (3 B N)
  BigInt budget;   // B' = B + 1
};

inline DesanitizedSet desanitize_multiset(const RmisInstance& inst) {
  if (sgn(inst.params.B) <= 0) throw std::invalid_argument("budget must be positive");
  DesanitizedSet out;
  inst.for_each_record([&](const RmisTag&, const BigInt& x, const BigInt& y, const BigInt& m) {
    out.runs.push_back({x, y, m});
    out.total += m;
  });
  const BigInt& B = inst.params.B;
  out.step = Rational(BigInt(1), 3 * B * out.total * out.total);
  out.step.canonicalize();
  out.delta = Rational(BigInt(1), 3 * B * out.total);
  out.delta.canonicalize();
  out.budget = B + 1;
  return out;
}

struct DesanitizeCheck {
  bool distinct = false;       // no two produced points coincide
  bool within_delta = false;   // every point within delta of its origin
  bool denominators = false;   // all denominators divide 3 B N^2
  std::string detail;
  bool ok() const { return distinct && within_delta && denominators; }
};

/// Checks the contract on runs without expanding them: runs on one row
/// occupy disjoint x-intervals, the longest offset is at most delta, and
/// the step's denominator bounds every coordinate's denominator.
inline DesanitizeCheck check_desanitized(const DesanitizedSet& s, const BigInt& budget) {
  DesanitizeCheck c;
  const BigInt bound = 3 * budget * s.total * s.total;
  c.denominators = s.step.get_num() == 1 && s.step.get_den() <= bound;
  std::vector<const PerturbedRun*> order;
  for (const auto& r : s.runs) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const PerturbedRun* a, const PerturbedRun* b) {
    if (a->y != b->y) return a->y < b->y;
    return a->x < b->x;
  });
  c.distinct = true;
  c.within_delta = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Rational span = Rational(order[k]->count - 1) * s.step;
    if (span > s.delta) c.within_delta = false;
    if (k + 1 < order.size() && order[k + 1]->y == order[k]->y &&
        Rational(order[k + 1]->x) <= Rational(order[k]->x) + span) {
      c.distinct = false;
      c.detail = "runs overlap at y = " + order[k]->y.get_str();
    }
  }
  return c;
}

/// Materializes a run's points; only for small counts.
inline std::vector<std::pair<Rational, Rational>> run_points(const PerturbedRun& r, const Rational& step,
                                                             std::uint64_t limit = 1'000'000ULL) {
  if (r.count > BigInt(static_cast<unsigned long>(limit))) throw GuardError("expanding a perturbed run", saturate_u64(r.count), limit);
  std::vector<std::pair<Rational, Rational>> out;
  const unsigned long m = r.count.get_ui();
  for (unsigned long t = 0; t < m; ++t) out.emplace_back(Rational(r.x) + Rational(t) * step, Rational(r.y));
  return out;
}

namespace detail {

/// sum_{t=a}^{b} t^e for e = 0, 1, 2.
inline BigInt power_sum(const BigInt& a, const BigInt& b, int e) {
  auto upto = [e](const BigInt& m) -> BigInt {
    if (m < 0) return 0;
    if (e == 0) return m + 1;
    if (e == 1) return m * (m + 1) / 2;
    return m * (m + 1) * (2 * m + 1) / 6;
  };
  return upto(b) - upto(a - 1);
}

}  // namespace detail

/// Exact cost of one run against axis-parallel lines, in closed form.
/// Along the run the squared distance to the nearest vertical line is a
/// lower envelope of parabolas in t, capped by the constant distance to the
/// nearest horizontal line; every switch happens at a rational breakpoint,
/// and each piece is summed with power sums.
inline Rational run_cost(const PerturbedRun& r, const Rational& step, const std::vector<AxisLine>& lines) {
  std::vector<Rational> vert;
  std::optional<Rational> hdist;  // distance to the nearest horizontal line
  for (const auto& l : lines) {
    if (l.horizontal) {
      Rational dd = Rational(r.y) - l.at;
      if (sgn(dd) < 0) dd = -dd;
      if (!hdist || dd < *hdist) hdist = dd;
    } else {
      vert.push_back(l.at);
    }
  }
  if (vert.empty() && !hdist) throw std::invalid_argument("no lines");
  const Rational x0(r.x);
  const BigInt last = r.count - 1;
  // Breakpoints in t: pairwise midpoints and the points where a parabola
  // meets the horizontal cap.
  std::vector<Rational> cuts;
  auto to_t = [&](const Rational& u) { return Rational((u - x0) / step); };
  for (std::size_t a = 0; a < vert.size(); ++a) {
    for (std::size_t b = a + 1; b < vert.size(); ++b) cuts.push_back(to_t((vert[a] + vert[b]) / 2));
    if (hdist) {
      cuts.push_back(to_t(vert[a] - *hdist));
      cuts.push_back(to_t(vert[a] + *hdist));
    }
  }
  std::vector<BigInt> starts{BigInt(0)};
  for (const auto& c : cuts) {
    const BigInt s = ceil_of(c);
    if (s > 0 && s <= last) starts.push_back(s);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  Rational total = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const BigInt a = starts[k];
    const BigInt b = k + 1 < starts.size() ? BigInt(starts[k + 1] - 1) : last;
    const Rational probe = a == b ? Rational(a) : Rational(a) + Rational(1, 2);
    // Winner on [a, b]: the function smallest at the probe.
    const Rational u = x0 + probe * step;
    std::optional<std::size_t> win;
    Rational best;
    for (std::size_t i = 0; i < vert.size(); ++i) {
      const Rational dd = u - vert[i];
      const Rational sq = dd * dd;
      if (!win || sq < best) {
        best = sq;
        win = i;
      }
    }
    const BigInt len = b - a + 1;
    if (hdist && (!win || *hdist * *hdist <= best)) {
      total += Rational(len) * *hdist * *hdist;
      continue;
    }
    const Rational alpha = x0 - vert[*win];
    total += alpha * alpha * Rational(len) + 2 * alpha * step * Rational(detail::power_sum(a, b, 1)) +
             step * step * Rational(detail::power_sum(a, b, 2));
  }
  return total;
}

inline Rational desanitized_cost(const DesanitizedSet& s, const std::vector<AxisLine>& lines) {
  Rational total = 0;
  for (const auto& r : s.runs) total += run_cost(r, s.step, lines);
  return total;
}

}  // namespace flatcover
