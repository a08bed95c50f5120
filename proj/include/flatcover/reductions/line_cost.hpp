#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/hyperplane.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/reductions/rmis.hpp"

namespace flatcover {

/// Axis-parallel line: y = at when horizontal, x = at otherwise.
struct AxisLine {
  bool horizontal = true;
  Rational at;

  Hyperplane hyperplane() const { return Hyperplane::coordinate(2, horizontal ? 1 : 0, at); }

  static AxisLine from_hyperplane(const Hyperplane& h) {
    if (h.dim() != 2) throw std::invalid_argument("line must live in the plane");
    const auto& c = h.coeffs();
    if (c[1] != 0 && c[2] != 0) throw std::invalid_argument("line " + h.str() + " is not axis-aligned");
    const bool horiz = c[1] == 0;
    Rational at(-c[0], horiz ? c[2] : c[1]);
    at.canonicalize();
    return AxisLine{horiz, at};
  }
};

/// The four fixed lines, then h_i^{j_i}, then s_i^{j_i} for every bundle;
/// selection holds 0-based j_i.
inline std::vector<AxisLine> independent_set_to_lines(const RmisInstance& inst, const std::vector<std::size_t>& selection) {
  const auto& pr = inst.params;
  if (selection.size() != pr.ell) throw std::invalid_argument("selection needs one index per color class");
  for (auto j : selection)
    if (j >= pr.nu) throw std::invalid_argument("selection index out of range");
  const auto& L = inst.lines;
  std::vector<AxisLine> out{{true, Rational(L.top)}, {true, Rational(L.bottom)}, {false, Rational(L.left)},
                            {false, Rational(L.right)}};
  for (std::size_t i = 0; i < pr.ell; ++i) out.push_back({true, Rational(L.h[i][selection[i]])});
  for (std::size_t i = 0; i < pr.ell; ++i) out.push_back({false, Rational(L.s[i][selection[i]])});
  return out;
}

namespace detail {

/// Sorted intercepts of one orientation, plus the squared distance from a
/// coordinate to the nearest of them.
template <class T>
struct NearestAxis {
  std::vector<T> at;

  bool empty() const { return at.empty(); }

  T dist2(const T& u) const {
    auto it = std::lower_bound(at.begin(), at.end(), u);
    T best = -1;
    if (it != at.end()) {
      T dd = *it - u;
      best = dd * dd;
    }
    if (it != at.begin()) {
      T dd = u - *std::prev(it);
      T sq = dd * dd;
      if (best < 0 || sq < best) best = sq;
    }
    return best;
  }
};

template <class T>
T convert(const Rational& q);
template <>
inline BigInt convert<BigInt>(const Rational& q) {
  return q.get_num();
}
template <>
inline Rational convert<Rational>(const Rational& q) {
  return q;
}

template <class T>
std::pair<NearestAxis<T>, NearestAxis<T>> split_lines(const std::vector<AxisLine>& lines) {
  NearestAxis<T> hz, vt;
  for (const auto& l : lines) (l.horizontal ? hz : vt).at.push_back(convert<T>(l.at));
  std::sort(hz.at.begin(), hz.at.end());
  std::sort(vt.at.begin(), vt.at.end());
  return {hz, vt};
}

template <class T>
T min_dist2(const NearestAxis<T>& hz, const NearestAxis<T>& vt, const T& x, const T& y) {
  if (hz.empty()) return vt.dist2(x);
  if (vt.empty()) return hz.dist2(y);
  T a = hz.dist2(y), b = vt.dist2(x);
  return a < b ? a : b;
}

}  // namespace detail

/// Sum over records of multiplicity times squared distance to the nearest
/// line, exactly. Integer intercepts keep the whole sum in integers.
inline Rational exact_solution_cost(const RmisInstance& inst, const std::vector<AxisLine>& lines) {
  if (lines.empty()) throw std::invalid_argument("exact_solution_cost needs at least one line");
  const bool integral = std::all_of(lines.begin(), lines.end(), [](const AxisLine& l) { return is_integer(l.at); });
  if (integral) {
    auto [hz, vt] = detail::split_lines<BigInt>(lines);
    BigInt total = 0, d2;
    inst.for_each_record([&](const RmisTag&, const BigInt& x, const BigInt& y, const BigInt& m) {
      d2 = detail::min_dist2(hz, vt, x, y);
      total += m * d2;
    });
    return Rational(total);
  }
  auto [hz, vt] = detail::split_lines<Rational>(lines);
  Rational total = 0;
  inst.for_each_record([&](const RmisTag&, const BigInt& x, const BigInt& y, const BigInt& m) {
    total += Rational(m) * detail::min_dist2(hz, vt, Rational(x), Rational(y));
  });
  return total;
}

inline Rational exact_solution_cost(const ExactCloud& cloud, const std::vector<AxisLine>& lines) {
  if (lines.empty()) throw std::invalid_argument("exact_solution_cost needs at least one line");
  if (cloud.dim() != 2) throw std::invalid_argument("axis-line cost needs planar points");
  auto [hz, vt] = detail::split_lines<Rational>(lines);
  Rational total = 0;
  for (const auto& r : cloud.records())
    total += Rational(r.mult) * detail::min_dist2(hz, vt, r.coords[0], r.coords[1]);
  return total;
}

inline std::vector<AxisLine> to_axis_lines(const std::vector<Hyperplane>& planes) {
  std::vector<AxisLine> out;
  for (const auto& h : planes) out.push_back(AxisLine::from_hyperplane(h));
  return out;
}

}  // namespace flatcover
