#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/cost.hpp"
#include "flatcover/core/flat.hpp"
#include "flatcover/core/point_cloud.hpp"

namespace flatcover {

inline constexpr double kEigenClamp = 1e-12;

struct FitResult {
  AffineFlat flat;
  double cost = 0.0;
  std::vector<double> spectrum;  // scatter eigenvalues, nonincreasing
};

inline Eigen::VectorXd centroid(const FloatCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("centroid of an empty cloud");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cloud.dim()));
  double w = 0.0;
  for (const auto& r : cloud.records()) {
    const double wr = weight_of(r);
    s += wr * as_vector(r);
    w += wr;
  }
  return s / w;
}

inline ExactVector centroid(const ExactCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("centroid of an empty cloud");
  ExactVector s(cloud.dim(), Rational(0));
  BigInt w = 0;
  for (const auto& r : cloud.records()) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += Rational(r.mult) * r.coords[i];
    w += r.mult;
  }
  for (auto& v : s) v /= Rational(w);
  return s;
}

/// Weighted scatter matrix sum_i w_i (x_i - c)(x_i - c)^T about c.
inline Eigen::MatrixXd scatter_matrix(const FloatCloud& cloud, const Eigen::VectorXd& c) {
  const auto d = static_cast<Eigen::Index>(cloud.dim());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (const auto& r : cloud.records()) {
    Eigen::VectorXd y = as_vector(r) - c;
    s.noalias() += weight_of(r) * y * y.transpose();
  }
  return s;
}

namespace detail {

struct SortedEigen {
  std::vector<double> values;  // descending, clamped
  Eigen::MatrixXd vectors;     // matching columns, sign-normalized
};

inline double clamp_eigen(double v) { return (v < 0.0 && v >= -kEigenClamp) ? 0.0 : v; }

/// Eigen-decomposition of a symmetric matrix, ordered by descending
/// eigenvalue with ties kept in the solver's index order; every vector is
/// signed so that its first largest-magnitude entry is positive.
inline SortedEigen sorted_eigen(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition failed");
  const auto d = s.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return ev(a) > ev(b); });
  SortedEigen out;
  out.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values.push_back(clamp_eigen(ev(src)));
    Eigen::VectorXd v = es.eigenvectors().col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    if (v(arg) < 0) v = -v;
    out.vectors.col(k) = v;
  }
  return out;
}

inline void check_rank(std::size_t dim, int r) {
  if (r < 0 || static_cast<std::size_t>(r) >= dim)
    throw std::invalid_argument("flat dimension r=" + std::to_string(r) + " out of range for d=" + std::to_string(dim));
}

}  // namespace detail

/// Sum of the d - r smallest eigenvalues of a scatter matrix: the optimal
/// single-flat cost for the points that produced it.
inline double tail_eigen_sum(const Eigen::MatrixXd& scatter, int r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter, Eigen::EigenvaluesOnly);
  double s = 0.0;
  const auto d = scatter.rows();
  for (Eigen::Index i = 0; i < d - r; ++i) s += detail::clamp_eigen(es.eigenvalues()(i));
  return std::max(s, 0.0);
}

/// Optimal r-flat for a weighted cloud: passes through the weighted
/// centroid and is spanned by the top r eigenvectors of the scatter matrix.
/// The reported cost is the weighted squared residual of the fitted flat.
inline FitResult best_fit_flat(const FloatCloud& cloud, int r) {
  detail::check_rank(cloud.dim(), r);
  if (cloud.empty()) throw std::invalid_argument("best_fit_flat on an empty cloud");
  const Eigen::VectorXd c = centroid(cloud);
  auto eig = detail::sorted_eigen(scatter_matrix(cloud, c));
  FitResult out;
  out.flat = AffineFlat::canonicalize(eig.vectors.leftCols(r), c);
  out.spectrum = std::move(eig.values);
  const AffineFlat one[] = {out.flat};
  double cost = 0.0;
  for (const auto& rec : cloud.records()) cost += weight_of(rec) * dist2_point_flat(as_vector(rec), one[0]);
  out.cost = cost;
  return out;
}

}  // namespace flatcover
