#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/rational.hpp"

namespace flatcover {

/// Default relative tolerance for float comparisons.
inline constexpr double kDefaultTol = 1e-9;

namespace detail {

inline void require_dims(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string("dimension mismatch in ") + what + ": " + std::to_string(got) +
                                " vs " + std::to_string(want));
}

}  // namespace detail

/// An r-flat p + span(B) in canonical form: B has orthonormal columns and
/// the offset p is orthogonal to span(B), so p is the point of the flat
/// closest to the origin.
class AffineFlat {
 public:
  AffineFlat() = default;

  /// Orthonormalizes raw_basis column by column (modified Gram-Schmidt,
  /// two passes) and projects raw_offset onto the orthogonal complement.
  /// Throws std::invalid_argument if a column is (numerically) dependent on
  /// the previous ones or if r >= d.
  static AffineFlat canonicalize(const Eigen::MatrixXd& raw_basis, const Eigen::VectorXd& raw_offset,
                                 double tol = kDefaultTol) {
    const Eigen::Index d = raw_offset.size();
    if (d == 0) throw std::invalid_argument("flat needs a positive ambient dimension");
    detail::require_dims(raw_basis.rows(), d, "canonicalize_flat");
    const Eigen::Index r = raw_basis.cols();
    if (r >= d) throw std::invalid_argument("flat dimension must be below the ambient dimension");
    Eigen::MatrixXd q(d, r);
    for (Eigen::Index j = 0; j < r; ++j) {
      Eigen::VectorXd v = raw_basis.col(j);
      const double scale = std::max(1.0, v.norm());
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
      const double nv = v.norm();
      if (!(nv > tol * scale)) throw std::invalid_argument("rank-deficient basis: column " + std::to_string(j));
      q.col(j) = v / nv;
    }
    AffineFlat f;
    f.basis_ = std::move(q);
    f.offset_ = raw_offset - f.basis_ * (f.basis_.transpose() * raw_offset);
    return f;
  }

  /// A 0-flat (single point).
  static AffineFlat point(const Eigen::VectorXd& p) { return canonicalize(Eigen::MatrixXd(p.size(), 0), p); }

  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  Eigen::Index ambient_dim() const { return offset_.size(); }
  Eigen::Index flat_dim() const { return basis_.cols(); }

  /// Orthonormal basis of the orthogonal complement of span(B), d x (d-r),
  /// taken from a full Householder QR of B.
  Eigen::MatrixXd complement() const {
    const Eigen::Index d = ambient_dim(), r = flat_dim();
    if (r == 0) return Eigen::MatrixXd::Identity(d, d);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis_);
    Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    return full.rightCols(d - r);
  }

  Eigen::VectorXd point_at(const Eigen::VectorXd& t) const { return offset_ + basis_ * t; }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    detail::require_dims(x.size(), ambient_dim(), "project");
    return offset_ + basis_ * (basis_.transpose() * x);
  }

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd offset_;
};

/// Squared Euclidean distance ||(I - BB^T)(x - p)||^2.
inline double dist2_point_flat(const Eigen::VectorXd& x, const AffineFlat& f) {
  detail::require_dims(x.size(), f.ambient_dim(), "dist2_point_flat");
  Eigen::VectorXd v = x - f.offset();
  v -= f.basis() * (f.basis().transpose() * v);
  return v.squaredNorm();
}

/// Squared distance written through the complement basis C: ||C^T (x - p)||^2.
/// C must have orthonormal columns (checked to tol).
inline double dist2_point_complement_form(const Eigen::VectorXd& x, const Eigen::MatrixXd& complement,
                                          const Eigen::VectorXd& p, double tol = kDefaultTol) {
  detail::require_dims(x.size(), p.size(), "dist2_point_complement_form");
  detail::require_dims(complement.rows(), p.size(), "dist2_point_complement_form");
  const Eigen::MatrixXd gram = complement.transpose() * complement;
  const double err = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (gram.size() > 0 && !(err <= tol)) throw std::invalid_argument("complement basis is not orthonormal");
  return (complement.transpose() * (x - p)).squaredNorm();
}

// Exact flats ---------------------------------------------------------------

using ExactVector = std::vector<Rational>;

inline Rational dot(const ExactVector& a, const ExactVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Rational-mode flat. The basis is exactly orthonormal, which restricts
/// exact flats to those admitting a rational orthonormal basis
/// (axis-aligned flats, Pythagorean rotations, ...).
class ExactFlat {
 public:
  /// Exact Gram-Schmidt followed by exact normalization. Throws
  /// std::invalid_argument if the basis is dependent or a column norm is
  /// irrational.
  static ExactFlat canonicalize(const std::vector<ExactVector>& raw_basis, const ExactVector& raw_offset) {
    const std::size_t d = raw_offset.size();
    if (d == 0) throw std::invalid_argument("flat needs a positive ambient dimension");
    if (raw_basis.size() >= d) throw std::invalid_argument("flat dimension must be below the ambient dimension");
    ExactFlat f;
    for (const auto& col : raw_basis) {
      if (col.size() != d) throw std::invalid_argument("dimension mismatch in canonicalize_flat");
      ExactVector v = col;
      for (const auto& b : f.basis_) {
        Rational c = dot(b, v);
        for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
      }
      Rational n2 = dot(v, v), n;
      if (sgn(n2) == 0) throw std::invalid_argument("rank-deficient basis");
      if (!exact_sqrt(n2, n)) throw std::invalid_argument("basis has no exact orthonormalization");
      for (auto& e : v) e /= n;
      f.basis_.push_back(std::move(v));
    }
    f.offset_ = raw_offset;
    for (const auto& b : f.basis_) {
      Rational c = dot(b, raw_offset);
      for (std::size_t i = 0; i < d; ++i) f.offset_[i] -= c * b[i];
    }
    return f;
  }

  const std::vector<ExactVector>& basis() const { return basis_; }
  const ExactVector& offset() const { return offset_; }
  std::size_t ambient_dim() const { return offset_.size(); }
  std::size_t flat_dim() const { return basis_.size(); }

 private:
  std::vector<ExactVector> basis_;
  ExactVector offset_;
};

inline Rational dist2_point_flat(const ExactVector& x, const ExactFlat& f) {
  if (x.size() != f.ambient_dim()) throw std::invalid_argument("dimension mismatch in dist2_point_flat");
  ExactVector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - f.offset()[i];
  for (const auto& b : f.basis()) {
    Rational c = dot(b, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
  return dot(v, v);
}

}  // namespace flatcover
