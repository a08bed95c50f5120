#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatcover/core/flat.hpp"
#include "flatcover/core/point_cloud.hpp"
#include "flatcover/core/rng.hpp"
#include "flatcover/reductions/graph.hpp"

namespace flatcover::gen {

/// Standard normal by Box-Muller; unlike std::normal_distribution the
/// sequence is the same on every standard library.
inline double normal(CounterRng& rng) {
  double u = rng.uniform();
  while (u <= 0.0) u = rng.uniform();
  const double v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

struct PlantedSpec {
  std::size_t dim = 2, k = 3, r = 1, per_flat = 4;
  double spacing = 1.0;  // offset step between consecutive flats
  double noise = 0.1;    // absolute standard deviation
  double extent = 2.0;   // parameters range over [-extent, extent]^r, in units of spacing
  double tilt = 0.05;    // max slope against the first r axes
};

struct Planted {
  FloatCloud cloud;
  std::vector<AffineFlat> flats;
  std::vector<std::size_t> labels;  // per record
};

/// Flat i is {x : x[r..d) = i*spacing*e_last + T_i x[0..r)} with small random
/// slopes T_i. Parameters lie in [-extent, extent]^r times spacing; the first
/// one is stratified (point m sits in the m-th of per_flat equal slots, with
/// jitter) so no flat's points bunch together, the rest are uniform. The
/// default slopes keep the flats from crossing in that window. Noise is
/// isotropic Gaussian.
inline Planted planted(const PlantedSpec& s, std::uint64_t seed) {
  if (s.r >= s.dim) throw std::invalid_argument("planted flats need r < d");
  if (s.k == 0 || s.per_flat == 0) throw std::invalid_argument("planted instance needs k >= 1 and points per flat >= 1");
  if (!(s.noise >= 0.0) || !(s.spacing > 0.0) || !(s.extent > 0.0))
    throw std::invalid_argument("noise must be >= 0, spacing and extent > 0");
  CounterRng rng(seed, 1);
  const auto d = static_cast<Eigen::Index>(s.dim), r = static_cast<Eigen::Index>(s.r);
  Planted out{FloatCloud(s.dim), {}, {}};
  for (std::size_t i = 0; i < s.k; ++i) {
    Eigen::MatrixXd slope(d - r, r);
    for (Eigen::Index a = 0; a < slope.rows(); ++a)
      for (Eigen::Index b = 0; b < r; ++b) slope(a, b) = s.tilt * (2.0 * rng.uniform() - 1.0);
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(d);
    offset(d - 1) = s.spacing * static_cast<double>(i);
    Eigen::MatrixXd basis(d, r);
    basis.topRows(r) = Eigen::MatrixXd::Identity(r, r);
    basis.bottomRows(d - r) = slope;
    out.flats.push_back(AffineFlat::canonicalize(basis, offset));
    for (std::size_t m = 0; m < s.per_flat; ++m) {
      Eigen::VectorXd t(r);
      const double half = s.extent * s.spacing;
      const double slot = (2.0 * static_cast<double>(m) + 1.0 + (rng.uniform() - 0.5)) / static_cast<double>(s.per_flat);
      t(0) = half * (slot - 1.0);
      for (Eigen::Index b = 1; b < r; ++b) t(b) = half * (2.0 * rng.uniform() - 1.0);
      Eigen::VectorXd x = offset + basis * t;
      for (Eigen::Index c = 0; c < d; ++c) x(c) += s.noise * normal(rng);
      out.cloud.add(std::vector<double>(x.data(), x.data() + d));
      out.labels.push_back(i);
    }
  }
  return out;
}

/// n points uniform in [-1, 1]^d.
inline FloatCloud uniform_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed, 2);
  FloatCloud c(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim);
    for (auto& v : x) v = 2.0 * rng.uniform() - 1.0;
    c.add(std::move(x));
  }
  return c;
}

/// n exact points with integer coordinates in [0, range); small ranges give
/// many collinear triples. Duplicates are allowed.
inline ExactCloud integer_cloud(std::size_t n, std::size_t dim, std::uint64_t range, std::uint64_t seed) {
  if (range == 0) throw std::invalid_argument("range must be positive");
  CounterRng rng(seed, 3);
  ExactCloud c(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> x(dim);
    for (auto& v : x) v = Rational(static_cast<unsigned long>(rng.below(range)));
    c.add(std::move(x));
  }
  return c;
}

/// The m x m integer grid {0..m-1}^2.
inline ExactCloud grid(std::size_t m) {
  ExactCloud c(2);
  for (std::size_t y = 0; y < m; ++y)
    for (std::size_t x = 0; x < m; ++x)
      c.add({Rational(static_cast<unsigned long>(x)), Rational(static_cast<unsigned long>(y))});
  return c;
}

/// Path 0-1-...-(n-1).
inline ColoredGraph path_graph(std::size_t n) {
  ColoredGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// ell color classes of nu vertices; vertex (i, j) is i*nu + j and is
/// joined to (i +- 1 mod ell, j). Regular of degree 1 for ell = 2 and 2
/// otherwise. A pick of one j per class is independent iff neighbouring
/// classes pick different j.
inline ColoredGraph circulant_colored(std::size_t ell, std::size_t nu) {
  if (ell < 2 || nu < 1) throw std::invalid_argument("need ell >= 2 and nu >= 1");
  ColoredGraph g(ell * nu);
  for (std::size_t i = 0; i < ell; ++i) {
    const std::size_t i2 = (i + 1) % ell;
    if (ell == 2 && i == 1) break;
    for (std::size_t j = 0; j < nu; ++j) g.add_edge(i * nu + j, i2 * nu + j);
  }
  std::vector<std::vector<std::size_t>> classes(ell);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < nu; ++j) classes[i].push_back(i * nu + j);
  g.set_colors(std::move(classes));
  return g;
}

/// Two color classes of nu vertices; (0, j) is joined to (1, j + t mod nu)
/// for t < q, giving a q-regular graph.
inline ColoredGraph two_class_circulant(std::size_t nu, std::size_t q) {
  if (q == 0 || q > nu) throw std::invalid_argument("need 1 <= q <= nu");
  ColoredGraph g(2 * nu);
  for (std::size_t j = 0; j < nu; ++j)
    for (std::size_t t = 0; t < q; ++t) g.add_edge(j, nu + (j + t) % nu);
  std::vector<std::vector<std::size_t>> classes(2);
  for (std::size_t j = 0; j < nu; ++j) {
    classes[0].push_back(j);
    classes[1].push_back(nu + j);
  }
  g.set_colors(std::move(classes));
  return g;
}

/// Graph on n vertices whose edges are the set bits of mask, pairs (u < v)
/// numbered in lexicographic order.
inline ColoredGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  ColoredGraph g(n);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) g.add_edge(u, v);
  return g;
}

}  // namespace flatcover::gen
