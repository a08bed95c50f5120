#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/flat.hpp"
#include "flatcover/core/rational.hpp"

namespace flatcover {

/// Hyperplane c0 + c1 x[1] + ... + cd x[d] = 0 over the rationals, stored
/// as coprime integers with the first nonzero of c1..cd positive, so each
/// hyperplane has exactly one representation.
class Hyperplane {
 public:
  static Hyperplane from_coefficients(const std::vector<Rational>& c) {
    if (c.size() < 2) throw std::invalid_argument("hyperplane needs d+1 >= 2 coefficients");
    BigInt den = 1;
    for (const auto& q : c) den = lcm(den, q.get_den());
    std::vector<BigInt> z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) z[i] = c[i].get_num() * (den / c[i].get_den());
    return from_integers(std::move(z));
  }

  static Hyperplane from_integers(std::vector<BigInt> z) {
    if (z.size() < 2) throw std::invalid_argument("hyperplane needs d+1 >= 2 coefficients");
    std::size_t lead = 1;
    while (lead < z.size() && z[lead] == 0) ++lead;
    if (lead == z.size()) throw std::invalid_argument("hyperplane normal must be nonzero");
    BigInt g = 0;
    for (const auto& v : z) g = gcd(g, v);
    if (z[lead] < 0) g = -g;
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    Hyperplane h;
    h.c_ = std::move(z);
    return h;
  }

  /// The axis-parallel hyperplane x[axis] = value (axis is 0-based).
  static Hyperplane coordinate(std::size_t dim, std::size_t axis, const Rational& value) {
    if (axis >= dim) throw std::invalid_argument("axis out of range");
    std::vector<Rational> c(dim + 1, Rational(0));
    c[0] = -value;
    c[axis + 1] = 1;
    return from_coefficients(c);
  }

  std::size_t dim() const { return c_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  Rational evaluate(const ExactVector& x) const {
    if (x.size() != dim()) throw std::invalid_argument("dimension mismatch in hyperplane evaluation");
    Rational s = c_[0];
    for (std::size_t j = 0; j < x.size(); ++j)
      if (c_[j + 1] != 0) s += c_[j + 1] * x[j];
    return s;
  }

  bool contains(const ExactVector& x) const { return sgn(evaluate(x)) == 0; }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].get_str();
    return s + "]";
  }

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) { return a.c_ == b.c_; }
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

 private:
  Hyperplane() = default;
  std::vector<BigInt> c_;
};

struct HyperplaneHash {
  std::size_t operator()(const Hyperplane& h) const {
    std::size_t s = h.coeffs().size();
    for (const auto& z : h.coeffs())
      s ^= std::hash<long>()(mpz_get_si(z.get_mpz_t())) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    return s;
  }
};

}  // namespace flatcover
