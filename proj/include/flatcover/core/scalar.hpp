#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "flatcover/core/rational.hpp"

namespace flatcover {

enum class ScalarMode { Rational, Float };

inline const char* to_string(ScalarMode m) { return m == ScalarMode::Rational ? "rational" : "float"; }

inline ScalarMode parse_scalar_mode(const std::string& s) {
  if (s == "rational") return ScalarMode::Rational;
  if (s == "float") return ScalarMode::Float;
  throw std::invalid_argument("unknown scalar mode: " + s);
}

struct ModeMismatch : std::logic_error {
  ModeMismatch() : std::logic_error("mixed rational and float scalars") {}
};

/// A number tagged with its arithmetic regime. Rational values are always
/// canonical; combining a rational with a float throws ModeMismatch.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  Scalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(canon(std::move(v))) {}  // NOLINT(google-explicit-constructor)

  ScalarMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::Rational : ScalarMode::Float;
  }
  bool is_exact() const { return mode() == ScalarMode::Rational; }

  const Rational& rational() const {
    if (auto* q = std::get_if<Rational>(&value_)) return *q;
    throw ModeMismatch();
  }
  double real() const {
    if (auto* d = std::get_if<double>(&value_)) return *d;
    throw ModeMismatch();
  }
  double approx() const {
    return is_exact() ? std::get<Rational>(value_).get_d() : std::get<double>(value_);
  }

  std::string str() const {
    if (is_exact()) return format_rational(std::get<Rational>(value_));
    return std::to_string(std::get<double>(value_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x + y; }); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x - y; }); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x * y; }); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a.is_exact() ? a.rational() == b.rational() : a.real() == b.real();
  }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a.is_exact() ? a.rational() < b.rational() : a.real() < b.real();
  }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }

 private:
  static Rational canon(Rational q) {
    q.canonicalize();
    return q;
  }
  static void check(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) throw ModeMismatch();
  }
  template <class Op>
  static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    check(a, b);
    if (a.is_exact()) return Scalar(Rational(op(a.rational(), b.rational())));
    return Scalar(static_cast<double>(op(a.real(), b.real())));
  }

  std::variant<Rational, double> value_;
};

}  // namespace flatcover
