#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatcover {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "num/den", "num", or a plain decimal such as "-1.25" into a
/// canonical rational. Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
      throw std::invalid_argument("unsupported rational literal: " + s);
    bool neg = s[0] == '-';
    std::string intpart = s.substr(neg || s[0] == '+' ? 1 : 0, dot - (neg || s[0] == '+' ? 1 : 0));
    std::string frac = s.substr(dot + 1);
    if (intpart.empty()) intpart = "0";
    if (frac.find_first_not_of("0123456789") != std::string::npos ||
        intpart.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed decimal: " + s);
    BigInt num(intpart + frac, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

/// "num/den" with the denominator omitted when it is 1.
inline std::string format_rational(const Rational& q) { return q.get_str(10); }

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt ipow(unsigned long base, unsigned long exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Floor of a rational as an integer.
inline BigInt floor_of(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline BigInt ceil_of(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Exact square root of a nonnegative rational if it is a perfect square.
inline bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
    return false;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(const BigInt& z) { return z.get_d(); }

/// Saturating conversion used by enumeration guards.
inline std::uint64_t saturate_u64(const BigInt& z) {
  if (sgn(z) <= 0) return 0;
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 63) return UINT64_MAX;
  return static_cast<std::uint64_t>(mpz_get_ui(z.get_mpz_t()));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace flatcover
