#pragma once

#include "maclab/rational.hpp"

#include <string>
#include <vector>

namespace maclab {

/// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c);
  static Poly constant(const Rational& c);
  static Poly monomial(int degree, const Rational& c);

  int degree() const { return int(c_.size()) - 1; } // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int k) const;
  Rational lead() const { return c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Quotient and remainder.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b); // monic

  Rational evaluate(const Rational& u) const;
  /// Lowest degree carrying a nonzero coefficient.
  int valuation() const;

private:
  void trim();
  std::vector<Rational> c_;
};

/// Exact rational function N(u)/D(u) of one torus variable, N a Laurent
/// polynomial u^shift * P(u), D a polynomial with D(0) = 1.
class RationalFunctionA1 {
public:
  RationalFunctionA1() = default;
  static RationalFunctionA1 constant(const Rational& c);
  static RationalFunctionA1 monomial(int power, const Rational& c);
  /// 1 / (1 - c u^power)
  static RationalFunctionA1 inverse_binomial(int power, const Rational& c);

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const;
  Rational constant_value() const; // requires is_constant()

  RationalFunctionA1& operator+=(const RationalFunctionA1& o);
  RationalFunctionA1& operator-=(const RationalFunctionA1& o);
  RationalFunctionA1 operator+(const RationalFunctionA1& o) const;
  RationalFunctionA1 operator-(const RationalFunctionA1& o) const;
  RationalFunctionA1 operator-() const;
  RationalFunctionA1 operator*(const RationalFunctionA1& o) const;
  RationalFunctionA1 operator/(const RationalFunctionA1& o) const;
  RationalFunctionA1 times_monomial(int power, const Rational& c) const;
  bool operator==(const RationalFunctionA1& o) const; // cross multiplication

  Rational evaluate(const Rational& u) const;
  /// Cancels common factors of numerator and denominator.
  RationalFunctionA1 reduced() const;
  std::string str() const;

  const Poly& numerator() const { return num_; }
  int shift() const { return shift_; }
  const Poly& denominator() const { return den_; }

private:
  void normalize();
  Poly num_;
  int shift_ = 0;
  Poly den_ = Poly::constant(1);
};

} // namespace maclab
