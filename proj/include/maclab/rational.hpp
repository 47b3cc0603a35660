#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace maclab {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Dense matrix of exact rationals, row-major.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}

  Rational& operator()(int i, int j) { return data[std::size_t(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return data[std::size_t(i) * cols + j]; }

  static RationalMatrix identity(int n)
  {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);
/// Inverse by Gauss-Jordan; throws DimensionError when singular.
RationalMatrix inverse(const RationalMatrix& a);
bool operator==(const RationalMatrix& a, const RationalMatrix& b);

} // namespace maclab
