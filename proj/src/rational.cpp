#include "maclab/rational.hpp"

#include "maclab/errors.hpp"

namespace maclab {

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
  if (a.cols != b.rows)
    throw DimensionError("matrix product: inner dimensions differ");
  RationalMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (sgn(a(i, k)) == 0)
        continue;
      for (int j = 0; j < b.cols; ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix transpose(const RationalMatrix& a)
{
  RationalMatrix t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      t(j, i) = a(i, j);
  return t;
}

RationalMatrix inverse(const RationalMatrix& a)
{
  if (a.rows != a.cols)
    throw DimensionError("inverse of a non-square matrix");
  const int n = a.rows;
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw DimensionError("inverse of a singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rational p = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m(r, col)) == 0)
        continue;
      Rational f = m(r, col);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b)
{
  return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

} // namespace maclab
