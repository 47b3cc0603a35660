#include "maclab/sparse_matrix.hpp"

#include "maclab/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace maclab {

SparseRationalMatrix::SparseRationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows))
{
  if (rows < 0 || cols < 0)
    throw DimensionError("negative matrix size");
}

std::size_t SparseRationalMatrix::nnz() const
{
  std::size_t n = 0;
  for (const auto& r : data_)
    n += r.size();
  return n;
}

void SparseRationalMatrix::add(int i, int j, const Rational& v)
{
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DimensionError("matrix index out of range");
  if (sgn(v) == 0)
    return;
  auto& r = data_[std::size_t(i)];
  auto [it, inserted] = r.try_emplace(j, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0)
      r.erase(it);
  }
}

Rational SparseRationalMatrix::get(int i, int j) const
{
  const auto& r = data_[std::size_t(i)];
  auto it = r.find(j);
  return it == r.end() ? Rational(0) : it->second;
}

SparseRationalMatrix SparseRationalMatrix::operator*(const SparseRationalMatrix& o) const
{
  if (cols_ != o.rows_)
    throw DimensionError("matrix product size mismatch");
  SparseRationalMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    auto& out = r.data_[std::size_t(i)];
    for (const auto& [k, a] : data_[std::size_t(i)])
      for (const auto& [j, b] : o.data_[std::size_t(k)]) {
        auto [it, inserted] = out.try_emplace(j, a * b);
        if (!inserted)
          it->second += a * b;
      }
    for (auto it = out.begin(); it != out.end();)
      it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  }
  return r;
}

SparseRationalMatrix SparseRationalMatrix::operator+(const SparseRationalMatrix& o) const
{
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionError("matrix sum size mismatch");
  SparseRationalMatrix r = *this;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : o.data_[std::size_t(i)])
      r.add(i, j, v);
  return r;
}

SparseRationalMatrix SparseRationalMatrix::operator-(const SparseRationalMatrix& o) const
{
  return *this + o.scaled(-1);
}

SparseRationalMatrix SparseRationalMatrix::scaled(const Rational& s) const
{
  SparseRationalMatrix r(rows_, cols_);
  if (sgn(s) == 0)
    return r;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      r.data_[std::size_t(i)].emplace(j, v * s);
  return r;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const
{
  SparseRationalMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      r.data_[std::size_t(j)].emplace(i, v);
  return r;
}

bool SparseRationalMatrix::operator==(const SparseRationalMatrix& o) const
{
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Rational> SparseRationalMatrix::apply(const std::vector<Rational>& x) const
{
  if (int(x.size()) != cols_)
    throw DimensionError("vector length does not match matrix columns");
  std::vector<Rational> y(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      y[std::size_t(i)] += v * x[std::size_t(j)];
  return y;
}

SparseRationalMatrix SparseRationalMatrix::vstack(const std::vector<const SparseRationalMatrix*>& blocks)
{
  int rows = 0, cols = blocks.empty() ? 0 : blocks.front()->cols_;
  for (const auto* b : blocks) {
    if (b->cols_ != cols)
      throw DimensionError("stacked blocks differ in width");
    rows += b->rows_;
  }
  SparseRationalMatrix r(rows, cols);
  int off = 0;
  for (const auto* b : blocks) {
    for (int i = 0; i < b->rows_; ++i)
      r.data_[std::size_t(off + i)] = b->data_[std::size_t(i)];
    off += b->rows_;
  }
  return r;
}

SparseRationalMatrix SparseRationalMatrix::select_columns(const std::vector<int>& cols) const
{
  std::vector<int> pos(static_cast<std::size_t>(cols_), -1);
  for (std::size_t k = 0; k < cols.size(); ++k)
    pos[std::size_t(cols[k])] = int(k);
  SparseRationalMatrix r(rows_, int(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      if (pos[std::size_t(j)] >= 0)
        r.data_[std::size_t(i)].emplace(pos[std::size_t(j)], v);
  return r;
}

RationalMatrix SparseRationalMatrix::to_dense() const
{
  RationalMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      m(i, j) = v;
  return m;
}

SparseRationalMatrix SparseRationalMatrix::from_dense(const RationalMatrix& m)
{
  SparseRationalMatrix r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      r.add(i, j, m(i, j));
  return r;
}

std::string SparseRationalMatrix::triplets() const
{
  std::ostringstream os;
  os << rows_ << " " << cols_ << " " << nnz() << "\n";
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[std::size_t(i)])
      os << i << " " << j << " " << v.get_str() << "\n";
  return os.str();
}

std::size_t SparseRationalMatrix::max_entry_bits() const
{
  std::size_t b = 0;
  for (const auto& r : data_)
    for (const auto& [j, v] : r)
      b = std::max({b, mpz_sizeinbase(v.get_num_mpz_t(), 2), mpz_sizeinbase(v.get_den_mpz_t(), 2)});
  return b;
}

// ---------------------------------------------------------------- modular rank

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return u64(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p)
{
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n)
{
  if (n < 2)
    return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (n % p == 0)
      return n == p;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

u64 to_mod(const Integer& z, u64 p)
{
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_ui();
}

using ModRow = std::vector<std::pair<int, u64>>;

// row <- row - f * piv, both sorted by column
void axpy_mod(ModRow& row, const ModRow& piv, u64 f, u64 p, ModRow& scratch)
{
  scratch.clear();
  std::size_t a = 0, b = 0;
  while (a < row.size() || b < piv.size()) {
    if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
      scratch.push_back(row[a++]);
    } else if (a == row.size() || piv[b].first < row[a].first) {
      scratch.emplace_back(piv[b].first, (p - mulmod(f, piv[b].second, p)) % p);
      ++b;
    } else {
      u64 v = (row[a].second + p - mulmod(f, piv[b].second, p)) % p;
      if (v)
        scratch.emplace_back(row[a].first, v);
      ++a;
      ++b;
    }
  }
  row.swap(scratch);
}

} // namespace

const std::vector<std::uint64_t>& rank_primes()
{
  static const std::vector<std::uint64_t> primes = [] {
    std::mt19937_64 rng(0x6d61636c6162ull);
    std::vector<std::uint64_t> out;
    while (out.size() < 3) {
      u64 c = (u64(1) << 31) - 1 - (rng() % (u64(1) << 24));
      c |= 1;
      if (miller_rabin(c) && std::find(out.begin(), out.end(), c) == out.end())
        out.push_back(c);
    }
    return out;
  }();
  return primes;
}

int rank_mod_p(const SparseRationalMatrix& m, std::uint64_t p)
{
  // rows ordered by length keeps fill-in small
  std::vector<int> order(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    order[std::size_t(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return m.row(a).size() < m.row(b).size(); });

  std::vector<ModRow> pivots(static_cast<std::size_t>(m.cols()));
  std::vector<bool> has(static_cast<std::size_t>(m.cols()), false);
  int rank = 0;
  ModRow row, scratch;
  for (int i : order) {
    row.clear();
    for (const auto& [j, v] : m.row(i)) {
      u64 den = to_mod(v.get_den(), p);
      if (den == 0)
        return -1;
      u64 x = mulmod(to_mod(v.get_num(), p), powmod(den, p - 2, p), p);
      if (x)
        row.emplace_back(j, x);
    }
    while (!row.empty()) {
      const int c = row.front().first;
      if (!has[std::size_t(c)]) {
        u64 inv = powmod(row.front().second, p - 2, p);
        for (auto& e : row)
          e.second = mulmod(e.second, inv, p);
        pivots[std::size_t(c)] = row;
        has[std::size_t(c)] = true;
        ++rank;
        break;
      }
      axpy_mod(row, pivots[std::size_t(c)], row.front().second, p, scratch);
    }
  }
  return rank;
}

// ---------------------------------------------------------------- fraction-free oracle

int rank_bareiss(const SparseRationalMatrix& m)
{
  const int R = m.rows(), C = m.cols();
  std::vector<std::vector<Integer>> a(static_cast<std::size_t>(R), std::vector<Integer>(static_cast<std::size_t>(C)));
  for (int i = 0; i < R; ++i) {
    Integer l = 1;
    for (const auto& [j, v] : m.row(i))
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& [j, v] : m.row(i))
      a[std::size_t(i)][std::size_t(j)] = v.get_num() * (l / v.get_den());
  }
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (sgn(a[std::size_t(i)][std::size_t(c)]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(a[std::size_t(piv)], a[std::size_t(r)]);
    const auto& pr = a[std::size_t(r)];
    for (int i = r + 1; i < R; ++i) {
      auto& row = a[std::size_t(i)];
      for (int j = c + 1; j < C; ++j) {
        row[std::size_t(j)] = pr[std::size_t(c)] * row[std::size_t(j)] - row[std::size_t(c)] * pr[std::size_t(j)];
        mpz_divexact(row[std::size_t(j)].get_mpz_t(), row[std::size_t(j)].get_mpz_t(), prev.get_mpz_t());
      }
      row[std::size_t(c)] = 0;
    }
    prev = pr[std::size_t(c)];
    ++r;
  }
  return r;
}

RankCertificate rank_certified(const SparseRationalMatrix& m)
{
  RankCertificate cert;
  if (m.nnz() == 0)
    return cert;
  for (u64 p : rank_primes()) {
    int r = rank_mod_p(m, p);
    if (r < 0)
      continue;
    cert.primes.push_back(p);
    cert.modular_ranks.push_back(r);
  }
  const bool agree = cert.modular_ranks.size() == rank_primes().size() &&
                     std::all_of(cert.modular_ranks.begin(), cert.modular_ranks.end(),
                                 [&](int r) { return r == cert.modular_ranks.front(); });
  if (agree) {
    cert.rank = cert.modular_ranks.front();
  } else {
    cert.rank = rank_bareiss(m);
    cert.fraction_free = true;
  }
  return cert;
}

int rank_exact(const SparseRationalMatrix& m) { return rank_certified(m).rank; }

// ---------------------------------------------------------------- kernel

std::vector<std::vector<Rational>> nullspace(const SparseRationalMatrix& m)
{
  const int C = m.cols();
  std::vector<SparseRationalMatrix::Row> piv(static_cast<std::size_t>(C));
  std::vector<bool> has(static_cast<std::size_t>(C), false);
  for (int i = 0; i < m.rows(); ++i) {
    SparseRationalMatrix::Row row = m.row(i);
    while (!row.empty()) {
      const int c = row.begin()->first;
      if (!has[std::size_t(c)]) {
        Rational inv = 1 / row.begin()->second;
        for (auto& [j, v] : row)
          v *= inv;
        piv[std::size_t(c)] = std::move(row);
        has[std::size_t(c)] = true;
        break;
      }
      Rational f = row.begin()->second;
      for (const auto& [j, v] : piv[std::size_t(c)]) {
        auto [it, inserted] = row.try_emplace(j, -f * v);
        if (!inserted) {
          it->second -= f * v;
          if (sgn(it->second) == 0)
            row.erase(it);
        }
      }
    }
  }
  // back substitution: reduced pivot rows only involve their pivot and free columns
  for (int c = C - 1; c >= 0; --c) {
    if (!has[std::size_t(c)])
      continue;
    auto& row = piv[std::size_t(c)];
    std::vector<int> bound;
    for (const auto& [j, v] : row)
      if (j != c && has[std::size_t(j)])
        bound.push_back(j);
    for (int j : bound) {
      Rational f = row.at(j);
      for (const auto& [k, v] : piv[std::size_t(j)]) {
        auto [it, inserted] = row.try_emplace(k, -f * v);
        if (!inserted) {
          it->second -= f * v;
          if (sgn(it->second) == 0)
            row.erase(it);
        }
      }
    }
  }
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < C; ++f) {
    if (has[std::size_t(f)])
      continue;
    std::vector<Rational> v(static_cast<std::size_t>(C));
    v[std::size_t(f)] = 1;
    for (int c = 0; c < f; ++c)
      if (has[std::size_t(c)]) {
        auto it = piv[std::size_t(c)].find(f);
        if (it != piv[std::size_t(c)].end())
          v[std::size_t(c)] = -it->second;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace maclab
