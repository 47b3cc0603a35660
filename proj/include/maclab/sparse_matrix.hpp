#pragma once

#include "maclab/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace maclab {

/// Exact sparse matrix over Q, stored by rows.  Zero entries are never stored.
class SparseRationalMatrix {
public:
  using Row = std::map<int, Rational>;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  /// Accumulates v into entry (i, j).
  void add(int i, int j, const Rational& v);
  Rational get(int i, int j) const;
  const Row& row(int i) const { return data_[std::size_t(i)]; }

  SparseRationalMatrix operator*(const SparseRationalMatrix& o) const;
  SparseRationalMatrix operator+(const SparseRationalMatrix& o) const;
  SparseRationalMatrix operator-(const SparseRationalMatrix& o) const;
  SparseRationalMatrix scaled(const Rational& s) const;
  SparseRationalMatrix transpose() const;
  bool operator==(const SparseRationalMatrix& o) const;

  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  /// Rows of a placed below rows of b.
  static SparseRationalMatrix vstack(const std::vector<const SparseRationalMatrix*>& blocks);
  /// Sub-matrix of the chosen columns.
  SparseRationalMatrix select_columns(const std::vector<int>& cols) const;

  RationalMatrix to_dense() const;
  static SparseRationalMatrix from_dense(const RationalMatrix& m);
  /// "rows cols nnz" header, then one "i j value" line per entry.
  std::string triplets() const;
  /// Largest absolute numerator or denominator, as a bit count.
  std::size_t max_entry_bits() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Row> data_;
};

/// Rank modulo p; returns -1 when some denominator vanishes mod p.
int rank_mod_p(const SparseRationalMatrix& m, std::uint64_t p);

struct RankCertificate {
  int rank = 0;
  std::vector<std::uint64_t> primes;
  std::vector<int> modular_ranks;
  bool fraction_free = false; // primes disagreed, rank from Bareiss
};

/// Modular rank at three fixed word-size primes; Bareiss elimination on disagreement.
RankCertificate rank_certified(const SparseRationalMatrix& m);
int rank_exact(const SparseRationalMatrix& m);

/// Dense fraction-free (Bareiss) elimination; the independent oracle.
int rank_bareiss(const SparseRationalMatrix& m);

/// Exact basis of the right kernel {x : M x = 0}.
std::vector<std::vector<Rational>> nullspace(const SparseRationalMatrix& m);

/// Deterministic primes just below 2^31 chosen by Miller-Rabin from a fixed seed.
const std::vector<std::uint64_t>& rank_primes();

} // namespace maclab
