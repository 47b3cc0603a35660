#pragma once

#include "maclab/koszul_algebra.hpp"
#include "maclab/report.hpp"
#include "maclab/sparse_matrix.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace maclab {

enum class ComplexKind { Truncated, Restricted, Full };

std::string to_string(ComplexKind k);

/// Finite piece of a Koszul complex at fixed degree, z-weight, symmetric degree and torus weight.
struct KoszulSlice {
  ComplexKind kind = ComplexKind::Restricted;
  int n = 0; // truncation order for the truncated complex
  int degree = 0;
  int z_weight = 0;
  int s_weight = 0;
  Weight torus;
  std::vector<Monomial> basis;
  std::unordered_map<Monomial, int, MonomialHash> index;
  bool invariant_projected = false;
  SparseRationalMatrix invariants; // columns span the g-invariant subspace
  std::map<std::string, SparseRationalMatrix> matrices;

  int dim() const { return int(basis.size()); }
  /// Dimension of the subspace the complex lives on (invariants when projected).
  int active_dim() const { return invariant_projected ? invariants.cols() : dim(); }
  int find(const Monomial& m) const;
  /// Coordinates of an element; throws if it leaves the slice.
  std::vector<Rational> coordinates(const Element& e) const;
  Element element(const std::vector<Rational>& coords) const;
};

/// Slice size limit: MACLAB_CAP or 20000.
std::size_t slice_cap();

KoszulAlgebra truncated_algebra(const LieAlgebra& g, int n);
KoszulAlgebra restricted_algebra(const LieAlgebra& g, int max_depth);
/// psi'(-k) = (k+1)·psi(-k-1): odd depths start at 0.
KoszulAlgebra relabeled_algebra(const LieAlgebra& g, int max_depth);

/// All monomials with the given degree, symmetric degree and z-weight (and torus weight if given).
std::vector<Monomial> enumerate_monomials(const KoszulAlgebra& alg, int degree, int sym_degree, int z_weight,
                                          const Weight* torus, std::size_t cap);

KoszulSlice make_slice(const KoszulAlgebra& alg, ComplexKind kind, int degree, int sym_degree, int z_weight,
                       const Weight& torus, std::vector<Monomial> basis);

using MonomialOp = std::function<void(const Monomial&, const Rational&, Element&)>;

/// Matrix of op from src to tgt; images outside tgt raise OperatorDomainError.
SparseRationalMatrix operator_matrix(const KoszulSlice& src, const KoszulSlice& tgt, const MonomialOp& op);
/// Matrix of op with rows indexed by image monomials in order of appearance.
SparseRationalMatrix image_matrix(const std::vector<Monomial>& src, const std::vector<MonomialOp>& ops);

/// Chain boundary of x_1 ∧ ... ∧ x_k in Λ(g[z]/z^n), monomials read as chains.
void chain_boundary(const KoszulAlgebra& alg, const Monomial& x, const Rational& c, Element& out);
/// The differential of the restricted complex: sum_{b,m} psi^b(-m)(R_b(m) + ad_b(m)/2).
class RestrictedDifferential {
public:
  explicit RestrictedDifferential(const KoszulAlgebra& alg);
  void operator()(const Monomial& x, const Rational& c, Element& out) const;

private:
  const KoszulAlgebra* alg_;
  std::vector<std::vector<GeneratorMap>> r_, ad_; // [m][b]
};

/// Basis of g-invariants among torus-weight-zero monomials, as columns.
SparseRationalMatrix invariant_basis(const KoszulAlgebra& alg, const std::vector<Monomial>& basis);

/// Truncated cochain slice with its outgoing differential "d" (transpose of the chain boundary).
KoszulSlice trunc_slice(const LieAlgebra& g, int n, int degree, int z_weight, bool relative);
/// Restricted invariant slice with its outgoing differential "d".
KoszulSlice restricted_slice(const LieAlgebra& g, int degree, int sym_degree, int z_weight, int max_depth = -1);

/// dim(mid) - rank(d_out) - rank(d_in) on the active subspaces; NotAComplex if d_out·d_in ≠ 0.
long cohomology_dim(const KoszulSlice* in, const KoszulSlice& mid, const KoszulSlice* out);

struct GeneratorEntry {
  int degree = 0;
  int z_weight = 0;
  int s_weight = 0;
  int multiplicity = 1;
};

using GeneratorTable = std::vector<GeneratorEntry>;
/// Coefficients of a Hilbert series keyed by (degree, s_weight, z_weight).
using HilbertSeries = std::map<std::tuple<int, int, int>, long>;

GeneratorTable predicted_trunc_hilbert(const RootSystem& rs, int n);
/// Generators with z-weight >= z_bound.
GeneratorTable predicted_sym_hilbert(const RootSystem& rs, int z_bound);
/// Free graded-commutative algebra (odd degrees exterior) truncated to z >= z_bound, s <= s_bound.
HilbertSeries free_algebra_series(const GeneratorTable& gens, int z_bound, int s_bound);

/// Slices of degree 0..kmax (plus an empty one above) at fixed symmetric degree and z-weight.
struct SliceColumn {
  int p = 0, w = 0, kmax = 0;
  std::vector<KoszulSlice> slices;
  std::vector<long> rank_abs, rank_rel; // rank of d_k on the slice / on its invariants
  std::vector<long> h_abs, h_rel;
  bool squares_to_zero = true;
};

/// Restricted invariant slices with differentials and cohomology for 0 >= w >= z_bound, p <= p_bound.
std::vector<SliceColumn> restricted_columns(const KoszulAlgebra& alg, int z_bound, int p_bound);

Report verify_trunc(const RootSystem& rs, int n, int weight_bound);
Report verify_sym(const RootSystem& rs, int z_bound, int p_bound);
Report delta1_check(int m, int n, int N);

/// Largest number of odd generators with total depth at most |z_weight|.
int max_odd_degree(const KoszulAlgebra& alg, int z_weight);

/// Hook for sampling matrices for the rank oracle: called on every matrix whose rank is taken.
void set_rank_observer(std::function<void(const SparseRationalMatrix&)> f);
int observed_rank(const SparseRationalMatrix& m);

} // namespace maclab
