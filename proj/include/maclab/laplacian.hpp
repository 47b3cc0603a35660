#pragma once

#include "maclab/koszul.hpp"

#include <map>
#include <string>
#include <vector>

namespace maclab {

enum class OpTag { Ad, R, AdStar, RStar, D, DStar, Dbar, DbarStar, Dop, Box, Boxbar, K };

struct OperatorKind {
  OpTag tag = OpTag::Dbar;
  int a = 0; // basis index for generator operators
  int m = 0; // mode shift for generator operators
};

OperatorKind parse_operator(const std::string& s); // "dbar", "D", "box", "K", "R:a:m", "ad*:a:m", ...
std::string to_string(const OperatorKind& k);

/// The operators on Λ ⊗ S, written in the rational basis with explicit Gram factors.
class OperatorAlgebra {
public:
  explicit OperatorAlgebra(const KoszulAlgebra& alg);

  const KoszulAlgebra& algebra() const { return *alg_; }
  int span() const { return D_; }

  /// R_a(m), ad_a(m), d_a(m) and their adjoints, for |m| <= span.
  const GeneratorMap& R(int a, int m) const;
  const GeneratorMap& ad(int a, int m) const;
  const GeneratorMap& R_star(int a, int m) const;
  const GeneratorMap& ad_star(int a, int m) const;
  const GeneratorMap& d(int a, int m) const;
  const GeneratorMap& d_star(int a, int m) const;

  void dbar(const Monomial& x, const Rational& c, Element& out) const;
  void D(const Monomial& x, const Rational& c, Element& out) const;
  void box(const Monomial& x, const Rational& c, Element& out) const;
  void K(const Monomial& x, const Rational& c, Element& out) const;

  /// Generator operators (single derivations) as monomial operators.
  MonomialOp generator(const OperatorKind& k) const;
  /// The family whose joint kernel is the harmonic space: d_c(-m)* (m > 0), R_c(m) + ad_{θc}(-m)* (m >= 0).
  std::vector<MonomialOp> harmonic_family() const;

private:
  std::size_t slot(int a, int m) const { return std::size_t(a) * std::size_t(2 * D_ + 1) + std::size_t(m + D_); }
  const KoszulAlgebra* alg_;
  int D_;
  std::vector<GeneratorMap> R_, ad_, Rs_, ads_, d_, ds_;
  std::vector<Derivation> zero_action_; // total coadjoint action of u_e at shift 0
  std::vector<std::vector<Term>> kappa_rows_, kappa_inv_rows_;
};

/// Adjoint of M: S -> T with respect to the diagonal monomial metric.
SparseRationalMatrix metric_adjoint(const KoszulAlgebra& alg, const SparseRationalMatrix& m, const KoszulSlice& src,
                                    const KoszulSlice& tgt);

/// Matrix of an operator on (or from) a full or restricted slice; the target must be supplied
/// for operators that change degree or weight.
SparseRationalMatrix operator_matrix(const OperatorAlgebra& ops, const OperatorKind& kind, const KoszulSlice& src,
                                     const KoszulSlice& tgt);

/// Adjointness <Px|y> = <x|P*y> for a generator operator between two slices.
bool check_adjoint_pair(const OperatorAlgebra& ops, const OperatorKind& p, const KoszulSlice& src,
                        const KoszulSlice& tgt);

Report verify_nakano(const RootSystem& rs, int z_bound, int p_bound);

/// Symmetric invariant form on g given by its values on sorted slot lists.
struct InvariantPolynomial {
  int degree = 0;
  int exponent = 0;
  std::map<std::vector<int>, Rational> values; // sorted slots of total weight zero
  Rational operator()(std::vector<int> slots) const;
};

/// Tr(x^{m+1}) in the defining realization for every exponent m with m <= max_exponent.
/// Types whose invariants are not all traces (D4) raise DegreeError.
std::vector<InvariantPolynomial> primitive_invariants(const LieAlgebra& g, int max_exponent);
bool is_ad_invariant(const LieAlgebra& g, const InvariantPolynomial& phi);

Element build_S_cocycle(const KoszulAlgebra& alg, const InvariantPolynomial& phi, int n);
Element build_E_cocycle(const KoszulAlgebra& alg, const InvariantPolynomial& phi, int n);

/// Harmonic space of a restricted slice (torus weight zero) as coordinate vectors.
std::vector<std::vector<Rational>> harmonic_basis(const OperatorAlgebra& ops, const KoszulSlice& slice);

/// psi(-k-1) -> psi'(-k)/(k+1).
Element relabel(const KoszulAlgebra& from, const KoszulAlgebra& to, const Element& e);
/// Derivations z^m u_c and s z^m u_c (m >= 0) in the relabelled algebra.
std::vector<MonomialOp> current_algebra_family(const KoszulAlgebra& relabeled);

Report verify_harmonic(const RootSystem& rs, int z_bound, int p_bound);

} // namespace maclab
