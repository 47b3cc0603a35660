#pragma once

#include "maclab/lie_algebra.hpp"

#include <compare>
#include <string>
#include <unordered_map>
#include <vector>

namespace maclab {

/// A generator psi^a(-m) (odd) or sigma^a(-m) (even), stored as key = m·dim + a.
struct Mode {
  bool odd = true;
  int index = 0;
  int depth = 0;
};

/// psi_1 ∧ ... ∧ psi_k · sigma_1 ... sigma_p with odd keys strictly increasing
/// and even keys non-decreasing.  Keys sort by (depth, basis index).
struct Monomial {
  std::vector<int> odd;
  std::vector<int> even;

  int degree() const { return int(odd.size()); }
  int sym_degree() const { return int(even.size()); }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

using Element = std::unordered_map<Monomial, Rational, MonomialHash>;

void accumulate(Element& e, const Monomial& m, const Rational& c);
void accumulate(Element& e, const Element& x, const Rational& c = 1);
/// Drops zero coefficients.
void prune(Element& e);

/// Which depths are allowed for each parity.
struct ModeRules {
  int odd_min = 1;
  int odd_max = 0;
  int even_min = 0;
  int even_max = -1; // < even_min: no even generators
};

/// A linear map on generators of one parity, moving depth by a fixed shift;
/// extended to the algebra as a (super)derivation or used via the adjoint.
struct GeneratorMap {
  bool src_odd = true;
  bool tgt_odd = true;
  int depth_shift = 0;             // target depth = source depth + depth_shift
  std::vector<SparseVector> table; // by source key; terms index target basis elements
  bool is_zero() const;
};

/// Linear combination of generator maps, applied as a derivation.
struct Derivation {
  std::vector<std::pair<GeneratorMap, Rational>> parts;
  bool is_odd() const;
};

/// The algebra Λ ⊗ S on the modes allowed by the rules, with the hermitian
/// metric <psi^a(-m)|psi^a(-m)> = 1/(m·B(u_a,u_a)), <sigma^a|sigma^a> = 1/B(u_a,u_a).
class KoszulAlgebra {
public:
  KoszulAlgebra(const LieAlgebra& g, ModeRules rules);

  const LieAlgebra& lie() const { return *g_; }
  const ModeRules& rules() const { return rules_; }
  int dim() const { return dim_; }
  int max_depth() const { return std::max(rules_.odd_max, rules_.even_max); }

  int key(int a, int depth) const { return depth * dim_ + a; }
  int index_of(int key) const { return key % dim_; }
  int depth_of(int key) const { return key / dim_; }
  bool allowed(bool odd, int depth) const;

  int z_weight(const Monomial& m) const;
  Weight torus_weight(const Monomial& m) const;
  Rational mode_metric(bool odd, int key) const;
  Rational metric(const Monomial& m) const;

  /// z^shift·x acting by the truncated coadjoint action on generators of one parity.
  GeneratorMap coadjoint(const SparseVector& x, int shift, bool odd) const;
  /// d_x(shift): sigma^b(-m) -> (x.psi^b)(shift - m).
  GeneratorMap d_map(const SparseVector& x, int shift) const;
  /// psi^b(-m) -> (x.sigma^b)(shift - m); the odd generators s·z^shift·x after relabelling.
  GeneratorMap s_map(const SparseVector& x, int shift) const;
  GeneratorMap adjoint(const GeneratorMap& a) const;

  void apply(const GeneratorMap& a, const Monomial& x, const Rational& c, Element& out) const;
  void apply(const Derivation& d, const Monomial& x, const Rational& c, Element& out) const;
  Element apply(const Derivation& d, const Element& x) const;

  /// Left multiplication by a generator.
  void multiply(bool odd, int key, const Monomial& x, const Rational& c, Element& out) const;
  /// Adjoint of left multiplication: contraction for odd, metric·∂/∂sigma for even.
  void multiply_adjoint(bool odd, int key, const Monomial& x, const Rational& c, Element& out) const;
  Element product(const Element& x, const Element& y) const;
  /// Sign of x·y and the normal form, or 0.
  int product(const Monomial& x, const Monomial& y, Monomial& out) const;

  std::string mode_str(bool odd, int key) const;
  std::string str(const Monomial& m) const;
  std::string str(const Element& e) const;

private:
  const LieAlgebra* g_;
  ModeRules rules_;
  int dim_;
  std::vector<Weight> mode_weight_;
};

/// Sign of sorting v (insertion sort), or 0 on a repeated entry; v is sorted on return.
int sort_with_sign(std::vector<int>& v);

} // namespace maclab
