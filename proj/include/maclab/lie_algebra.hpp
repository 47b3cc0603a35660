#pragma once

#include "maclab/rational.hpp"
#include "maclab/root_system.hpp"

#include <vector>

namespace maclab {

struct Term {
  int index = 0;
  Rational coeff;
};

using SparseVector = std::vector<Term>;

/// Matrix realization of a reductive Lie algebra with a weight basis.
///
/// The basis u_a is ordered as positive root vectors (in the order of
/// RootSystem::positive_roots), then the Cartan part, then the transposes of
/// the positive root vectors.  Transposition is an anti-automorphism, the
/// form B(x, y) = kappa(x^T, y) is positive definite and diagonal in this basis.
struct LieAlgebra {
  RootSystem rs;
  int dim = 0;
  int matrix_size = 0;
  bool semisimple = true;
  std::vector<RationalMatrix> basis;
  std::vector<Weight> weights;
  std::vector<std::vector<SparseVector>> bracket; // [u_a, u_b]
  std::vector<std::vector<SparseVector>> coadjoint; // u_a . e^b  (e^b dual coordinates)
  RationalMatrix kappa;     // invariant form (Killing; trace form for gl_n)
  RationalMatrix kappa_inv;
  RationalMatrix theta;     // theta(u_b) = sum_c theta(c, b) u_c
  std::vector<Rational> beta; // B(u_a, u_a)
  std::vector<int> simple_raising;
  std::vector<int> simple_lowering;

  int theta_index(int a) const; // theta(u_a) is a multiple of u_{theta_index(a)}
  SparseVector coordinates(const RationalMatrix& x) const;
};

LieAlgebra build_lie_algebra(const RootSystem& rs);

/// Symmetrized trace Tr(x_1 ... x_k) / k! summed over orderings, in the realization.
Rational symmetrized_trace(const LieAlgebra& g, const std::vector<int>& slots);

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

} // namespace maclab
