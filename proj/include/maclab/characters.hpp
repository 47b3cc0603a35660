#pragma once

#include "maclab/root_system.hpp"
#include "maclab/torus_laurent.hpp"

#include <map>

namespace maclab {

struct IrrDecomposition {
  std::map<Weight, std::int64_t> mults; // dominant highest weight -> multiplicity
};

/// Character of the irreducible module with dominant highest weight lambda (Freudenthal).
TorusLaurent weyl_character(const RootSystem& rs, const Weight& lambda);

/// Weyl dimension formula.
Integer weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Iterated highest-term subtraction; the input must be Weyl invariant.
IrrDecomposition decompose(const RootSystem& rs, const TorusLaurent& chi);

TorusLaurent reconstruct(const RootSystem& rs, const IrrDecomposition& d);

/// Multiplicity of the trivial module: sum_w sign(w) coeff(rho - w rho).
std::int64_t invariant_multiplicity(const RootSystem& rs, const TorusLaurent& chi);

/// Character of the adjoint representation, including the full Cartan (rank terms at zero).
TorusLaurent adjoint_character(const RootSystem& rs);

} // namespace maclab
