#pragma once

#include "maclab/affine_factor.hpp"
#include "maclab/qt_series.hpp"
#include "maclab/report.hpp"
#include "maclab/root_system.hpp"

#include <cstdint>
#include <vector>

namespace maclab {

struct IdentityOptions {
  std::uint64_t seed = 1;
  int points = 3;       // torus evaluation points for rank >= 2
  int dump_order = -1;  // embed coefficient tables up to this q-order (in q-units)
  bool perturb = false; // negative control: corrupt one factor of the identity
};

/// Exact rational torus points with numerator and denominator at most 7, avoiding the
/// poles e^alpha = 1 of every root; deterministic in the seed.
std::vector<std::vector<Rational>> torus_points(const RootSystem& rs, std::uint64_t seed, int count);

/// gamma translates whose summand reaches the window q <= nq_units, t <= nt.
std::vector<CorootPoint> level0_translates(const RootSystem& rs, int nq_units, int nt);

/// The gamma-rearranged sum over coroots of prod_{n>0, alpha} (1 - t z^{n+<alpha|gamma>} e^alpha)/(...).
template <class D>
QTSeries<D> psi_sum(const RootSystem& rs, const D& dom, const std::vector<CorootPoint>& gammas, int nq, int nt);

/// Kac E-series: psi_sum times prod_{n>0} [(1 - t z^n)/(1 - z^n)]^rank.
QTSeries<RFDomain> kac_E_series(const RootSystem& rs, int nq, int nt);
QTSeries<TorusPointDomain> kac_E_series(const RootSystem& rs, int nq, int nt, const std::vector<Rational>& point);

/// prod_{k, n >= 0} (1 - z^{n+1})(1 - t^{m_k+1} z^{n+1}) / ((1 - t z^{n+1})(1 - t^{m_k} z^n)).
QTSeries<RationalDomain> psi_product(const RootSystem& rs, int nq, int nt, bool perturb = false);

Report verify_1psi1(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt = {});

/// sum_w prod_{alpha>0} (1 - z^{<w alpha|gamma>} e^{w alpha})^{-1} = 1 for small gamma.
Report weyl_denominator_check(const RootSystem& rs, int nq, const IdentityOptions& opt = {});

/// Stability of the level-0 gamma truncation: one more flip shell changes nothing.
Report gamma_stability_check(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt = {});

/// G-constant term of a series with Laurent coefficients.
QTSeries<RationalDomain> constant_term(const RootSystem& rs, const QTSeries<LaurentDomain>& s);
/// prod_{n>0} prod_{mu in weights(g)} (1 - q^n e^mu)/(1 - t q^n e^mu).
QTSeries<LaurentDomain> koszul_factor(const RootSystem& rs, int nq, int nt);

Report verify_macdonald_ct(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt = {});

/// sum_gamma q^{gamma^2/2} e^gamma prod_{n>0} (1 - q^n)^{-rank}; simply laced only.
/// The series carries t-cutoff nt (it is constant in t) so it can multiply t-series.
QTSeries<LaurentDomain> basic_character(const RootSystem& rs, int nq, int nt = 0, bool heisenberg = true);

/// Level-one identity; qden = 2 realises q -> q^{1/2}. nq is the q-order after the substitution.
Report verify_level1(const RootSystem& rs, int nq, int nt, int qden, const IdentityOptions& opt = {});
Report bailey_sl2(int nq, int nt, const IdentityOptions& opt = {});

Report verify_brylinski(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt = {});
Report verify_ortho(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt = {});

} // namespace maclab
