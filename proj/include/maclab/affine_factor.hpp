#pragma once

#include "maclab/qt_series.hpp"

#include <string>
#include <vector>

namespace maclab {

/// (1 - c·t^a·q^j·e^mu)^sign.  Input factors have a >= 0; flipped factors may not.
struct AffineFactor {
  int sign = 1;
  int t_power = 0;
  Rational q_exponent;
  Weight mu;
  Rational scalar = 1;

  bool operator==(const AffineFactor&) const = default;
  std::string str() const;
};

/// Result of (1 - x) = -x·(1 - x^{-1}): prefactor (-c t^a q^j e^mu)^sign times the new factor.
struct FlipResult {
  Rational prefactor_scalar;
  int prefactor_t = 0;
  Rational prefactor_q;
  Weight prefactor_mu;
  AffineFactor factor;
};

FlipResult flip(const AffineFactor& f);

/// Factors (1 - c t^a q^{j0 + n·step} e^mu)^sign for n = 0, 1, ... while the
/// q-exponent stays within q_order (larger n give factors ≡ 1).
std::vector<AffineFactor> affine_family(int sign, int t_power, const Rational& j0, const Rational& step,
                                        const Weight& mu, const Rational& scalar, const Rational& q_order);

namespace detail {

inline int q_units_of(const Rational& j, int qden)
{
  Rational u = j * qden;
  if (u.get_den() != 1)
    throw DomainError("q-exponent " + j.get_str() + " is not a multiple of 1/" + std::to_string(qden));
  return int(u.get_num().get_si());
}

} // namespace detail

/// Exact truncated product of the factors.  Denominators with j < 0 (and
/// a = 0) are flipped; one sharing (j, mu, c) with a numerator of t-power a
/// pairs with it and the pair expands as (t^a - x)/(1 - x), x = c^{-1} q^{-j} e^{-mu}.
/// Factors with j = a = 0 are coefficient scalars.
template <class D>
QTSeries<D> truncated_product(const D& dom, const std::vector<AffineFactor>& factors, int qden, int nq_units,
                              int nt)
{
  using Coeff = typename D::Coeff;
  QTSeries<D> s = QTSeries<D>::one(dom, qden, nq_units, nt);
  std::vector<bool> used(factors.size(), false);

  // flipped denominators, paired with a numerator of equal (j, mu, c) when one exists
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const AffineFactor& f = factors[i];
    if (f.sign != -1 || sgn(f.q_exponent) >= 0)
      continue;
    if (f.t_power != 0)
      throw FlipPairingError("denominator " + f.str() + " has negative q-exponent and positive t-power");
    std::size_t partner = factors.size();
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const AffineFactor& g = factors[k];
      if (!used[k] && g.sign == 1 && g.q_exponent == f.q_exponent && g.mu == f.mu && g.scalar == f.scalar) {
        partner = k;
        break;
      }
    }
    used[i] = true;
    const int j = detail::q_units_of(f.q_exponent, qden);
    Coeff x = dom.monomial(-f.mu, 1 / f.scalar);
    if (partner == factors.size()) {
      // 1/(1 - c q^j e^mu) = -x/(1 - x)
      s.mul_poly({{dom.neg(x), 0, -j}});
    } else {
      used[partner] = true;
      s.mul_poly({{dom.one(), factors[partner].t_power, 0}, {dom.neg(x), 0, -j}});
    }
    if (-j <= nq_units)
      s.div_binomial(0, -j, x);
  }

  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (used[i])
      continue;
    const AffineFactor& f = factors[i];
    const int j = detail::q_units_of(f.q_exponent, qden);
    if (f.t_power < 0)
      throw DomainError("factor " + f.str() + " has a negative t-power");
    if (j < 0)
      throw FlipPairingError("numerator " + f.str() + " has a negative q-exponent");
    if (j == 0 && f.t_power == 0) {
      Coeff c = f.sign == 1 ? dom.one() : dom.inverse_one_minus(f.mu, f.scalar);
      if (f.sign == 1)
        dom.sub(c, dom.monomial(f.mu, f.scalar));
      s.scale_in_place(c);
      continue;
    }
    if (j > nq_units || f.t_power > nt)
      continue; // ≡ 1 within cutoffs
    Coeff m = dom.monomial(f.mu, f.scalar);
    if (f.sign == 1)
      s.mul_binomial(f.t_power, j, m);
    else
      s.div_binomial(f.t_power, j, m);
  }
  return s;
}

/// Expansion of a single factor.
template <class D>
QTSeries<D> expand_factor(const D& dom, const AffineFactor& f, int qden, int nq_units, int nt)
{
  return truncated_product(dom, std::vector<AffineFactor>{f}, qden, nq_units, nt);
}

} // namespace maclab
