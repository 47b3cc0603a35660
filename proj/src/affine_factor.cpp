#include "maclab/affine_factor.hpp"

namespace maclab {

std::string AffineFactor::str() const
{
  std::ostringstream os;
  os << "(1 - ";
  if (scalar != 1)
    os << scalar.get_str() << "·";
  os << "t^" << t_power << " q^" << q_exponent.get_str() << " e" << mu.str() << ")";
  if (sign != 1)
    os << "^" << sign;
  return os.str();
}

FlipResult flip(const AffineFactor& f)
{
  if (sgn(f.scalar) == 0)
    throw DomainError("cannot flip the factor 1");
  FlipResult r;
  // (1 - x)^s = (-x)^s (1 - x^{-1})^s
  Rational c = -f.scalar;
  r.prefactor_scalar = f.sign == 1 ? c : 1 / c;
  r.prefactor_t = f.sign * f.t_power;
  r.prefactor_q = f.sign * f.q_exponent;
  r.prefactor_mu = f.mu.scaled(f.sign);
  r.factor.sign = f.sign;
  r.factor.t_power = -f.t_power;
  r.factor.q_exponent = -f.q_exponent;
  r.factor.mu = -f.mu;
  r.factor.scalar = 1 / f.scalar;
  return r;
}

std::vector<AffineFactor> affine_family(int sign, int t_power, const Rational& j0, const Rational& step,
                                        const Weight& mu, const Rational& scalar, const Rational& q_order)
{
  if (sgn(step) <= 0)
    throw DomainError("factor family needs a positive q-step");
  std::vector<AffineFactor> out;
  for (Rational j = j0; j <= q_order; j += step)
    out.push_back(AffineFactor{sign, t_power, j, mu, scalar});
  return out;
}

} // namespace maclab
