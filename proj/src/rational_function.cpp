#include "maclab/rational_function.hpp"

#include "maclab/errors.hpp"

#include <sstream>

namespace maclab {

Poly::Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int degree, const Rational& c)
{
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim()
{
  while (!c_.empty() && sgn(c_.back()) == 0)
    c_.pop_back();
}

Rational Poly::operator[](int k) const
{
  if (k < 0 || k >= int(c_.size()))
    return 0;
  return c_[std::size_t(k)];
}

Poly Poly::operator+(const Poly& o) const
{
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i)
    r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(-1); }

Poly Poly::operator*(const Poly& o) const
{
  if (is_zero() || o.is_zero())
    return Poly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0)
      continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const
{
  if (sgn(s) == 0)
    return Poly();
  std::vector<Rational> r = c_;
  for (auto& x : r)
    x *= s;
  return Poly(std::move(r));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r)
{
  if (b.is_zero())
    throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)));
  for (int k = a.degree(); k >= db; --k) {
    const Rational& top = rem[std::size_t(k)];
    if (sgn(top) == 0)
      continue;
    Rational f = top / b.lead();
    quo[std::size_t(k - db)] = f;
    for (int j = 0; j <= db; ++j)
      rem[std::size_t(k - db + j)] -= f * b.c_[std::size_t(j)];
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b)
{
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero())
    return a;
  return a.scaled(Rational(1) / a.lead());
}

Rational Poly::evaluate(const Rational& u) const
{
  Rational s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    s = s * u + *it;
  return s;
}

int Poly::valuation() const
{
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0)
      return int(i);
  return 0;
}

namespace {

Poly shift_down(const Poly& p, int v)
{
  if (v == 0)
    return p;
  std::vector<Rational> c(p.coeffs().begin() + v, p.coeffs().end());
  return Poly(std::move(c));
}

Poly shift_up(const Poly& p, int v)
{
  if (v == 0 || p.is_zero())
    return p;
  std::vector<Rational> c(static_cast<std::size_t>(v));
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  return Poly(std::move(c));
}

Poly exact_div(const Poly& a, const Poly& b)
{
  Poly q, r;
  Poly::divmod(a, b, q, r);
  if (!r.is_zero())
    throw DomainError("inexact polynomial division");
  return q;
}

} // namespace

void RationalFunctionA1::normalize()
{
  if (num_.is_zero()) {
    shift_ = 0;
    den_ = Poly::constant(1);
    return;
  }
  int v = num_.valuation();
  num_ = shift_down(num_, v);
  shift_ += v;
  int w = den_.valuation();
  den_ = shift_down(den_, w);
  shift_ -= w;
  Rational d0 = den_[0];
  if (d0 != 1) {
    Rational inv = Rational(1) / d0;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunctionA1 RationalFunctionA1::constant(const Rational& c)
{
  RationalFunctionA1 r;
  r.num_ = Poly::constant(c);
  r.normalize();
  return r;
}

RationalFunctionA1 RationalFunctionA1::monomial(int power, const Rational& c)
{
  RationalFunctionA1 r = constant(c);
  if (!r.is_zero())
    r.shift_ = power;
  return r;
}

RationalFunctionA1 RationalFunctionA1::inverse_binomial(int power, const Rational& c)
{
  if (power == 0) {
    if (c == 1)
      throw DomainError("division by zero in rational function");
    return constant(Rational(1) / (1 - c));
  }
  RationalFunctionA1 r;
  r.num_ = Poly::constant(1);
  if (power > 0) {
    std::vector<Rational> d(static_cast<std::size_t>(power + 1));
    d[0] = 1;
    d.back() = -c;
    r.den_ = Poly(std::move(d));
  } else {
    // 1/(1 - c u^{-k}) = u^k / (u^k - c)
    const int k = -power;
    std::vector<Rational> d(static_cast<std::size_t>(k + 1));
    d[0] = -c;
    d.back() = 1;
    r.den_ = Poly(std::move(d));
    r.shift_ = k;
  }
  r.normalize();
  return r;
}

bool RationalFunctionA1::is_constant() const
{
  if (num_.is_zero())
    return true;
  return shift_ == 0 && num_ == den_.scaled(num_[0]);
}

Rational RationalFunctionA1::constant_value() const
{
  if (!is_constant())
    throw DomainError("rational function is not constant");
  return num_.is_zero() ? Rational(0) : num_[0];
}

RationalFunctionA1& RationalFunctionA1::operator+=(const RationalFunctionA1& o)
{
  if (o.is_zero())
    return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  const int s = std::min(shift_, o.shift_);
  Poly a = shift_up(num_, shift_ - s);
  Poly b = shift_up(o.num_, o.shift_ - s);
  if (den_ == o.den_) {
    num_ = a + b;
  } else {
    Poly g = Poly::gcd(den_, o.den_);
    Poly d1 = exact_div(den_, g), d2 = exact_div(o.den_, g);
    num_ = a * d2 + b * d1;
    den_ = den_ * d2;
  }
  shift_ = s;
  normalize();
  return *this;
}

RationalFunctionA1& RationalFunctionA1::operator-=(const RationalFunctionA1& o) { return *this += -o; }

RationalFunctionA1 RationalFunctionA1::operator+(const RationalFunctionA1& o) const
{
  RationalFunctionA1 r = *this;
  r += o;
  return r;
}

RationalFunctionA1 RationalFunctionA1::operator-(const RationalFunctionA1& o) const
{
  RationalFunctionA1 r = *this;
  r += -o;
  return r;
}

RationalFunctionA1 RationalFunctionA1::operator-() const
{
  RationalFunctionA1 r = *this;
  r.num_ = r.num_.scaled(-1);
  return r;
}

RationalFunctionA1 RationalFunctionA1::operator*(const RationalFunctionA1& o) const
{
  RationalFunctionA1 r;
  if (is_zero() || o.is_zero())
    return r;
  r.num_ = num_ * o.num_;
  r.shift_ = shift_ + o.shift_;
  r.den_ = den_ * o.den_;
  if (den_.degree() > 0 && o.den_.degree() > 0)
    return r.reduced();
  r.normalize();
  return r;
}

RationalFunctionA1 RationalFunctionA1::operator/(const RationalFunctionA1& o) const
{
  if (o.is_zero())
    throw DomainError("division by zero rational function");
  RationalFunctionA1 r;
  if (is_zero())
    return r;
  r.num_ = num_ * o.den_;
  r.den_ = den_ * o.num_;
  r.shift_ = shift_ - o.shift_;
  return r.reduced();
}

RationalFunctionA1 RationalFunctionA1::times_monomial(int power, const Rational& c) const
{
  RationalFunctionA1 r = *this;
  if (sgn(c) == 0 || is_zero())
    return RationalFunctionA1();
  r.num_ = r.num_.scaled(c);
  r.shift_ += power;
  return r;
}

bool RationalFunctionA1::operator==(const RationalFunctionA1& o) const
{
  if (is_zero() || o.is_zero())
    return is_zero() && o.is_zero();
  return shift_ == o.shift_ && num_ * o.den_ == o.num_ * den_;
}

Rational RationalFunctionA1::evaluate(const Rational& u) const
{
  Rational d = den_.evaluate(u);
  if (sgn(d) == 0)
    throw DomainError("rational function evaluated at a pole");
  Rational p = 1;
  for (int k = 0; k < std::abs(shift_); ++k)
    p *= u;
  if (shift_ < 0)
    p = Rational(1) / p;
  return num_.evaluate(u) * p / d;
}

RationalFunctionA1 RationalFunctionA1::reduced() const
{
  RationalFunctionA1 r = *this;
  r.normalize();
  if (r.den_.degree() > 0 && !r.num_.is_zero()) {
    Poly g = Poly::gcd(r.num_, r.den_);
    if (g.degree() > 0) {
      r.num_ = exact_div(r.num_, g);
      r.den_ = exact_div(r.den_, g);
    }
  }
  r.normalize();
  return r;
}

namespace {

std::string poly_str(const Poly& p, int shift)
{
  if (p.is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    Rational c = p[k];
    if (sgn(c) == 0)
      continue;
    if (!first)
      os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0)
      os << "-";
    first = false;
    Rational a = abs(c);
    const int e = k + shift;
    if (e == 0)
      os << a.get_str();
    else {
      if (a != 1)
        os << a.get_str() << "·";
      os << "u";
      if (e != 1)
        os << "^" << e;
    }
  }
  return os.str();
}

} // namespace

std::string RationalFunctionA1::str() const
{
  RationalFunctionA1 r = reduced();
  std::string n = poly_str(r.num_, r.shift_);
  if (r.den_.degree() <= 0)
    return n;
  return "(" + n + ")/(" + poly_str(r.den_, 0) + ")";
}

} // namespace maclab
