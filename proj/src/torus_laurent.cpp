#include "maclab/torus_laurent.hpp"

#include "maclab/errors.hpp"

#include <sstream>

namespace maclab {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in character arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in character arithmetic");
  return r;
}

TorusLaurent TorusLaurent::constant(int rank, std::int64_t c)
{
  TorusLaurent t(rank);
  t.add_term(Weight::zero(rank), c);
  return t;
}

TorusLaurent TorusLaurent::monomial(const Weight& w, std::int64_t c)
{
  TorusLaurent t(w.rank());
  t.add_term(w, c);
  return t;
}

std::int64_t TorusLaurent::coeff(const Weight& w) const
{
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

void TorusLaurent::add_term(const Weight& w, std::int64_t c)
{
  if (c == 0)
    return;
  if (w.rank() != rank_)
    throw DimensionError("torus weight rank mismatch");
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0)
      terms_.erase(it);
  }
}

void TorusLaurent::add_shifted(const TorusLaurent& x, const Weight& mu, std::int64_t c)
{
  if (c == 0)
    return;
  for (const auto& [w, v] : x.terms_)
    add_term(w + mu, checked_mul(v, c));
}

TorusLaurent& TorusLaurent::operator+=(const TorusLaurent& o)
{
  if (terms_.empty())
    rank_ = o.rank_;
  for (const auto& [w, v] : o.terms_)
    add_term(w, v);
  return *this;
}

TorusLaurent& TorusLaurent::operator-=(const TorusLaurent& o)
{
  if (terms_.empty())
    rank_ = o.rank_;
  for (const auto& [w, v] : o.terms_)
    add_term(w, checked_mul(v, -1));
  return *this;
}

TorusLaurent TorusLaurent::operator+(const TorusLaurent& o) const
{
  TorusLaurent r = *this;
  r += o;
  return r;
}

TorusLaurent TorusLaurent::operator-(const TorusLaurent& o) const
{
  TorusLaurent r = *this;
  r -= o;
  return r;
}

TorusLaurent TorusLaurent::operator-() const { return scaled(-1); }

TorusLaurent TorusLaurent::operator*(const TorusLaurent& o) const
{
  TorusLaurent r(rank_);
  for (const auto& [w, v] : o.terms_)
    r.add_shifted(*this, w, v);
  return r;
}

TorusLaurent TorusLaurent::scaled(std::int64_t c) const
{
  TorusLaurent r(rank_);
  if (c == 0)
    return r;
  for (const auto& [w, v] : terms_)
    r.terms_.emplace(w, checked_mul(v, c));
  return r;
}

TorusLaurent TorusLaurent::conjugate() const
{
  TorusLaurent r(rank_);
  for (const auto& [w, v] : terms_)
    r.terms_.emplace(-w, v);
  return r;
}

bool TorusLaurent::is_weyl_invariant(const RootSystem& rs) const
{
  for (const auto& [w, v] : terms_)
    for (int i = 0; i < rs.ss_rank; ++i) {
      Weight s = w - rs.simple_roots[std::size_t(i)].scaled(w[i]);
      if (coeff(s) != v)
        return false;
    }
  return true;
}

Rational torus_monomial_value(const Weight& mu, const std::vector<Rational>& point)
{
  if (int(point.size()) != mu.rank())
    throw DimensionError("torus point rank mismatch");
  Rational v = 1;
  for (int i = 0; i < mu.rank(); ++i) {
    int e = mu[i];
    if (e == 0)
      continue;
    Rational base = e > 0 ? point[std::size_t(i)] : Rational(1) / point[std::size_t(i)];
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    v *= Rational(num, den);
  }
  v.canonicalize();
  return v;
}

Rational TorusLaurent::evaluate(const std::vector<Rational>& point) const
{
  Rational s = 0;
  for (const auto& [w, v] : terms_)
    s += Rational(static_cast<long>(v)) * torus_monomial_value(w, point);
  return s;
}

std::string TorusLaurent::str() const
{
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, v] : terms_) {
    if (!first)
      os << (v < 0 ? " - " : " + ");
    else if (v < 0)
      os << "-";
    first = false;
    os << (v < 0 ? -v : v) << "·e" << w.str();
  }
  return os.str();
}

} // namespace maclab
