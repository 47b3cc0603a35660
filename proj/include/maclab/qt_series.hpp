#pragma once

#include "maclab/errors.hpp"
#include "maclab/rational.hpp"
#include "maclab/rational_function.hpp"
#include "maclab/root_system.hpp"
#include "maclab/torus_laurent.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace maclab {

// ---------------------------------------------------------------- coefficient domains
//
// A domain supplies the coefficient type together with the two torus
// operations the series code needs: the monomial c·e^mu and, where it
// exists, 1/(1 - c·e^mu).

struct RationalDomain {
  using Coeff = Rational;
  static constexpr const char* tag = "rational";

  Coeff zero() const { return 0; }
  Coeff one() const { return 1; }
  bool is_zero(const Coeff& x) const { return sgn(x) == 0; }
  bool equal(const Coeff& x, const Coeff& y) const { return x == y; }
  void add(Coeff& y, const Coeff& x) const { y += x; }
  void sub(Coeff& y, const Coeff& x) const { y -= x; }
  void add_mul(Coeff& y, const Coeff& m, const Coeff& x) const { y += m * x; }
  Coeff mul(const Coeff& x, const Coeff& y) const { return x * y; }
  Coeff neg(const Coeff& x) const { return -x; }
  Coeff monomial(const Weight& mu, const Rational& c) const
  {
    if (!mu.is_zero())
      throw DomainError("rational coefficients carry no torus weight");
    return c;
  }
  Coeff inverse_one_minus(const Weight& mu, const Rational& c) const
  {
    Coeff v = 1 - monomial(mu, c);
    if (sgn(v) == 0)
      throw DomainError("division by zero coefficient");
    return 1 / v;
  }
  std::string str(const Coeff& x) const { return x.get_str(); }
  bool compatible(const RationalDomain&) const { return true; }
};

/// Rational coefficients obtained by evaluating the torus at a fixed point.
struct TorusPointDomain {
  using Coeff = Rational;
  static constexpr const char* tag = "torus_point";
  std::vector<Rational> point;

  Coeff zero() const { return 0; }
  Coeff one() const { return 1; }
  bool is_zero(const Coeff& x) const { return sgn(x) == 0; }
  bool equal(const Coeff& x, const Coeff& y) const { return x == y; }
  void add(Coeff& y, const Coeff& x) const { y += x; }
  void sub(Coeff& y, const Coeff& x) const { y -= x; }
  void add_mul(Coeff& y, const Coeff& m, const Coeff& x) const { y += m * x; }
  Coeff mul(const Coeff& x, const Coeff& y) const { return x * y; }
  Coeff neg(const Coeff& x) const { return -x; }
  Coeff monomial(const Weight& mu, const Rational& c) const { return c * torus_monomial_value(mu, point); }
  Coeff inverse_one_minus(const Weight& mu, const Rational& c) const
  {
    Coeff v = 1 - monomial(mu, c);
    if (sgn(v) == 0)
      throw DomainError("torus point lies on a pole");
    return 1 / v;
  }
  std::string str(const Coeff& x) const { return x.get_str(); }
  bool compatible(const TorusPointDomain& o) const { return point == o.point; }
};

/// Integer Laurent polynomials on the torus.
struct LaurentDomain {
  using Coeff = TorusLaurent;
  static constexpr const char* tag = "torus_laurent";
  int rank = 0;

  Coeff zero() const { return TorusLaurent(rank); }
  Coeff one() const { return TorusLaurent::constant(rank, 1); }
  bool is_zero(const Coeff& x) const { return x.is_zero(); }
  bool equal(const Coeff& x, const Coeff& y) const { return x == y; }
  void add(Coeff& y, const Coeff& x) const { y += x; }
  void sub(Coeff& y, const Coeff& x) const { y -= x; }
  void add_mul(Coeff& y, const Coeff& m, const Coeff& x) const
  {
    for (const auto& [w, v] : m.terms())
      y.add_shifted(x, w, v);
  }
  Coeff mul(const Coeff& x, const Coeff& y) const { return x * y; }
  Coeff neg(const Coeff& x) const { return -x; }
  Coeff monomial(const Weight& mu, const Rational& c) const
  {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p())
      throw DomainError("Laurent coefficients must be integers");
    return TorusLaurent::monomial(mu, c.get_num().get_si());
  }
  Coeff inverse_one_minus(const Weight& mu, const Rational&) const
  {
    throw FlipPairingError("1/(1 - e^" + mu.str() + ") is not a Laurent polynomial");
  }
  std::string str(const Coeff& x) const { return x.str(); }
  bool compatible(const LaurentDomain& o) const { return rank == o.rank; }
};

/// Exact rational functions of u = e^omega (rank one only).
struct RFDomain {
  using Coeff = RationalFunctionA1;
  static constexpr const char* tag = "rational_function_A1";

  Coeff zero() const { return {}; }
  Coeff one() const { return RationalFunctionA1::constant(1); }
  bool is_zero(const Coeff& x) const { return x.is_zero(); }
  bool equal(const Coeff& x, const Coeff& y) const { return x == y; }
  void add(Coeff& y, const Coeff& x) const { y += x; }
  void sub(Coeff& y, const Coeff& x) const { y -= x; }
  void add_mul(Coeff& y, const Coeff& m, const Coeff& x) const
  {
    if (m.denominator().degree() == 0 && m.numerator().degree() == 0)
      y += x.times_monomial(m.shift(), m.numerator()[0]);
    else
      y += m * x;
  }
  Coeff mul(const Coeff& x, const Coeff& y) const { return x * y; }
  Coeff neg(const Coeff& x) const { return -x; }
  Coeff monomial(const Weight& mu, const Rational& c) const
  {
    if (mu.rank() != 1)
      throw DomainError("rational-function coefficients need rank one");
    return RationalFunctionA1::monomial(mu[0], c);
  }
  Coeff inverse_one_minus(const Weight& mu, const Rational& c) const
  {
    if (mu.rank() != 1)
      throw DomainError("rational-function coefficients need rank one");
    return RationalFunctionA1::inverse_binomial(mu[0], c);
  }
  std::string str(const Coeff& x) const { return x.str(); }
  bool compatible(const RFDomain&) const { return true; }
};

// ---------------------------------------------------------------- series

/// First differing exponent pair found by equal_up_to.
struct SeriesMismatch {
  Rational q_exponent;
  int t_exponent = 0;
  std::string lhs;
  std::string rhs;
};

/// Term c·t^a·q^(j/d) of a polynomial multiplier.
template <class C>
struct SeriesTerm {
  C coeff;
  int t_power = 0;
  int q_units = 0;
};

/// Truncated series in q^(1/d) and t: exact for q-units <= nq_units and
/// t-degree <= nt.  Storage is dense, indexed [t][q_units].
template <class D>
class QTSeries {
public:
  using Coeff = typename D::Coeff;

  QTSeries(D dom, int qden, int nq_units, int nt)
      : dom_(std::move(dom)), qden_(qden), nqu_(nq_units), nt_(nt)
  {
    if (qden < 1 || nq_units < 0 || nt < 0)
      throw DomainError("invalid series cutoffs");
    data_.assign(std::size_t(nt + 1), std::vector<Coeff>(std::size_t(nq_units + 1), dom_.zero()));
  }

  static QTSeries one(D dom, int qden, int nq_units, int nt)
  {
    QTSeries s(std::move(dom), qden, nq_units, nt);
    s.data_[0][0] = s.dom_.one();
    return s;
  }

  static QTSeries monomial(D dom, int qden, int nq_units, int nt, int t, int q_units, const Coeff& c)
  {
    QTSeries s(std::move(dom), qden, nq_units, nt);
    if (t < 0 || q_units < 0)
      throw SupportError("monomial outside the series ring");
    if (t <= nt && q_units <= nq_units)
      s.data_[std::size_t(t)][std::size_t(q_units)] = c;
    return s;
  }

  const D& domain() const { return dom_; }
  int qden() const { return qden_; }
  int nq_units() const { return nqu_; }
  int nt() const { return nt_; }
  Rational q_order() const { return make_rational(nqu_, qden_); }

  const Coeff& at(int t, int qu) const { return data_[std::size_t(t)][std::size_t(qu)]; }
  Coeff& at(int t, int qu) { return data_[std::size_t(t)][std::size_t(qu)]; }

  /// Coefficient of q^qe t^te.
  Coeff coeff(const Rational& qe, int te) const
  {
    Rational u = qe * qden_;
    if (u.get_den() != 1 || sgn(u) < 0 || u > nqu_ || te < 0 || te > nt_)
      throw SupportError("coefficient query outside the cutoffs");
    return at(te, int(u.get_num().get_si()));
  }

  bool is_zero() const
  {
    for (const auto& row : data_)
      for (const auto& c : row)
        if (!dom_.is_zero(c))
          return false;
    return true;
  }

  /// Copy with cutoffs lowered to (nq_units, nt).
  QTSeries truncated(int nq_units, int nt) const
  {
    nq_units = std::min(nq_units, nqu_);
    nt = std::min(nt, nt_);
    QTSeries r(dom_, qden_, nq_units, nt);
    for (int t = 0; t <= nt; ++t)
      for (int q = 0; q <= nq_units; ++q)
        r.at(t, q) = at(t, q);
    return r;
  }

  QTSeries& operator+=(const QTSeries& o) { return accumulate(o, false); }
  QTSeries& operator-=(const QTSeries& o) { return accumulate(o, true); }
  QTSeries operator+(const QTSeries& o) const
  {
    QTSeries r = truncated(o.nqu_, o.nt_);
    r += o;
    return r;
  }
  QTSeries operator-(const QTSeries& o) const
  {
    QTSeries r = truncated(o.nqu_, o.nt_);
    r -= o;
    return r;
  }

  QTSeries operator*(const QTSeries& o) const
  {
    check_compatible(o);
    const int nq = std::min(nqu_, o.nqu_), nt = std::min(nt_, o.nt_);
    QTSeries r(dom_, qden_, nq, nt);
    for (int t1 = 0; t1 <= nt; ++t1)
      for (int q1 = 0; q1 <= nq; ++q1) {
        const Coeff& a = at(t1, q1);
        if (dom_.is_zero(a))
          continue;
        for (int t2 = 0; t1 + t2 <= nt; ++t2)
          for (int q2 = 0; q1 + q2 <= nq; ++q2) {
            const Coeff& b = o.at(t2, q2);
            if (!dom_.is_zero(b))
              dom_.add_mul(r.at(t1 + t2, q1 + q2), a, b);
          }
      }
    return r;
  }

  QTSeries scaled(const Coeff& c) const
  {
    QTSeries r(dom_, qden_, nqu_, nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q)
        if (!dom_.is_zero(at(t, q)))
          r.at(t, q) = dom_.mul(c, at(t, q));
    return r;
  }

  /// Inverse of a series with constant term one.
  QTSeries inverse() const
  {
    if (!dom_.equal(at(0, 0), dom_.one()))
      throw NotAUnit("constant term of the series is not 1");
    QTSeries r(dom_, qden_, nqu_, nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q) {
        Coeff s = t == 0 && q == 0 ? dom_.one() : dom_.zero();
        for (int t1 = 0; t1 <= t; ++t1)
          for (int q1 = 0; q1 <= q; ++q1) {
            if (t1 == 0 && q1 == 0)
              continue;
            const Coeff& a = at(t1, q1);
            const Coeff& b = r.at(t - t1, q - q1);
            if (!dom_.is_zero(a) && !dom_.is_zero(b))
              dom_.add_mul(s, dom_.neg(a), b);
          }
        r.at(t, q) = std::move(s);
      }
    return r;
  }

  /// this *= (1 - m t^a q^j), with a, j >= 0 not both zero.
  void mul_binomial(int a, int j, const Coeff& m)
  {
    check_shift(a, j);
    const Coeff nm = dom_.neg(m);
    for (int t = nt_; t >= a; --t)
      for (int q = nqu_; q >= j; --q) {
        const Coeff& src = at(t - a, q - j);
        if (!dom_.is_zero(src))
          dom_.add_mul(at(t, q), nm, src);
      }
  }

  /// this /= (1 - m t^a q^j), with a, j >= 0 not both zero.
  void div_binomial(int a, int j, const Coeff& m)
  {
    check_shift(a, j);
    for (int t = a; t <= nt_; ++t)
      for (int q = j; q <= nqu_; ++q) {
        const Coeff& src = at(t - a, q - j);
        if (!dom_.is_zero(src))
          dom_.add_mul(at(t, q), m, src);
      }
  }

  /// this *= sum of the given terms (non-negative exponents).
  void mul_poly(const std::vector<SeriesTerm<Coeff>>& terms)
  {
    QTSeries r(dom_, qden_, nqu_, nt_);
    for (const auto& term : terms) {
      if (term.t_power < 0 || term.q_units < 0)
        throw SupportError("polynomial multiplier leaves the series ring");
      for (int t = term.t_power; t <= nt_; ++t)
        for (int q = term.q_units; q <= nqu_; ++q) {
          const Coeff& src = at(t - term.t_power, q - term.q_units);
          if (!dom_.is_zero(src))
            dom_.add_mul(r.at(t, q), term.coeff, src);
        }
    }
    *this = std::move(r);
  }

  /// Multiplies every coefficient by c.
  void scale_in_place(const Coeff& c)
  {
    for (auto& row : data_)
      for (auto& x : row)
        if (!dom_.is_zero(x))
          x = dom_.mul(c, x);
  }

  /// t -> t q^(r/d).  For r < 0 the q-cutoff drops by |r|·nt units.
  QTSeries substitute_t(int r_units) const
  {
    const int nq = r_units >= 0 ? nqu_ : nqu_ + r_units * nt_;
    if (nq < 0)
      throw SupportError("substitution leaves no exact range");
    QTSeries r(dom_, qden_, nq, nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q) {
        const Coeff& c = at(t, q);
        if (dom_.is_zero(c))
          continue;
        const int e = q + r_units * t;
        if (e < 0)
          throw SupportError("substitution produces a negative q-exponent");
        if (e <= nq)
          r.at(t, e) = c;
      }
    return r;
  }

  /// q -> q^(1/2): the exponent units are kept and the denominator doubles.
  QTSeries halve_q() const
  {
    QTSeries r = *this;
    r.qden_ *= 2;
    return r;
  }

  /// Same units read with denominator qden·k (q -> q^(1/k) if applied
  /// literally); used to bring series to a common denominator.
  QTSeries refine_q(int k) const
  {
    QTSeries r(dom_, qden_ * k, nqu_ * k, nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q)
        r.at(t, q * k) = at(t, q);
    return r;
  }

  template <class D2, class F>
  QTSeries<D2> map_coeffs(D2 dom, F f) const
  {
    QTSeries<D2> r(std::move(dom), qden_, nqu_, nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q)
        if (!dom_.is_zero(at(t, q)))
          r.at(t, q) = f(at(t, q));
    return r;
  }

  /// First mismatch in (q, t) lexicographic order over the shared cutoffs.
  std::optional<SeriesMismatch> equal_up_to(const QTSeries& o) const
  {
    check_compatible(o);
    const int nq = std::min(nqu_, o.nqu_), nt = std::min(nt_, o.nt_);
    for (int q = 0; q <= nq; ++q)
      for (int t = 0; t <= nt; ++t)
        if (!dom_.equal(at(t, q), o.at(t, q)))
          return SeriesMismatch{make_rational(q, qden_), t, dom_.str(at(t, q)), dom_.str(o.at(t, q))};
    return std::nullopt;
  }

  /// Canonical text form, terms sorted by (q, t).
  std::string str() const
  {
    std::ostringstream os;
    bool first = true;
    for (int q = 0; q <= nqu_; ++q)
      for (int t = 0; t <= nt_; ++t) {
        const Coeff& c = at(t, q);
        if (dom_.is_zero(c))
          continue;
        if (!first)
          os << " + ";
        first = false;
        std::string cs = dom_.str(c);
        if (cs.find(' ') != std::string::npos)
          cs = "(" + cs + ")";
        os << cs;
        if (q != 0)
          os << " · q^" << make_rational(q, qden_).get_str();
        if (t != 0)
          os << " t^" << t;
      }
    if (first)
      os << "0";
    os << " + O(q^>" << q_order().get_str() << ", t^>" << nt_ << ")";
    return os.str();
  }

private:
  QTSeries& accumulate(const QTSeries& o, bool subtract)
  {
    check_compatible(o);
    if (o.nqu_ < nqu_ || o.nt_ < nt_)
      *this = truncated(o.nqu_, o.nt_);
    for (int t = 0; t <= nt_; ++t)
      for (int q = 0; q <= nqu_; ++q) {
        const Coeff& c = o.at(t, q);
        if (dom_.is_zero(c))
          continue;
        if (subtract)
          dom_.sub(at(t, q), c);
        else
          dom_.add(at(t, q), c);
      }
    return *this;
  }

  void check_compatible(const QTSeries& o) const
  {
    if (qden_ != o.qden_ || !dom_.compatible(o.dom_))
      throw DomainError("series with different q-denominators or coefficient domains");
  }

  static void check_shift(int a, int j)
  {
    if (a < 0 || j < 0 || (a == 0 && j == 0))
      throw DomainError("binomial factor must have positive total degree");
  }

  D dom_;
  int qden_ = 1;
  int nqu_ = 0;
  int nt_ = 0;
  std::vector<std::vector<Coeff>> data_;
};

} // namespace maclab
