#include "maclab/affine_factor.hpp"
#include "maclab/errors.hpp"
#include "maclab/qt_series.hpp"

#include <doctest.h>

#include <vector>

using namespace maclab;

namespace {

using RS = QTSeries<RationalDomain>;

AffineFactor factor(int sign, int t, long j, const Weight& mu = Weight(), Rational c = 1)
{
  AffineFactor f;
  f.sign = sign;
  f.t_power = t;
  f.q_exponent = j;
  f.mu = mu;
  f.scalar = c;
  return f;
}

RS q_product(int sign, int nq, int nt, int t_power = 0)
{
  std::vector<AffineFactor> fs;
  for (int n = 1; n <= nq; ++n)
    fs.push_back(factor(sign, t_power, n));
  return truncated_product(RationalDomain{}, fs, 1, nq, nt);
}

} // namespace

TEST_SUITE("qt_series")
{
  TEST_CASE("geometric series inverts 1 - tq")
  {
    RS x = RS::one({}, 1, 6, 6);
    x -= RS::monomial({}, 1, 6, 6, 1, 1, 1);
    RS geo = RS::one({}, 1, 6, 6);
    for (int k = 1; k <= 6; ++k)
      geo += RS::monomial({}, 1, 6, 6, k, k, 1);
    CHECK_FALSE((x * geo).equal_up_to(RS::one({}, 1, 6, 6)).has_value());
    CHECK_FALSE((x.inverse()).equal_up_to(geo).has_value());
  }

  TEST_CASE("Euler product head")
  {
    const RS e = q_product(1, 5, 0);
    const std::vector<int> expect{1, -1, -1, 0, 0, 1};
    for (int q = 0; q <= 5; ++q)
      CHECK(e.at(0, q) == expect[std::size_t(q)]);
  }

  TEST_CASE("ring axioms within cutoffs")
  {
    const RS a = q_product(1, 4, 3, 1);
    const RS b = q_product(-1, 4, 3, 0);
    const RS c = q_product(-1, 4, 3, 2);
    CHECK_FALSE(((a * b) * c).equal_up_to(a * (b * c)).has_value());
    CHECK_FALSE((a + RS({}, 1, 4, 3)).equal_up_to(a).has_value());
    CHECK_FALSE((q_product(1, 6, 0) * q_product(-1, 6, 0)).equal_up_to(RS::one({}, 1, 6, 0)).has_value());
  }

  TEST_CASE("unit inverse requires constant term one")
  {
    RS x = RS::monomial({}, 1, 3, 3, 0, 0, 2);
    CHECK_THROWS_AS(x.inverse(), NotAUnit);
  }

  TEST_CASE("geometric expansion of a single denominator")
  {
    const RS s = expand_factor(RationalDomain{}, factor(-1, 0, 1), 1, 6, 0);
    for (int q = 0; q <= 6; ++q)
      CHECK(s.at(0, q) == 1);
  }

  TEST_CASE("flipped pair expands to (t - x)/(1 - x)")
  {
    // (1 - t q^-2 u^2)/(1 - q^-2 u^2) with x = q^2 u^-2: t + (t - 1)(x + x^2 + ...)
    const std::vector<AffineFactor> fs{factor(1, 1, -2, Weight({2})), factor(-1, 0, -2, Weight({2}))};
    const auto s = truncated_product(RFDomain{}, fs, 1, 4, 2);
    CHECK(s.at(1, 0) == RationalFunctionA1::constant(1));
    CHECK(s.at(0, 0).is_zero());
    CHECK(s.at(0, 2) == RationalFunctionA1::monomial(-2, -1));
    CHECK(s.at(1, 2) == RationalFunctionA1::monomial(-2, 1));
    CHECK(s.at(0, 4) == RationalFunctionA1::monomial(-4, -1));
    CHECK(s.at(0, 1).is_zero());
  }

  TEST_CASE("unpaired denominators over Laurent coefficients")
  {
    // 1/(1 - q^-1 u^2) = -q u^-2 / (1 - q u^-2)
    const auto s = truncated_product(LaurentDomain{1}, {factor(-1, 0, -1, Weight({2}))}, 1, 3, 1);
    CHECK(s.at(0, 0).is_zero());
    CHECK(s.at(0, 1) == TorusLaurent::monomial(Weight({-2}), -1));
    CHECK(s.at(0, 3) == TorusLaurent::monomial(Weight({-6}), -1));
    const std::vector<AffineFactor> fs{factor(-1, 0, 0, Weight({2}))};
    CHECK_THROWS_AS(truncated_product(LaurentDomain{1}, fs, 1, 3, 1), FlipPairingError);
  }

  TEST_CASE("j = 0 pair is an exact rational function")
  {
    const std::vector<AffineFactor> fs{factor(1, 1, 0, Weight({2})), factor(-1, 0, 0, Weight({2}))};
    const auto s = truncated_product(RFDomain{}, fs, 1, 2, 2);
    // (1 - t u^2)/(1 - u^2): t^0 part 1/(1 - u^2), t^1 part -u^2/(1 - u^2)
    CHECK(s.at(0, 0) == RationalFunctionA1::inverse_binomial(2, 1));
    CHECK(s.at(1, 0) == RationalFunctionA1::inverse_binomial(2, 1).times_monomial(2, -1));
    CHECK(s.at(0, 1).is_zero());
  }

  TEST_CASE("truncated product examples")
  {
    std::vector<AffineFactor> fs;
    for (int n = 1; n <= 4; ++n) {
      fs.push_back(factor(1, 1, n));
      fs.push_back(factor(-1, 2, n));
    }
    const RS s = truncated_product(RationalDomain{}, fs, 1, 4, 4);
    // t^1 arises only from a single numerator term -t q^n
    CHECK(s.coeff(2, 1) == -1);
    CHECK(s.coeff(4, 1) == -1);
    CHECK(truncated_product(RationalDomain{}, {}, 1, 3, 3).equal_up_to(RS::one({}, 1, 3, 3)) == std::nullopt);
  }

  TEST_CASE("substitutions")
  {
    const RS x = RS::monomial({}, 1, 6, 2, 2, 3, 1);
    const RS y = x.substitute_t(-1);
    CHECK(y.nq_units() == 4);
    CHECK(y.coeff(1, 2) == 1);

    const RS q = RS::monomial({}, 1, 4, 0, 0, 1, 1);
    const RS h = q.halve_q();
    CHECK(h.qden() == 2);
    CHECK(h.coeff(make_rational(1, 2), 0) == 1);

    CHECK(torus_monomial_value(Weight({2}), {make_rational(2, 3)}) == make_rational(4, 9));
  }

  TEST_CASE("out-of-cutoff queries")
  {
    const RS x = RS::one({}, 1, 3, 3);
    CHECK_THROWS_AS(x.coeff(4, 0), SupportError);
    CHECK_THROWS_AS(x.coeff(1, 4), SupportError);
    CHECK_THROWS_AS(x.coeff(make_rational(1, 2), 0), SupportError);
  }

  TEST_CASE("equal_up_to reports the first mismatch")
  {
    RS a = q_product(1, 4, 2, 1);
    RS b = a;
    b.at(1, 3) += 1;
    b.at(2, 4) += 1;
    const auto m = a.equal_up_to(b);
    REQUIRE(m.has_value());
    CHECK(m->q_exponent == 3);
    CHECK(m->t_exponent == 1);
  }
}
