#include "maclab/errors.hpp"
#include "maclab/root_system.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace maclab;

namespace {

const std::vector<std::string> kTypes = {"A1", "A2", "A3", "A4", "B2", "C2", "D4", "G2"};

// Coefficients of sum_w t^length(w).
std::vector<long> length_generating_function(const RootSystem& rs)
{
  std::vector<long> c;
  for (const WeylElement& w : weyl_elements(rs)) {
    if (std::size_t(w.length) >= c.size())
      c.resize(std::size_t(w.length) + 1, 0);
    ++c[std::size_t(w.length)];
  }
  return c;
}

// prod_k (1 + t + ... + t^{m_k}).
std::vector<long> exponent_product(const std::vector<int>& exps)
{
  std::vector<long> p{1};
  for (int m : exps) {
    std::vector<long> q(p.size() + std::size_t(m), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int j = 0; j <= m; ++j)
        q[i + std::size_t(j)] += p[i];
    p = q;
  }
  return p;
}

} // namespace

TEST_SUITE("root_data")
{
  TEST_CASE("gl exponents are 0..n-1")
  {
    CHECK(build_root_system("gl", 3).exponents == std::vector<int>{0, 1, 2});
    CHECK(build_root_system("gl", 1).exponents == std::vector<int>{0});
  }

  TEST_CASE("exponents of A1 and A2")
  {
    CHECK(parse_cartan_type("A1").exponents == std::vector<int>{1});
    CHECK(parse_cartan_type("a2").exponents == std::vector<int>{1, 2});
  }

  TEST_CASE("exponents agree with the Weyl length generating function")
  {
    // independent of the exponent table: only the Cartan matrix enters
    for (const auto& t : kTypes) {
      CAPTURE(t);
      const RootSystem rs = parse_cartan_type(t);
      CHECK(length_generating_function(rs) == exponent_product(rs.exponents));
    }
  }

  TEST_CASE("Weyl group orders")
  {
    CHECK(weyl_elements(parse_cartan_type("A1")).size() == 2);
    CHECK(weyl_elements(parse_cartan_type("A2")).size() == 6);
    CHECK(weyl_elements(parse_cartan_type("B2")).size() == 8);
    CHECK(weyl_elements(parse_cartan_type("G2")).size() == 12);
    CHECK(weyl_elements(parse_cartan_type("D4")).size() == 192);
  }

  TEST_CASE("A1 reflection negates the root line")
  {
    const RootSystem rs = parse_cartan_type("A1");
    const auto ws = weyl_elements(rs);
    CHECK(ws[0].apply(Weight({3})) == Weight({3}));
    CHECK(ws[1].apply(Weight({3})) == Weight({-3}));
  }

  TEST_CASE("structural invariants")
  {
    for (const auto& t : kTypes) {
      CAPTURE(t);
      const RootSystem rs = parse_cartan_type(t);
      long sum = 0, prod = 1;
      for (int m : rs.exponents) {
        sum += 2 * m + 1;
        prod *= m + 1;
      }
      CHECK(sum == rs.dim());
      CHECK(prod == rs.weyl_order);
      CHECK(long(weyl_elements(rs).size()) == rs.weyl_order);
      CHECK(int(rs.positive_roots.size()) * 2 == rs.dim() - rs.rank);
      CHECK(std::is_sorted(rs.exponents.begin(), rs.exponents.end()));
      for (int i = 0; i < rs.ss_rank; ++i)
        for (int j = 0; j < rs.ss_rank; ++j) {
          if (i == j)
            CHECK(rs.cartan_matrix[std::size_t(i)][std::size_t(j)] == 2);
          else
            CHECK(rs.cartan_matrix[std::size_t(i)][std::size_t(j)] <= 0);
        }
    }
  }

  TEST_CASE("Weyl group permutes the roots")
  {
    for (const auto& t : kTypes) {
      CAPTURE(t);
      const RootSystem rs = parse_cartan_type(t);
      const auto roots = rs.roots();
      const std::set<Weight> all(roots.begin(), roots.end());
      for (const WeylElement& w : weyl_elements(rs)) {
        std::set<Weight> image;
        for (const Weight& r : roots)
          image.insert(w.apply(r));
        CHECK(image == all);
      }
    }
  }

  TEST_CASE("pairing examples")
  {
    const RootSystem a1 = parse_cartan_type("A1");
    CHECK(pairing(a1, a1.simple_roots[0], std::vector<int>{1}) == 2);
    const RootSystem a2 = parse_cartan_type("A2");
    CHECK(pairing(a2, a2.simple_roots[0], std::vector<int>{0, 1}) == -1);
    CHECK(pairing(a2, Weight({3, -5}), std::vector<int>{0, 0}) == 0);
    CHECK_THROWS_AS(pairing(a2, Weight({1}), std::vector<int>{0, 1}), DimensionError);
  }

  TEST_CASE("pairing is Weyl equivariant")
  {
    for (const std::string t : {"A2", "B2", "G2"}) {
      CAPTURE(t);
      const RootSystem rs = parse_cartan_type(t);
      const Weight lambda({2, -1});
      const std::vector<int> gamma{1, 3};
      const int base = pairing(rs, lambda, gamma);
      for (const WeylElement& w : weyl_elements(rs))
        CHECK(pairing(rs, w.apply(lambda), w.apply_coroot(gamma)) == base);
    }
  }

  TEST_CASE("level-one translates")
  {
    const RootSystem a1 = parse_cartan_type("A1");
    CHECK(coroot_translates(a1, TranslateMode::Level1Energy, 0).size() == 1);
    const auto shell = coroot_translates(a1, TranslateMode::Level1Energy, 2);
    REQUIRE(shell.size() == 3);
    for (const auto& p : shell)
      CHECK(p.norm_half == p.coords[0] * p.coords[0]);
    CHECK(coroot_translates(parse_cartan_type("A2"), TranslateMode::Level1Energy, 1).size() == 7);
  }

  TEST_CASE("level-one translates grow with the bound")
  {
    const RootSystem rs = parse_cartan_type("A2");
    std::set<std::vector<int>> prev;
    for (long b = 0; b <= 5; ++b) {
      std::set<std::vector<int>> cur;
      for (const auto& p : coroot_translates(rs, TranslateMode::Level1Energy, b))
        cur.insert(p.coords);
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }

  TEST_CASE("unsupported types")
  {
    CHECK_THROWS_AS(build_root_system("E", 8), UnsupportedCartanType);
    CHECK_THROWS_AS(parse_cartan_type("Z3"), UnsupportedCartanType);
  }
}
