#include "maclab/characters.hpp"

#include "maclab/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace maclab {

namespace {

// lambda - mu as a nonnegative integer combination of simple roots?
bool below_or_equal(const RootSystem& rs, const Weight& mu, const Weight& lambda)
{
  auto c = rs.simple_root_coords(lambda - mu);
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.get_den() == 1 && sgn(x) >= 0; });
}

} // namespace

TorusLaurent weyl_character(const RootSystem& rs, const Weight& lambda)
{
  if (!rs.is_dominant(lambda))
    throw DominanceError("highest weight " + lambda.str() + " is not dominant");
  const int l = rs.ss_rank;

  std::set<Weight> weights{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (int i = 0; i < l; ++i) {
      Weight v = w - rs.simple_roots[std::size_t(i)];
      if (weights.count(v))
        continue;
      if (below_or_equal(rs, rs.dominant_conjugate(v), lambda)) {
        weights.insert(v);
        queue.push_back(v);
      }
    }
  }

  std::vector<Weight> dominant;
  for (const auto& w : weights)
    if (rs.is_dominant(w))
      dominant.push_back(w);
  std::sort(dominant.begin(), dominant.end(), [&](const Weight& a, const Weight& b) {
    Rational ha = rs.height(a), hb = rs.height(b);
    if (ha != hb)
      return ha > hb;
    return a > b;
  });

  std::map<Weight, Rational> mult;
  const Weight lr = lambda + rs.rho;
  const Rational top = rs.inner(lr, lr);
  auto lookup = [&](const Weight& v) -> Rational {
    if (!weights.count(v))
      return 0;
    auto it = mult.find(rs.dominant_conjugate(v));
    return it == mult.end() ? Rational(0) : it->second;
  };
  for (const auto& mu : dominant) {
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    Rational s = 0;
    for (const auto& a : rs.positive_roots)
      for (int k = 1;; ++k) {
        Weight v = mu + a.scaled(k);
        if (!weights.count(v))
          break;
        s += lookup(v) * rs.inner(v, a);
      }
    const Weight mr = mu + rs.rho;
    Rational den = top - rs.inner(mr, mr);
    if (sgn(den) <= 0)
      throw DimensionError("Freudenthal denominator vanished");
    Rational m = 2 * s / den;
    if (m.get_den() != 1)
      throw DimensionError("non-integral weight multiplicity");
    mult[mu] = m;
  }

  TorusLaurent chi(l);
  for (const auto& w : weights) {
    Rational m = lookup(w);
    if (sgn(m) != 0)
      chi.add_term(w, m.get_num().get_si());
  }
  return chi;
}

Integer weyl_dimension(const RootSystem& rs, const Weight& lambda)
{
  Rational d = 1;
  const Weight lr = lambda + rs.rho;
  for (const auto& a : rs.positive_roots)
    d *= rs.inner(lr, a) / rs.inner(rs.rho, a);
  if (d.get_den() != 1)
    throw DimensionError("non-integral Weyl dimension");
  return d.get_num();
}

IrrDecomposition decompose(const RootSystem& rs, const TorusLaurent& chi)
{
  if (!chi.is_weyl_invariant(rs))
    throw SymmetryError("character is not Weyl invariant");
  IrrDecomposition out;
  TorusLaurent rest = chi;
  std::map<Weight, TorusLaurent> cache;
  while (!rest.is_zero()) {
    // a term of maximal height is dominant and is a highest weight of the remainder
    const Weight* best = nullptr;
    Rational best_h;
    for (const auto& [w, v] : rest.terms()) {
      Rational h = rs.height(w);
      if (!best || h > best_h || (h == best_h && w > *best)) {
        best = &w;
        best_h = h;
      }
    }
    Weight top = *best;
    std::int64_t c = rest.coeff(top);
    auto it = cache.find(top);
    if (it == cache.end())
      it = cache.emplace(top, weyl_character(rs, top)).first;
    rest.add_shifted(it->second, Weight::zero(rs.ss_rank), -c);
    out.mults[top] = checked_add(out.mults[top], c);
    if (out.mults[top] == 0)
      out.mults.erase(top);
  }
  return out;
}

TorusLaurent reconstruct(const RootSystem& rs, const IrrDecomposition& d)
{
  TorusLaurent chi(rs.ss_rank);
  for (const auto& [w, m] : d.mults)
    chi.add_shifted(weyl_character(rs, w), Weight::zero(rs.ss_rank), m);
  return chi;
}

std::int64_t invariant_multiplicity(const RootSystem& rs, const TorusLaurent& chi)
{
  if (!chi.is_weyl_invariant(rs))
    throw SymmetryError("character is not Weyl invariant");
  std::int64_t m = 0;
  for (const auto& w : weyl_elements(rs)) {
    std::int64_t c = chi.coeff(rs.rho - w.apply(rs.rho));
    m = checked_add(m, w.sign() * c);
  }
  return m;
}

TorusLaurent adjoint_character(const RootSystem& rs)
{
  TorusLaurent chi = TorusLaurent::constant(rs.ss_rank, rs.rank);
  for (const auto& a : rs.roots())
    chi.add_term(a, 1);
  return chi;
}

} // namespace maclab
