#include "maclab/koszul_algebra.hpp"

#include "maclab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace maclab {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int k : m.odd)
    h = (h ^ std::size_t(k + 1)) * 0x100000001b3ULL;
  h = (h ^ 0xfe) * 0x100000001b3ULL;
  for (int k : m.even)
    h = (h ^ std::size_t(k + 1)) * 0x100000001b3ULL;
  return h;
}

void accumulate(Element& e, const Monomial& m, const Rational& c)
{
  if (sgn(c) == 0)
    return;
  auto [it, fresh] = e.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0)
      e.erase(it);
  }
}

void accumulate(Element& e, const Element& x, const Rational& c)
{
  for (const auto& [m, v] : x)
    accumulate(e, m, c * v);
}

void prune(Element& e)
{
  for (auto it = e.begin(); it != e.end();)
    it = sgn(it->second) == 0 ? e.erase(it) : std::next(it);
}

int sort_with_sign(std::vector<int>& v)
{
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j])
        return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

bool GeneratorMap::is_zero() const
{
  return std::all_of(table.begin(), table.end(), [](const SparseVector& s) { return s.empty(); });
}

bool Derivation::is_odd() const
{
  return !parts.empty() && parts.front().first.src_odd != parts.front().first.tgt_odd;
}

KoszulAlgebra::KoszulAlgebra(const LieAlgebra& g, ModeRules rules) : g_(&g), rules_(rules), dim_(g.dim)
{
  for (int a = 0; a < dim_; ++a)
    mode_weight_.push_back(-g.weights[std::size_t(a)]);
}

bool KoszulAlgebra::allowed(bool odd, int depth) const
{
  return odd ? depth >= rules_.odd_min && depth <= rules_.odd_max
             : depth >= rules_.even_min && depth <= rules_.even_max;
}

int KoszulAlgebra::z_weight(const Monomial& m) const
{
  int w = 0;
  for (int k : m.odd)
    w -= depth_of(k);
  for (int k : m.even)
    w -= depth_of(k);
  return w;
}

Weight KoszulAlgebra::torus_weight(const Monomial& m) const
{
  Weight w = Weight::zero(g_->rs.ss_rank);
  for (int k : m.odd)
    w = w + mode_weight_[std::size_t(index_of(k))];
  for (int k : m.even)
    w = w + mode_weight_[std::size_t(index_of(k))];
  return w;
}

Rational KoszulAlgebra::mode_metric(bool odd, int key) const
{
  const Rational& b = g_->beta[std::size_t(index_of(key))];
  if (!odd)
    return 1 / b;
  const int m = depth_of(key);
  if (m <= 0)
    throw OperatorDomainError("metric undefined on psi modes of depth 0");
  return 1 / (b * m);
}

Rational KoszulAlgebra::metric(const Monomial& m) const
{
  Rational r = 1;
  for (int k : m.odd)
    r *= mode_metric(true, k);
  std::size_t run = 0;
  for (std::size_t i = 0; i < m.even.size(); ++i) {
    r *= mode_metric(false, m.even[i]);
    run = (i > 0 && m.even[i] == m.even[i - 1]) ? run + 1 : 1;
    r *= int(run);
  }
  return r;
}

namespace {

SparseVector act(const LieAlgebra& g, const SparseVector& x, int b)
{
  std::vector<Rational> acc(std::size_t(g.dim));
  for (const Term& t : x)
    for (const Term& s : g.coadjoint[std::size_t(t.index)][std::size_t(b)])
      acc[std::size_t(s.index)] += t.coeff * s.coeff;
  SparseVector r;
  for (int d = 0; d < g.dim; ++d)
    if (sgn(acc[std::size_t(d)]) != 0)
      r.push_back({d, acc[std::size_t(d)]});
  return r;
}

} // namespace

GeneratorMap KoszulAlgebra::coadjoint(const SparseVector& x, int shift, bool odd) const
{
  GeneratorMap m{odd, odd, -shift, {}};
  m.table.resize(std::size_t((max_depth() + 1) * dim_));
  for (int depth = 0; depth <= max_depth(); ++depth) {
    if (!allowed(odd, depth) || !allowed(odd, depth - shift))
      continue;
    for (int a = 0; a < dim_; ++a)
      m.table[std::size_t(key(a, depth))] = act(*g_, x, a);
  }
  return m;
}

GeneratorMap KoszulAlgebra::d_map(const SparseVector& x, int shift) const
{
  GeneratorMap m{false, true, -shift, {}};
  m.table.resize(std::size_t((max_depth() + 1) * dim_));
  for (int depth = 0; depth <= max_depth(); ++depth) {
    if (!allowed(false, depth) || !allowed(true, depth - shift))
      continue;
    for (int a = 0; a < dim_; ++a)
      m.table[std::size_t(key(a, depth))] = act(*g_, x, a);
  }
  return m;
}

GeneratorMap KoszulAlgebra::s_map(const SparseVector& x, int shift) const
{
  GeneratorMap m{true, false, -shift, {}};
  m.table.resize(std::size_t((max_depth() + 1) * dim_));
  for (int depth = 0; depth <= max_depth(); ++depth) {
    if (!allowed(true, depth) || !allowed(false, depth - shift))
      continue;
    for (int a = 0; a < dim_; ++a)
      m.table[std::size_t(key(a, depth))] = act(*g_, x, a);
  }
  return m;
}

GeneratorMap KoszulAlgebra::adjoint(const GeneratorMap& a) const
{
  GeneratorMap r{a.tgt_odd, a.src_odd, -a.depth_shift, {}};
  r.table.resize(a.table.size());
  std::vector<std::vector<Rational>> dense(a.table.size());
  for (std::size_t k = 0; k < a.table.size(); ++k) {
    const int src = int(k);
    for (const Term& t : a.table[k]) {
      const int tgt = key(t.index, depth_of(src) + a.depth_shift);
      auto& row = dense[std::size_t(tgt)];
      if (row.empty())
        row.resize(std::size_t(dim_));
      row[std::size_t(index_of(src))] += t.coeff * mode_metric(a.tgt_odd, tgt) / mode_metric(a.src_odd, src);
    }
  }
  for (std::size_t k = 0; k < dense.size(); ++k)
    for (int b = 0; b < int(dense[k].size()); ++b)
      if (sgn(dense[k][std::size_t(b)]) != 0)
        r.table[k].push_back({b, dense[k][std::size_t(b)]});
  return r;
}

void KoszulAlgebra::apply(const GeneratorMap& a, const Monomial& x, const Rational& c, Element& out) const
{
  if (sgn(c) == 0)
    return;
  const int k = x.degree();
  if (a.src_odd) {
    for (int r = 0; r < k; ++r) {
      const int src = x.odd[std::size_t(r)];
      if (std::size_t(src) >= a.table.size())
        continue;
      const int depth = depth_of(src) + a.depth_shift;
      for (const Term& t : a.table[std::size_t(src)]) {
        const int tgt = key(t.index, depth);
        Monomial y = x;
        if (a.tgt_odd) {
          y.odd[std::size_t(r)] = tgt;
          const int s = sort_with_sign(y.odd);
          if (s != 0)
            accumulate(out, y, c * t.coeff * s);
        } else {
          y.odd.erase(y.odd.begin() + r);
          y.even.insert(std::upper_bound(y.even.begin(), y.even.end(), tgt), tgt);
          accumulate(out, y, (r % 2 == 0 ? c : -c) * t.coeff);
        }
      }
    }
    return;
  }
  for (std::size_t s = 0; s < x.even.size(); ++s) {
    const int src = x.even[s];
    if (std::size_t(src) >= a.table.size())
      continue;
    const int depth = depth_of(src) + a.depth_shift;
    for (const Term& t : a.table[std::size_t(src)]) {
      const int tgt = key(t.index, depth);
      Monomial y = x;
      y.even.erase(y.even.begin() + std::ptrdiff_t(s));
      if (a.tgt_odd) {
        y.odd.push_back(tgt);
        const int sg = sort_with_sign(y.odd);
        if (sg != 0)
          accumulate(out, y, c * t.coeff * (k % 2 == 0 ? sg : -sg));
      } else {
        y.even.insert(std::upper_bound(y.even.begin(), y.even.end(), tgt), tgt);
        accumulate(out, y, c * t.coeff);
      }
    }
  }
}

void KoszulAlgebra::apply(const Derivation& d, const Monomial& x, const Rational& c, Element& out) const
{
  for (const auto& [m, f] : d.parts)
    apply(m, x, c * f, out);
}

Element KoszulAlgebra::apply(const Derivation& d, const Element& x) const
{
  Element out;
  for (const auto& [m, c] : x)
    apply(d, m, c, out);
  return out;
}

void KoszulAlgebra::multiply(bool odd, int key, const Monomial& x, const Rational& c, Element& out) const
{
  Monomial y = x;
  if (odd) {
    auto it = std::lower_bound(y.odd.begin(), y.odd.end(), key);
    if (it != y.odd.end() && *it == key)
      return;
    const auto pos = it - y.odd.begin();
    y.odd.insert(it, key);
    accumulate(out, y, pos % 2 == 0 ? c : -c);
  } else {
    y.even.insert(std::upper_bound(y.even.begin(), y.even.end(), key), key);
    accumulate(out, y, c);
  }
}

void KoszulAlgebra::multiply_adjoint(bool odd, int key, const Monomial& x, const Rational& c, Element& out) const
{
  Monomial y = x;
  if (odd) {
    auto it = std::lower_bound(y.odd.begin(), y.odd.end(), key);
    if (it == y.odd.end() || *it != key)
      return;
    const auto pos = it - y.odd.begin();
    y.odd.erase(it);
    accumulate(out, y, (pos % 2 == 0 ? c : -c) * mode_metric(true, key));
  } else {
    auto [lo, hi] = std::equal_range(y.even.begin(), y.even.end(), key);
    const int mult = int(hi - lo);
    if (mult == 0)
      return;
    y.even.erase(lo);
    accumulate(out, y, c * mult * mode_metric(false, key));
  }
}

int KoszulAlgebra::product(const Monomial& x, const Monomial& y, Monomial& out) const
{
  int inversions = 0;
  std::size_t j = 0;
  for (int a : x.odd) {
    while (j < y.odd.size() && y.odd[j] < a)
      ++j;
    if (j < y.odd.size() && y.odd[j] == a)
      return 0;
    inversions += int(j);
  }
  out.odd.clear();
  std::merge(x.odd.begin(), x.odd.end(), y.odd.begin(), y.odd.end(), std::back_inserter(out.odd));
  out.even.clear();
  std::merge(x.even.begin(), x.even.end(), y.even.begin(), y.even.end(), std::back_inserter(out.even));
  return inversions % 2 == 0 ? 1 : -1;
}

Element KoszulAlgebra::product(const Element& x, const Element& y) const
{
  Element out;
  Monomial m;
  for (const auto& [a, c] : x)
    for (const auto& [b, d] : y) {
      const int s = product(a, b, m);
      if (s != 0)
        accumulate(out, m, s * c * d);
    }
  return out;
}

std::string KoszulAlgebra::mode_str(bool odd, int key) const
{
  std::ostringstream os;
  os << (odd ? "psi" : "sigma") << index_of(key) << "(" << -depth_of(key) << ")";
  return os.str();
}

std::string KoszulAlgebra::str(const Monomial& m) const
{
  if (m.odd.empty() && m.even.empty())
    return "1";
  std::string s;
  for (int k : m.odd)
    s += (s.empty() ? "" : "^") + mode_str(true, k);
  for (int k : m.even)
    s += (s.empty() ? "" : "*") + mode_str(false, k);
  return s;
}

std::string KoszulAlgebra::str(const Element& e) const
{
  if (e.empty())
    return "0";
  std::vector<std::pair<Monomial, Rational>> v(e.begin(), e.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string s;
  for (const auto& [m, c] : v)
    s += (s.empty() ? "" : " + ") + c.get_str() + "·" + str(m);
  return s;
}

} // namespace maclab
