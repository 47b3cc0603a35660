#include "maclab/lie_algebra.hpp"

#include "maclab/errors.hpp"

#include <algorithm>
#include <map>

namespace maclab {

namespace {

RationalMatrix unit(int n, int r, int c)
{
  RationalMatrix m(n, n);
  m(r, c) = 1;
  return m;
}

RationalMatrix add(const RationalMatrix& a, const RationalMatrix& b, const Rational& s = 1)
{
  RationalMatrix r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i)
    r.data[i] += s * b.data[i];
  return r;
}

RationalMatrix scale(const RationalMatrix& a, const Rational& s)
{
  RationalMatrix r = a;
  for (auto& x : r.data)
    x *= s;
  return r;
}

bool is_zero(const RationalMatrix& a)
{
  return std::all_of(a.data.begin(), a.data.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational trace(const RationalMatrix& a)
{
  Rational t = 0;
  for (int i = 0; i < a.rows; ++i)
    t += a(i, i);
  return t;
}

// X_{ij} - X_{N+1-j, N+1-i} in 1-based indices: a root vector of so(N) or sp(N) for the antidiagonal form
RationalMatrix witt(int n, int i, int j, int sign = 1)
{
  RationalMatrix m = unit(n, i - 1, j - 1);
  m(n - j, n - i) -= sign;
  return m;
}

struct Generators {
  int n = 0;
  std::vector<RationalMatrix> e;
};

Generators generators_for(const RootSystem& rs)
{
  Generators g;
  switch (rs.family) {
  case Family::A:
    g.n = rs.rank + 1;
    for (int i = 1; i <= rs.rank; ++i)
      g.e.push_back(unit(g.n, i - 1, i));
    break;
  case Family::B: // so(5)
    g.n = 5;
    g.e = {witt(5, 1, 2), witt(5, 2, 3)};
    break;
  case Family::C: // sp(4)
    g.n = 4;
    g.e = {witt(4, 1, 2), unit(4, 1, 2)};
    break;
  case Family::D: // so(8)
    g.n = 8;
    g.e = {witt(8, 1, 2), witt(8, 2, 3), witt(8, 3, 4), witt(8, 3, 5)};
    break;
  case Family::G: { // folding of so(8) by triality
    g.n = 8;
    RationalMatrix x1 = witt(8, 1, 2), x2 = witt(8, 2, 3), x3 = witt(8, 3, 4), x4 = witt(8, 3, 5);
    g.e = {add(add(x1, x3), x4), x2};
    break;
  }
  case Family::GL:
    g.n = rs.rank;
    for (int i = 1; i < rs.rank; ++i)
      g.e.push_back(unit(g.n, i - 1, i));
    break;
  }
  return g;
}

// Incremental row echelon form used for independence tests and coordinates.
struct Echelon {
  std::vector<std::vector<Rational>> rows;
  std::vector<int> pivots;

  std::vector<Rational> reduce(std::vector<Rational> v) const
  {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int p = pivots[r];
      if (sgn(v[std::size_t(p)]) == 0)
        continue;
      Rational f = v[std::size_t(p)] / rows[r][std::size_t(p)];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(rows[r][k]) != 0)
          v[k] -= f * rows[r][k];
    }
    return v;
  }

  bool insert(const std::vector<Rational>& v)
  {
    auto w = reduce(v);
    for (std::size_t k = 0; k < w.size(); ++k)
      if (sgn(w[k]) != 0) {
        rows.push_back(std::move(w));
        pivots.push_back(int(k));
        return true;
      }
    return false;
  }
};

std::vector<Rational> flatten(const RationalMatrix& m) { return m.data; }

// Eigenvalues of ad(h_i) on a weight-homogeneous matrix
Weight weight_of(const RationalMatrix& x, const std::vector<RationalMatrix>& h)
{
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c)
      if (sgn(x(r, c)) != 0) {
        Weight w = Weight::zero(int(h.size()));
        for (std::size_t i = 0; i < h.size(); ++i) {
          Rational v = h[i](r, r) - h[i](c, c);
          if (v.get_den() != 1)
            throw DimensionError("non-integral weight in Lie algebra realization");
          w.coords[i] = int(v.get_num().get_si());
        }
        return w;
      }
  throw DimensionError("weight of zero element");
}

} // namespace

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b)
{
  return add(a * b, b * a, -1);
}

int LieAlgebra::theta_index(int a) const
{
  for (int c = 0; c < dim; ++c)
    if (sgn(theta(c, a)) != 0)
      return c;
  return a;
}

namespace {

struct CoordinateSolver {
  std::vector<int> pivots; // matrix entry positions
  RationalMatrix inv;      // maps pivot entries to coordinates

  void build(const std::vector<RationalMatrix>& basis)
  {
    Echelon ech;
    for (const auto& b : basis)
      if (!ech.insert(flatten(b)))
        throw DimensionError("dependent basis in Lie algebra realization");
    pivots = ech.pivots;
    const int d = int(basis.size());
    RationalMatrix sq(d, d);
    for (int r = 0; r < d; ++r)
      for (int a = 0; a < d; ++a)
        sq(r, a) = basis[std::size_t(a)].data[std::size_t(pivots[std::size_t(r)])];
    inv = inverse(sq);
  }

  std::vector<Rational> solve(const RationalMatrix& x) const
  {
    const int d = inv.rows;
    std::vector<Rational> c(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      for (int r = 0; r < d; ++r)
        c[std::size_t(a)] += inv(a, r) * x.data[std::size_t(pivots[std::size_t(r)])];
    return c;
  }
};

} // namespace

SparseVector LieAlgebra::coordinates(const RationalMatrix& x) const
{
  CoordinateSolver s;
  s.build(basis);
  auto c = s.solve(x);
  SparseVector out;
  for (int a = 0; a < dim; ++a)
    if (sgn(c[std::size_t(a)]) != 0)
      out.push_back({a, c[std::size_t(a)]});
  RationalMatrix check(matrix_size, matrix_size);
  for (const auto& t : out)
    check = add(check, basis[std::size_t(t.index)], t.coeff);
  if (!(check == x))
    throw DimensionError("element is not in the Lie algebra");
  return out;
}

LieAlgebra build_lie_algebra(const RootSystem& rs)
{
  LieAlgebra g;
  g.rs = rs;
  g.semisimple = rs.family != Family::GL;
  Generators gen = generators_for(rs);
  const int n = gen.n;
  g.matrix_size = n;
  const int l = rs.ss_rank;

  // coroots h_i normalized by alpha_i(h_i) = 2
  std::vector<RationalMatrix> h;
  for (int i = 0; i < l; ++i) {
    RationalMatrix hi = commutator(gen.e[std::size_t(i)], transpose(gen.e[std::size_t(i)]));
    RationalMatrix ad = commutator(hi, gen.e[std::size_t(i)]);
    Rational c = 0;
    for (std::size_t k = 0; k < ad.data.size(); ++k)
      if (sgn(gen.e[std::size_t(i)].data[k]) != 0) {
        c = ad.data[k] / gen.e[std::size_t(i)].data[k];
        break;
      }
    if (sgn(c) == 0)
      throw DimensionError("degenerate Chevalley generator");
    h.push_back(scale(hi, Rational(2) / c));
  }

  std::map<Weight, std::vector<RationalMatrix>> spaces;
  if (rs.family == Family::GL) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        RationalMatrix x = unit(n, r, c);
        Weight w = r == c ? Weight::zero(l) : weight_of(x, h);
        spaces[w].push_back(x);
      }
  } else {
    // Lie closure of the Chevalley generators, weight space by weight space
    std::map<Weight, Echelon> ech;
    std::vector<RationalMatrix> gens, frontier;
    for (const auto& e : gen.e) {
      gens.push_back(e);
      gens.push_back(transpose(e));
    }
    for (const auto& x : gens) {
      Weight w = weight_of(x, h);
      if (ech[w].insert(flatten(x))) {
        spaces[w].push_back(x);
        frontier.push_back(x);
      }
    }
    while (!frontier.empty()) {
      std::vector<RationalMatrix> next;
      for (const auto& x : frontier)
        for (const auto& y : gens) {
          RationalMatrix z = commutator(y, x);
          if (is_zero(z))
            continue;
          Weight w = weight_of(z, h);
          if (ech[w].insert(flatten(z))) {
            spaces[w].push_back(z);
            next.push_back(z);
          }
        }
      frontier = std::move(next);
    }
  }

  // assemble the ordered basis
  for (const auto& a : rs.positive_roots) {
    auto it = spaces.find(a);
    if (it == spaces.end() || it->second.size() != 1)
      throw DimensionError("root space mismatch for " + a.str());
    g.basis.push_back(it->second.front());
    g.weights.push_back(a);
  }
  const int npos = int(rs.positive_roots.size());
  std::vector<RationalMatrix> cartan;
  if (rs.family == Family::GL)
    cartan = spaces[Weight::zero(l)];
  else
    cartan = h;
  for (const auto& c : cartan) {
    g.basis.push_back(c);
    g.weights.push_back(Weight::zero(l));
  }
  for (int k = 0; k < npos; ++k) {
    g.basis.push_back(transpose(g.basis[std::size_t(k)]));
    g.weights.push_back(-rs.positive_roots[std::size_t(k)]);
  }
  g.dim = int(g.basis.size());
  std::size_t total = 0;
  for (const auto& [w, v] : spaces)
    total += v.size();
  if (int(total) != g.dim || g.dim != rs.dim())
    throw DimensionError("Lie algebra realization of " + rs.name + " has dimension " + std::to_string(total));

  auto invariant_form = [&](const std::vector<std::vector<SparseVector>>& br, int a, int b) {
    if (!g.semisimple)
      return trace(g.basis[std::size_t(a)] * g.basis[std::size_t(b)]);
    // tr(ad u_a ad u_b) = sum_c <u_c^*, [u_a, [u_b, u_c]]>
    Rational s = 0;
    for (int c = 0; c < g.dim; ++c)
      for (const auto& t : br[std::size_t(b)][std::size_t(c)])
        for (const auto& u : br[std::size_t(a)][std::size_t(t.index)])
          if (u.index == c)
            s += t.coeff * u.coeff;
    return s;
  };

  auto compute_brackets = [&]() {
    CoordinateSolver solver;
    solver.build(g.basis);
    g.bracket.assign(std::size_t(g.dim), std::vector<SparseVector>(std::size_t(g.dim)));
    for (int a = 0; a < g.dim; ++a)
      for (int b = 0; b < g.dim; ++b) {
        RationalMatrix z = commutator(g.basis[std::size_t(a)], g.basis[std::size_t(b)]);
        if (is_zero(z))
          continue;
        auto c = solver.solve(z);
        for (int k = 0; k < g.dim; ++k)
          if (sgn(c[std::size_t(k)]) != 0)
            g.bracket[std::size_t(a)][std::size_t(b)].push_back({k, c[std::size_t(k)]});
      }
    g.kappa = RationalMatrix(g.dim, g.dim);
    for (int a = 0; a < g.dim; ++a)
      for (int b = 0; b < g.dim; ++b)
        g.kappa(a, b) = invariant_form(g.bracket, a, b);
  };
  compute_brackets();

  // Gram-Schmidt on the Cartan block so that B = kappa(theta x, y) is diagonal
  const int c0 = npos, c1 = npos + int(cartan.size());
  for (int a = c0; a < c1; ++a)
    for (int b = c0; b < a; ++b) {
      Rational num = 0, den = 0;
      // kappa is bilinear in the realization, recompute from current basis via trace relation
      num = g.kappa(a, b);
      den = g.kappa(b, b);
      if (sgn(den) == 0)
        throw DimensionError("degenerate invariant form on the Cartan subalgebra");
      Rational f = num / den;
      g.basis[std::size_t(a)] = add(g.basis[std::size_t(a)], g.basis[std::size_t(b)], -f);
      compute_brackets();
    }

  CoordinateSolver solver;
  solver.build(g.basis);
  g.theta = RationalMatrix(g.dim, g.dim);
  for (int b = 0; b < g.dim; ++b) {
    auto c = solver.solve(transpose(g.basis[std::size_t(b)]));
    for (int a = 0; a < g.dim; ++a)
      g.theta(a, b) = c[std::size_t(a)];
  }
  g.beta.assign(std::size_t(g.dim), Rational(0));
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      Rational s = 0;
      for (int c = 0; c < g.dim; ++c)
        s += g.theta(c, a) * g.kappa(c, b);
      if (a == b) {
        if (sgn(s) <= 0)
          throw DimensionError("hermitian form is not positive definite");
        g.beta[std::size_t(a)] = s;
      } else if (sgn(s) != 0) {
        throw DimensionError("hermitian form is not diagonal in the weight basis");
      }
    }
  g.kappa_inv = inverse(g.kappa);

  // u_a . e^b = - sum_c C_{ac}^b e^c
  g.coadjoint.assign(std::size_t(g.dim), std::vector<SparseVector>(std::size_t(g.dim)));
  for (int a = 0; a < g.dim; ++a)
    for (int c = 0; c < g.dim; ++c)
      for (const auto& t : g.bracket[std::size_t(a)][std::size_t(c)])
        g.coadjoint[std::size_t(a)][std::size_t(t.index)].push_back({c, -t.coeff});

  for (int i = 0; i < l; ++i) {
    const Weight& ai = rs.simple_roots[std::size_t(i)];
    for (int k = 0; k < npos; ++k)
      if (rs.positive_roots[std::size_t(k)] == ai) {
        g.simple_raising.push_back(k);
        g.simple_lowering.push_back(c1 + k);
      }
  }
  return g;
}

Rational symmetrized_trace(const LieAlgebra& g, const std::vector<int>& slots)
{
  std::vector<int> s = slots;
  std::sort(s.begin(), s.end());
  Rational total = 0;
  long count = 0;
  do {
    RationalMatrix p = g.basis[std::size_t(s[0])];
    for (std::size_t k = 1; k < s.size(); ++k)
      p = p * g.basis[std::size_t(s[k])];
    total += trace(p);
    ++count;
  } while (std::next_permutation(s.begin(), s.end()));
  return total / count;
}

} // namespace maclab
