#include "maclab/koszul.hpp"

#include "maclab/errors.hpp"
#include "maclab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <mutex>

namespace maclab {

std::string to_string(ComplexKind k)
{
  switch (k) {
  case ComplexKind::Truncated:
    return "truncated";
  case ComplexKind::Restricted:
    return "restricted";
  case ComplexKind::Full:
    return "full_lambda_s";
  }
  return "?";
}

int KoszulSlice::find(const Monomial& m) const
{
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

std::vector<Rational> KoszulSlice::coordinates(const Element& e) const
{
  std::vector<Rational> v(basis.size());
  for (const auto& [m, c] : e) {
    const int i = find(m);
    if (i < 0)
      throw OperatorDomainError("element leaves the slice (degree " + std::to_string(degree) + ", z-weight " +
                                std::to_string(z_weight) + ")");
    v[std::size_t(i)] += c;
  }
  return v;
}

Element KoszulSlice::element(const std::vector<Rational>& coords) const
{
  Element e;
  for (std::size_t i = 0; i < coords.size(); ++i)
    accumulate(e, basis[i], coords[i]);
  return e;
}

std::size_t slice_cap()
{
  if (const char* s = std::getenv("MACLAB_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v > 0)
      return std::size_t(v);
  }
  return 20000;
}

KoszulAlgebra truncated_algebra(const LieAlgebra& g, int n)
{
  if (n < 1)
    throw DomainError("truncation order must be positive");
  return KoszulAlgebra(g, ModeRules{0, n - 1, 0, -1});
}

KoszulAlgebra restricted_algebra(const LieAlgebra& g, int max_depth)
{
  return KoszulAlgebra(g, ModeRules{1, std::max(1, max_depth), 0, std::max(0, max_depth)});
}

KoszulAlgebra relabeled_algebra(const LieAlgebra& g, int max_depth)
{
  return KoszulAlgebra(g, ModeRules{0, std::max(0, max_depth), 0, std::max(0, max_depth)});
}

namespace {

struct Enumerator {
  const KoszulAlgebra& alg;
  int total = 0;
  const Weight* torus = nullptr;
  std::size_t cap = 0;
  int degree = 0, sym = 0, z = 0;
  std::vector<int> odd_keys, even_keys;
  Monomial cur;
  std::vector<Monomial> out;

  void leaf()
  {
    if (torus && alg.torus_weight(cur) != *torus)
      return;
    if (out.size() >= cap)
      throw CapacityError("slice (degree " + std::to_string(degree) + ", symmetric degree " + std::to_string(sym) +
                          ", z-weight " + std::to_string(z) + ") exceeds the cap of " + std::to_string(cap) +
                          " monomials; tighten the bounds or raise MACLAB_CAP");
    out.push_back(cur);
  }

  void even(std::size_t start, int left, int sum)
  {
    if (left == 0) {
      if (sum == total)
        leaf();
      return;
    }
    if (sum + alg.rules().even_max * left < total)
      return;
    for (std::size_t i = start; i < even_keys.size(); ++i) {
      const int d = alg.depth_of(even_keys[i]);
      if (sum + d * left > total)
        break;
      cur.even.push_back(even_keys[i]);
      even(i, left - 1, sum + d);
      cur.even.pop_back();
    }
  }

  void odd(std::size_t start, int left, int sum)
  {
    if (left == 0) {
      even(0, sym, sum);
      return;
    }
    for (std::size_t i = start; i < odd_keys.size(); ++i) {
      const int d = alg.depth_of(odd_keys[i]);
      if (sum + d * left > total)
        break;
      cur.odd.push_back(odd_keys[i]);
      odd(i + 1, left - 1, sum + d);
      cur.odd.pop_back();
    }
  }
};

} // namespace

std::vector<Monomial> enumerate_monomials(const KoszulAlgebra& alg, int degree, int sym_degree, int z_weight,
                                          const Weight* torus, std::size_t cap)
{
  Enumerator e{alg, 0, nullptr, 0, 0, 0, 0, {}, {}, {}, {}};
  e.total = -z_weight;
  e.torus = torus;
  e.cap = cap;
  e.degree = degree;
  e.sym = sym_degree;
  e.z = z_weight;
  if (e.total < 0 || degree < 0 || sym_degree < 0)
    return {};
  for (int d = 0; d <= std::min(alg.max_depth(), e.total); ++d)
    for (int a = 0; a < alg.dim(); ++a) {
      if (alg.allowed(true, d))
        e.odd_keys.push_back(alg.key(a, d));
      if (alg.allowed(false, d))
        e.even_keys.push_back(alg.key(a, d));
    }
  if (sym_degree > 0 && e.even_keys.empty())
    return {};
  e.odd(0, degree, 0);
  return std::move(e.out);
}

KoszulSlice make_slice(const KoszulAlgebra& alg, ComplexKind kind, int degree, int sym_degree, int z_weight,
                       const Weight& torus, std::vector<Monomial> basis)
{
  KoszulSlice s;
  s.kind = kind;
  s.degree = degree;
  s.s_weight = sym_degree;
  s.z_weight = z_weight;
  s.torus = torus;
  if (kind == ComplexKind::Truncated)
    s.n = alg.rules().odd_max + 1;
  s.basis = std::move(basis);
  s.index.reserve(s.basis.size());
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    s.index.emplace(s.basis[i], int(i));
  return s;
}

SparseRationalMatrix operator_matrix(const KoszulSlice& src, const KoszulSlice& tgt, const MonomialOp& op)
{
  SparseRationalMatrix m(tgt.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    Element out;
    op(src.basis[std::size_t(j)], 1, out);
    for (const auto& [mono, c] : out) {
      if (sgn(c) == 0)
        continue;
      const int i = tgt.find(mono);
      if (i < 0)
        throw OperatorDomainError("operator image leaves the target slice");
      m.add(i, j, c);
    }
  }
  return m;
}

SparseRationalMatrix image_matrix(const std::vector<Monomial>& src, const std::vector<MonomialOp>& ops)
{
  struct Entry {
    int row, col;
    Rational v;
  };
  std::vector<Entry> entries;
  int offset = 0;
  for (const MonomialOp& op : ops) {
    std::unordered_map<Monomial, int, MonomialHash> rows;
    for (std::size_t j = 0; j < src.size(); ++j) {
      Element out;
      op(src[j], 1, out);
      for (const auto& [mono, c] : out) {
        if (sgn(c) == 0)
          continue;
        auto [it, fresh] = rows.try_emplace(mono, int(rows.size()));
        entries.push_back({offset + it->second, int(j), c});
      }
    }
    offset += int(rows.size());
  }
  SparseRationalMatrix m(offset, int(src.size()));
  for (const Entry& e : entries)
    m.add(e.row, e.col, e.v);
  return m;
}

void chain_boundary(const KoszulAlgebra& alg, const Monomial& x, const Rational& c, Element& out)
{
  const LieAlgebra& g = alg.lie();
  const int k = x.degree();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int ki = x.odd[std::size_t(i)], kj = x.odd[std::size_t(j)];
      const int depth = alg.depth_of(ki) + alg.depth_of(kj);
      if (!alg.allowed(true, depth))
        continue;
      const Rational sign = (i + j) % 2 == 0 ? c : Rational(-c);
      for (const Term& t : g.bracket[std::size_t(alg.index_of(ki))][std::size_t(alg.index_of(kj))]) {
        Monomial y;
        y.odd.push_back(alg.key(t.index, depth));
        for (int r = 0; r < k; ++r)
          if (r != i && r != j)
            y.odd.push_back(x.odd[std::size_t(r)]);
        const int s = sort_with_sign(y.odd);
        if (s != 0)
          accumulate(out, y, sign * t.coeff * s);
      }
    }
}

RestrictedDifferential::RestrictedDifferential(const KoszulAlgebra& alg) : alg_(&alg)
{
  const int D = alg.max_depth();
  r_.resize(std::size_t(D + 1));
  ad_.resize(std::size_t(D + 1));
  for (int m = 1; m <= D; ++m)
    for (int b = 0; b < alg.dim(); ++b) {
      const SparseVector ub{{b, Rational(1)}};
      r_[std::size_t(m)].push_back(alg.coadjoint(ub, m, false));
      ad_[std::size_t(m)].push_back(alg.coadjoint(ub, m, true));
    }
}

void RestrictedDifferential::operator()(const Monomial& x, const Rational& c, Element& out) const
{
  int top = 0;
  for (int k : x.odd)
    top = std::max(top, alg_->depth_of(k));
  for (int k : x.even)
    top = std::max(top, alg_->depth_of(k));
  const Rational half = Rational(1, 2);
  for (int m = 1; m <= std::min(top, alg_->max_depth()); ++m)
    for (int b = 0; b < alg_->dim(); ++b) {
      Element tmp;
      alg_->apply(r_[std::size_t(m)][std::size_t(b)], x, c, tmp);
      alg_->apply(ad_[std::size_t(m)][std::size_t(b)], x, c * half, tmp);
      for (const auto& [y, v] : tmp)
        alg_->multiply(true, alg_->key(b, m), y, v, out);
    }
}

SparseRationalMatrix invariant_basis(const KoszulAlgebra& alg, const std::vector<Monomial>& basis)
{
  const LieAlgebra& g = alg.lie();
  std::vector<MonomialOp> ops;
  std::vector<std::shared_ptr<Derivation>> ders;
  for (int f : g.simple_lowering) {
    auto d = std::make_shared<Derivation>();
    const SparseVector uf{{f, Rational(1)}};
    if (alg.rules().odd_max >= alg.rules().odd_min)
      d->parts.push_back({alg.coadjoint(uf, 0, true), Rational(1)});
    if (alg.rules().even_max >= alg.rules().even_min)
      d->parts.push_back({alg.coadjoint(uf, 0, false), Rational(1)});
    ders.push_back(d);
    ops.push_back([&alg, d](const Monomial& x, const Rational& c, Element& out) { alg.apply(*d, x, c, out); });
  }
  const int n = int(basis.size());
  if (ops.empty()) {
    SparseRationalMatrix id(n, n);
    for (int i = 0; i < n; ++i)
      id.add(i, i, 1);
    return id;
  }
  const auto kernel = nullspace(image_matrix(basis, ops));
  SparseRationalMatrix v(n, int(kernel.size()));
  for (std::size_t j = 0; j < kernel.size(); ++j)
    for (int i = 0; i < n; ++i)
      if (sgn(kernel[j][std::size_t(i)]) != 0)
        v.add(i, int(j), kernel[j][std::size_t(i)]);
  return v;
}

namespace {

std::mutex g_observer_mu;
std::function<void(const SparseRationalMatrix&)> g_observer;

} // namespace

void set_rank_observer(std::function<void(const SparseRationalMatrix&)> f)
{
  std::lock_guard<std::mutex> lock(g_observer_mu);
  g_observer = std::move(f);
}

int observed_rank(const SparseRationalMatrix& m)
{
  {
    std::lock_guard<std::mutex> lock(g_observer_mu);
    if (g_observer)
      g_observer(m);
  }
  return rank_exact(m);
}

namespace {

SparseRationalMatrix truncated_d(const KoszulAlgebra& alg, const KoszulSlice& from, const KoszulSlice& to)
{
  return operator_matrix(to, from, [&alg](const Monomial& x, const Rational& c, Element& out) {
           chain_boundary(alg, x, c, out);
         }).transpose();
}

} // namespace

KoszulSlice trunc_slice(const LieAlgebra& g, int n, int degree, int z_weight, bool relative)
{
  if (degree > n * g.dim)
    throw DegreeError("degree exceeds n·dim g");
  const KoszulAlgebra alg = relative ? KoszulAlgebra(g, ModeRules{1, n - 1, 0, -1}) : truncated_algebra(g, n);
  const Weight zero = Weight::zero(g.rs.ss_rank);
  KoszulSlice s = make_slice(alg, ComplexKind::Truncated, degree, 0, z_weight, zero,
                             enumerate_monomials(alg, degree, 0, z_weight, &zero, slice_cap()));
  KoszulSlice next = make_slice(alg, ComplexKind::Truncated, degree + 1, 0, z_weight, zero,
                                enumerate_monomials(alg, degree + 1, 0, z_weight, &zero, slice_cap()));
  if (relative) {
    s.invariant_projected = true;
    s.invariants = invariant_basis(alg, s.basis);
  }
  s.matrices["d"] = truncated_d(alg, s, next);
  return s;
}

KoszulSlice restricted_slice(const LieAlgebra& g, int degree, int sym_degree, int z_weight, int max_depth)
{
  if (z_weight > 0 || sym_degree < 0)
    throw DomainError("restricted slices need z-weight <= 0 and symmetric degree >= 0");
  const KoszulAlgebra alg = restricted_algebra(g, max_depth < 0 ? -z_weight : max_depth);
  const Weight zero = Weight::zero(g.rs.ss_rank);
  KoszulSlice s = make_slice(alg, ComplexKind::Restricted, degree, sym_degree, z_weight, zero,
                             enumerate_monomials(alg, degree, sym_degree, z_weight, &zero, slice_cap()));
  KoszulSlice next = make_slice(alg, ComplexKind::Restricted, degree + 1, sym_degree, z_weight, zero,
                                enumerate_monomials(alg, degree + 1, sym_degree, z_weight, &zero, slice_cap()));
  s.invariant_projected = true;
  s.invariants = invariant_basis(alg, s.basis);
  RestrictedDifferential dbar(alg);
  s.matrices["d"] = operator_matrix(s, next, std::ref(dbar));
  return s;
}

namespace {

SparseRationalMatrix outgoing_on_active(const KoszulSlice& s)
{
  const SparseRationalMatrix& d = s.matrices.at("d");
  return s.invariant_projected ? d * s.invariants : d;
}

} // namespace

long cohomology_dim(const KoszulSlice* in, const KoszulSlice& mid, const KoszulSlice* out)
{
  long r_out = 0, r_in = 0;
  if (out && mid.matrices.count("d"))
    r_out = observed_rank(outgoing_on_active(mid));
  if (in && in->matrices.count("d")) {
    const SparseRationalMatrix din = outgoing_on_active(*in);
    if (out && mid.matrices.count("d") && !(mid.matrices.at("d") * din).is_zero())
      throw NotAComplex("differential does not square to zero at degree " + std::to_string(mid.degree) +
                        ", z-weight " + std::to_string(mid.z_weight));
    r_in = observed_rank(din);
  }
  return long(mid.active_dim()) - r_out - r_in;
}

int max_odd_degree(const KoszulAlgebra& alg, int z_weight)
{
  int budget = -z_weight, count = 0;
  for (int d = alg.rules().odd_min; d <= alg.rules().odd_max; ++d)
    for (int a = 0; a < alg.dim(); ++a) {
      if (budget < d)
        return count;
      budget -= d;
      ++count;
    }
  return count;
}

GeneratorTable predicted_trunc_hilbert(const RootSystem& rs, int n)
{
  if (n < 1)
    throw DomainError("truncation order must be positive");
  GeneratorTable t;
  for (int m : rs.exponents) {
    t.push_back({2 * m + 1, 0, 0, 1});
    for (int j = 1; j < n; ++j)
      t.push_back({2 * m + 1, -(m * n + j), 0, 1});
  }
  return t;
}

GeneratorTable predicted_sym_hilbert(const RootSystem& rs, int z_bound)
{
  GeneratorTable t;
  for (int m : rs.exponents) {
    for (int n = 0; -n >= z_bound; ++n)
      t.push_back({0, -n, m + 1, 1});
    for (int n = 1; -n >= z_bound; ++n)
      t.push_back({1, -n, m, 1});
  }
  return t;
}

HilbertSeries free_algebra_series(const GeneratorTable& gens, int z_bound, int s_bound)
{
  HilbertSeries s;
  s[{0, 0, 0}] = 1;
  for (const GeneratorEntry& g : gens) {
    for (int rep = 0; rep < g.multiplicity; ++rep) {
      HilbertSeries next = s;
      const bool odd = g.degree % 2 != 0;
      if (!odd && g.z_weight == 0 && g.s_weight == 0)
        throw DomainError("even generator of weight zero gives an infinite series");
      for (const auto& [key, c] : s) {
        auto [k, p, w] = key;
        for (int e = 1;; ++e) {
          const int kk = k + e * g.degree, pp = p + e * g.s_weight, ww = w + e * g.z_weight;
          if (pp > s_bound || ww < z_bound)
            break;
          next[{kk, pp, ww}] += c;
          if (odd)
            break;
        }
      }
      s = std::move(next);
    }
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

long lookup(const HilbertSeries& s, int k, int p, int w)
{
  auto it = s.find({k, p, w});
  return it == s.end() ? 0 : it->second;
}

using Column = SliceColumn;

using DifferentialBuilder = std::function<SparseRationalMatrix(const KoszulSlice&, const KoszulSlice&)>;

void build_columns(std::vector<Column>& cols, const KoszulAlgebra& alg, ComplexKind kind, bool relative,
                   const DifferentialBuilder& d)
{
  const Weight zero = Weight::zero(alg.lie().rs.ss_rank);
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    cols[c].kmax = max_odd_degree(alg, cols[c].w);
    cols[c].slices.resize(std::size_t(cols[c].kmax + 2));
    for (int k = 0; k <= cols[c].kmax + 1; ++k)
      tasks.emplace_back(c, k);
  }
  parallel_for(tasks.size(), [&](std::size_t i) {
    auto [c, k] = tasks[i];
    Column& col = cols[c];
    auto basis = k <= col.kmax ? enumerate_monomials(alg, k, col.p, col.w, &zero, slice_cap())
                               : std::vector<Monomial>{};
    KoszulSlice s = make_slice(alg, kind, k, col.p, col.w, zero, std::move(basis));
    if (relative) {
      s.invariant_projected = true;
      s.invariants = invariant_basis(alg, s.basis);
    }
    col.slices[std::size_t(k)] = std::move(s);
  });
  parallel_for(tasks.size(), [&](std::size_t i) {
    auto [c, k] = tasks[i];
    Column& col = cols[c];
    if (k > col.kmax)
      return;
    col.slices[std::size_t(k)].matrices["d"] = d(col.slices[std::size_t(k)], col.slices[std::size_t(k + 1)]);
  });
}

// ranks of d_k on the full slice (absolute) and on invariants (relative); d∘d = 0 check
void column_ranks(std::vector<Column>& cols, bool absolute, bool relative, bool full_square_check)
{
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    cols[c].rank_abs.assign(std::size_t(cols[c].kmax + 2), 0);
    cols[c].rank_rel.assign(std::size_t(cols[c].kmax + 2), 0);
    for (int k = 0; k <= cols[c].kmax; ++k)
      tasks.emplace_back(c, k);
  }
  std::vector<char> square_ok(tasks.size(), 1);
  parallel_for(tasks.size(), [&](std::size_t i) {
    auto [c, k] = tasks[i];
    Column& col = cols[c];
    const KoszulSlice& s = col.slices[std::size_t(k)];
    const SparseRationalMatrix& d = s.matrices.at("d");
    if (absolute)
      col.rank_abs[std::size_t(k)] = observed_rank(d);
    SparseRationalMatrix dv;
    if (relative) {
      dv = d * s.invariants;
      col.rank_rel[std::size_t(k)] = observed_rank(dv);
    }
    if (k + 1 <= col.kmax) {
      const SparseRationalMatrix& d2 = col.slices[std::size_t(k + 1)].matrices.at("d");
      square_ok[i] = full_square_check ? (d2 * d).is_zero() : (d2 * dv).is_zero();
    }
  });
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!square_ok[i])
      cols[tasks[i].first].squares_to_zero = false;
  for (Column& col : cols) {
    col.h_abs.assign(std::size_t(col.kmax + 1), 0);
    col.h_rel.assign(std::size_t(col.kmax + 1), 0);
    for (int k = 0; k <= col.kmax; ++k) {
      const long before_abs = k > 0 ? col.rank_abs[std::size_t(k - 1)] : 0;
      const long before_rel = k > 0 ? col.rank_rel[std::size_t(k - 1)] : 0;
      const KoszulSlice& s = col.slices[std::size_t(k)];
      col.h_abs[std::size_t(k)] = s.dim() - col.rank_abs[std::size_t(k)] - before_abs;
      if (relative)
        col.h_rel[std::size_t(k)] = s.invariants.cols() - col.rank_rel[std::size_t(k)] - before_rel;
    }
  }
}

} // namespace

std::vector<SliceColumn> restricted_columns(const KoszulAlgebra& alg, int z_bound, int p_bound)
{
  std::vector<Column> cols;
  for (int p = 0; p <= p_bound; ++p)
    for (int w = 0; w >= z_bound; --w)
      cols.push_back(Column{p, w, 0, {}, {}, {}, {}, {}, true});
  RestrictedDifferential dbar(alg);
  build_columns(cols, alg, ComplexKind::Restricted, true, [&dbar](const KoszulSlice& a, const KoszulSlice& b) {
    return operator_matrix(a, b, std::cref(dbar));
  });
  column_ranks(cols, false, true, false);
  return cols;
}

namespace {

Json mismatch(const std::string& what, int k, int p, int w, long computed, long expected)
{
  return Json{{"what", what},   {"degree", k},          {"s_weight", p},
              {"z_weight", w},  {"computed", computed}, {"expected", expected}};
}

} // namespace

Report verify_trunc(const RootSystem& rs, int n, int weight_bound)
{
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "verify-trunc";
  rep.params = {{"type", rs.name}, {"n", n}, {"weight_bound", weight_bound}};
  if (weight_bound > 0)
    throw DomainError("weight bound must be <= 0");
  const LieAlgebra g = build_lie_algebra(rs);
  const KoszulAlgebra alg = truncated_algebra(g, n);

  const GeneratorTable gens = predicted_trunc_hilbert(rs, n);
  GeneratorTable rel_gens, abs0;
  for (const auto& e : gens)
    (e.z_weight == 0 ? abs0 : rel_gens).push_back(e);
  const HilbertSeries pred_abs = free_algebra_series(gens, weight_bound, 0);
  const HilbertSeries pred_rel = free_algebra_series(rel_gens, weight_bound, 0);
  const HilbertSeries hg = free_algebra_series(abs0, weight_bound, 0);

  Json table = Json::array();
  for (const auto& e : gens)
    table.push_back({e.degree, e.z_weight});
  rep.details["generators"] = table;

  // relative cochains: g-invariant cochains of z·g[z]/z^n
  const KoszulAlgebra rel_alg(g, ModeRules{1, n - 1, 0, -1});
  std::vector<Column> cols, rcols;
  for (int w = 0; w >= weight_bound; --w) {
    cols.push_back(Column{0, w, 0, {}, {}, {}, {}, {}, true});
    rcols.push_back(Column{0, w, 0, {}, {}, {}, {}, {}, true});
  }
  try {
    build_columns(cols, alg, ComplexKind::Truncated, false, [&alg](const KoszulSlice& a, const KoszulSlice& b) {
      return truncated_d(alg, a, b);
    });
    build_columns(rcols, rel_alg, ComplexKind::Truncated, true,
                  [&rel_alg](const KoszulSlice& a, const KoszulSlice& b) { return truncated_d(rel_alg, a, b); });
  } catch (const CapacityError& e) {
    rep.status = "CAPACITY";
    rep.first_mismatch = Json{{"capacity", e.what()}};
    rep.wall_time_ms = ms_since(t0);
    return rep;
  }
  column_ranks(cols, true, false, true);
  column_ranks(rcols, false, true, false);

  Json relative = Json::array();
  long squares = 0, euler_ok = 0, slices = 0;
  std::map<std::pair<int, int>, long> h_abs, h_rel;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Column& col = cols[c];
    const Column& rcol = rcols[c];
    if (!col.squares_to_zero || !rcol.squares_to_zero)
      rep.fail(Json{{"what", "d^2 != 0"}, {"z_weight", col.w}});
    long e_dim = 0, e_h = 0, e_pred = 0, e_vdim = 0, e_hrel = 0, e_prel = 0;
    for (int k = 0; k <= std::max(col.kmax, rcol.kmax); ++k) {
      const int sg = k % 2 == 0 ? 1 : -1;
      if (k <= col.kmax) {
        const KoszulSlice& s = col.slices[std::size_t(k)];
        const long ha = col.h_abs[std::size_t(k)];
        const long ea = lookup(pred_abs, k, 0, col.w);
        h_abs[{k, col.w}] = ha;
        rep.per_slice.push_back({k, col.w, 0, s.dim(), ha, ea});
        if (ha != ea)
          rep.fail(mismatch("absolute", k, 0, col.w, ha, ea));
        e_dim += sg * s.dim();
        e_h += sg * ha;
        e_pred += sg * ea;
        ++slices;
      }
      if (k <= rcol.kmax) {
        const KoszulSlice& s = rcol.slices[std::size_t(k)];
        const long hr = rcol.h_rel[std::size_t(k)];
        const long er = lookup(pred_rel, k, 0, col.w);
        h_rel[{k, col.w}] = hr;
        relative.push_back({{"degree", k}, {"z_weight", col.w}, {"dim", s.invariants.cols()}, {"cohom_dim", hr},
                            {"expected", er}});
        if (hr != er)
          rep.fail(mismatch("relative", k, 0, col.w, hr, er));
        e_vdim += sg * s.invariants.cols();
        e_hrel += sg * hr;
        e_prel += sg * er;
        ++slices;
      }
    }
    squares += col.squares_to_zero && rcol.squares_to_zero;
    const bool ok = e_dim == e_h && e_h == e_pred && e_vdim == e_hrel && e_hrel == e_prel;
    euler_ok += ok;
    if (!ok)
      rep.fail(Json{{"what", "euler characteristic"}, {"z_weight", col.w}, {"dims", e_dim}, {"cohomology", e_h},
                    {"predicted", e_pred}});
  }
  rep.details["relative"] = relative;
  rep.details["slices"] = slices;
  rep.details["d_squared_zero"] = Json{{"weights", cols.size()}, {"ok", squares}};
  rep.details["euler"] = Json{{"weights", cols.size()}, {"ok", euler_ok}};

  // H(g[z]/z^n) = H(g) ⊗ H(g[z]/z^n, g)
  bool factorises = true;
  for (const auto& [key, ha] : h_abs) {
    auto [k, w] = key;
    long conv = 0;
    for (const auto& [hk, hc] : hg) {
      const int kk = k - std::get<0>(hk);
      auto it = h_rel.find({kk, w});
      if (it != h_rel.end())
        conv += hc * it->second;
    }
    if (conv != ha) {
      factorises = false;
      rep.fail(mismatch("absolute vs H(g) ⊗ relative", k, 0, w, ha, conv));
    }
  }
  rep.details["absolute_relative_factorisation"] = factorises;

  // semicontinuity: sum over weights dominates H(g)^{⊗n}, once every weight is in range
  int top_weight = 0;
  for (const auto& e : gens)
    top_weight -= e.z_weight;
  if (-weight_bound >= top_weight) {
    const HilbertSeries pow = free_algebra_series(
        [&] {
          GeneratorTable t;
          for (int i = 0; i < n; ++i)
            for (int m : rs.exponents)
              t.push_back({2 * m + 1, -1, 0, 1});
          return t;
        }(),
        -n * int(rs.exponents.size()), 0);
    std::map<int, long> by_degree, lower;
    for (const auto& [key, h] : h_abs)
      by_degree[key.first] += h;
    for (const auto& [key, c] : pow)
      lower[std::get<0>(key)] += c;
    bool ok = true;
    for (const auto& [k, c] : lower)
      if (by_degree[k] < c) {
        ok = false;
        rep.fail(Json{{"what", "semicontinuity lower bound"}, {"degree", k}, {"computed", by_degree[k]},
                      {"lower_bound", c}});
      }
    rep.details["lower_bound"] = ok ? "ok" : "violated";
  } else {
    rep.details["lower_bound"] = "skipped: weight range incomplete";
  }
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report verify_sym(const RootSystem& rs, int z_bound, int p_bound)
{
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "verify-sym";
  rep.params = {{"type", rs.name}, {"weight_bound", z_bound}, {"p_bound", p_bound}};
  if (z_bound > 0 || p_bound < 0)
    throw DomainError("need weight bound <= 0 and p bound >= 0");
  const LieAlgebra g = build_lie_algebra(rs);
  const KoszulAlgebra alg = restricted_algebra(g, -z_bound);
  const HilbertSeries pred = free_algebra_series(predicted_sym_hilbert(rs, z_bound), z_bound, p_bound);

  std::vector<Column> cols;
  for (int p = 0; p <= p_bound; ++p)
    for (int w = 0; w >= z_bound; --w)
      cols.push_back(Column{p, w, 0, {}, {}, {}, {}, {}, true});
  RestrictedDifferential dbar(alg);
  try {
    build_columns(cols, alg, ComplexKind::Restricted, true, [&dbar](const KoszulSlice& a, const KoszulSlice& b) {
      return operator_matrix(a, b, std::cref(dbar));
    });
  } catch (const CapacityError& e) {
    rep.status = "CAPACITY";
    rep.first_mismatch = Json{{"capacity", e.what()}};
    rep.wall_time_ms = ms_since(t0);
    return rep;
  }
  column_ranks(cols, false, true, false);

  long squares = 0, euler_ok = 0, slices = 0;
  bool low_match = true, all_match = true;
  Json high = Json::array();
  for (const Column& col : cols) {
    if (!col.squares_to_zero)
      rep.fail(Json{{"what", "dbar^2 != 0 on invariants"}, {"s_weight", col.p}, {"z_weight", col.w}});
    squares += col.squares_to_zero;
    long e_dim = 0, e_h = 0, e_pred = 0;
    for (int k = 0; k <= col.kmax; ++k) {
      const KoszulSlice& s = col.slices[std::size_t(k)];
      const long h = col.h_rel[std::size_t(k)];
      const long e = lookup(pred, k, col.p, col.w);
      rep.per_slice.push_back({k, col.w, col.p, s.invariants.cols(), h, e});
      if (h != e) {
        all_match = false;
        if (k <= 1)
          low_match = false;
        rep.fail(mismatch("restricted", k, col.p, col.w, h, e));
      }
      if (k >= 2 && h != 0)
        high.push_back({{"degree", k}, {"s_weight", col.p}, {"z_weight", col.w}, {"cohom_dim", h}});
      const int sg = k % 2 == 0 ? 1 : -1;
      e_dim += sg * s.invariants.cols();
      e_h += sg * h;
      e_pred += sg * e;
      ++slices;
    }
    const bool ok = e_dim == e_h && e_h == e_pred;
    euler_ok += ok;
    if (!ok)
      rep.fail(Json{{"what", "euler characteristic"}, {"s_weight", col.p}, {"z_weight", col.w}, {"dims", e_dim},
                    {"cohomology", e_h}, {"predicted", e_pred}});
  }
  rep.details["slices"] = slices;
  rep.details["h0_h1_match"] = low_match;
  rep.details["all_degrees_match"] = all_match;
  rep.details["h_ge2_nonzero"] = high;
  rep.details["d_squared_zero"] = Json{{"columns", cols.size()}, {"ok", squares}};
  rep.details["euler"] = Json{{"columns", cols.size()}, {"ok", euler_ok}};
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report delta1_check(int m, int n, int N)
{
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "verify-delta1";
  rep.params = {{"m", m}, {"n", n}, {"N", N}};
  if (n < 1 || N < 2 * n)
    throw DomainError("delta1 check needs n >= 1 and N >= 2n");
  // L(z^k) = ((m+1)n + k) z^{n+k-1} dz on polynomials whose image stays in degree <= N
  const int cols = N - n + 2;
  SparseRationalMatrix L(N + 1, cols);
  for (int k = 0; k < cols; ++k)
    L.add(n + k - 1, k, (m + 1) * n + k);
  const int r = observed_rank(L);
  const bool injective = r == cols;
  std::vector<int> cokernel;
  SparseRationalMatrix span = L;
  int current = r;
  for (int j = 0; j <= N; ++j) {
    SparseRationalMatrix e(N + 1, 1);
    e.add(j, 0, 1);
    SparseRationalMatrix ext(N + 1, span.cols() + 1);
    for (int i = 0; i <= N; ++i)
      for (const auto& [c, v] : span.row(i))
        ext.add(i, c, v);
    ext.add(j, span.cols(), 1);
    const int r2 = rank_exact(ext);
    if (r2 > current) {
      cokernel.push_back(j);
      span = ext;
      current = r2;
    }
  }
  Json weights = Json::array(), reps = Json::array();
  for (int j : cokernel) {
    weights.push_back(m * n + j + 1);
    reps.push_back(j == 0 ? std::string("dz") : "z^" + std::to_string(j) + " dz");
  }
  Json expected = Json::array();
  for (int j = 1; j < n; ++j)
    expected.push_back(m * n + j);
  rep.details["injective"] = injective;
  rep.details["cokernel_dim"] = cokernel.size();
  rep.details["cokernel"] = reps;
  rep.details["cokernel_weights"] = weights;
  rep.details["expected_weights"] = expected;
  if (!injective)
    rep.fail(Json{{"what", "kernel"}, {"rank", r}, {"domain_dim", cols}});
  else if (int(cokernel.size()) != n - 1)
    rep.fail(Json{{"what", "cokernel dimension"}, {"computed", cokernel.size()}, {"expected", n - 1}});
  else if (weights != expected)
    rep.fail(Json{{"what", "cokernel weights"}, {"computed", weights}, {"expected", expected}});
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

} // namespace maclab
