#include "maclab/laplacian.hpp"

#include "maclab/errors.hpp"
#include "maclab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

namespace maclab {

namespace {

const char* tag_name(OpTag t)
{
  switch (t) {
  case OpTag::Ad:
    return "ad";
  case OpTag::R:
    return "R";
  case OpTag::AdStar:
    return "ad*";
  case OpTag::RStar:
    return "R*";
  case OpTag::D:
    return "d";
  case OpTag::DStar:
    return "d*";
  case OpTag::Dbar:
    return "dbar";
  case OpTag::DbarStar:
    return "dbar*";
  case OpTag::Dop:
    return "D";
  case OpTag::Box:
    return "box";
  case OpTag::Boxbar:
    return "boxbar";
  case OpTag::K:
    return "K";
  }
  return "?";
}

bool is_generator(OpTag t)
{
  return t == OpTag::Ad || t == OpTag::R || t == OpTag::AdStar || t == OpTag::RStar || t == OpTag::D ||
         t == OpTag::DStar;
}

} // namespace

OperatorKind parse_operator(const std::string& s)
{
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');)
    parts.push_back(p);
  if (parts.empty())
    throw UsageError("empty operator name");
  for (OpTag t : {OpTag::Ad, OpTag::R, OpTag::AdStar, OpTag::RStar, OpTag::D, OpTag::DStar, OpTag::Dbar,
                  OpTag::DbarStar, OpTag::Dop, OpTag::Box, OpTag::Boxbar, OpTag::K}) {
    if (parts[0] != tag_name(t))
      continue;
    OperatorKind k{t, 0, 0};
    if (is_generator(t)) {
      if (parts.size() != 3)
        throw UsageError("generator operator needs the form " + parts[0] + ":a:m");
      k.a = std::stoi(parts[1]);
      k.m = std::stoi(parts[2]);
    } else if (parts.size() != 1) {
      throw UsageError("operator " + parts[0] + " takes no parameters");
    }
    return k;
  }
  throw UsageError("unknown operator '" + s + "'");
}

std::string to_string(const OperatorKind& k)
{
  std::string s = tag_name(k.tag);
  if (is_generator(k.tag))
    s += ":" + std::to_string(k.a) + ":" + std::to_string(k.m);
  return s;
}

OperatorAlgebra::OperatorAlgebra(const KoszulAlgebra& alg) : alg_(&alg), D_(alg.max_depth())
{
  const LieAlgebra& g = alg.lie();
  const int n = alg.dim();
  const std::size_t total = std::size_t(n) * std::size_t(2 * D_ + 1);
  R_.resize(total);
  ad_.resize(total);
  Rs_.resize(total);
  ads_.resize(total);
  d_.resize(total);
  ds_.resize(total);
  for (int a = 0; a < n; ++a) {
    const SparseVector ua{{a, Rational(1)}};
    for (int m = -D_; m <= D_; ++m) {
      const std::size_t s = slot(a, m);
      R_[s] = alg.coadjoint(ua, m, false);
      ad_[s] = alg.coadjoint(ua, m, true);
      d_[s] = alg.d_map(ua, m);
      Rs_[s] = alg.adjoint(R_[s]);
      ads_[s] = alg.adjoint(ad_[s]);
      ds_[s] = alg.adjoint(d_[s]);
    }
    Derivation z;
    z.parts.push_back({alg.coadjoint(ua, 0, true), Rational(1)});
    z.parts.push_back({alg.coadjoint(ua, 0, false), Rational(1)});
    zero_action_.push_back(std::move(z));
  }
  kappa_rows_.resize(std::size_t(n));
  kappa_inv_rows_.resize(std::size_t(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (sgn(g.kappa(a, b)) != 0)
        kappa_rows_[std::size_t(a)].push_back({b, g.kappa(a, b)});
      if (sgn(g.kappa_inv(a, b)) != 0)
        kappa_inv_rows_[std::size_t(a)].push_back({b, g.kappa_inv(a, b)});
    }
}

namespace {

void check_range(int m, int D)
{
  if (m < -D || m > D)
    throw OperatorDomainError("mode shift " + std::to_string(m) + " outside the tabulated range");
}

int top_depth(const KoszulAlgebra& alg, const Monomial& x)
{
  int top = 0;
  for (int k : x.odd)
    top = std::max(top, alg.depth_of(k));
  for (int k : x.even)
    top = std::max(top, alg.depth_of(k));
  return top;
}

} // namespace

const GeneratorMap& OperatorAlgebra::R(int a, int m) const
{
  check_range(m, D_);
  return R_[slot(a, m)];
}

const GeneratorMap& OperatorAlgebra::ad(int a, int m) const
{
  check_range(m, D_);
  return ad_[slot(a, m)];
}

const GeneratorMap& OperatorAlgebra::R_star(int a, int m) const
{
  check_range(m, D_);
  return Rs_[slot(a, m)];
}

const GeneratorMap& OperatorAlgebra::ad_star(int a, int m) const
{
  check_range(m, D_);
  return ads_[slot(a, m)];
}

const GeneratorMap& OperatorAlgebra::d(int a, int m) const
{
  check_range(m, D_);
  return d_[slot(a, m)];
}

const GeneratorMap& OperatorAlgebra::d_star(int a, int m) const
{
  check_range(m, D_);
  return ds_[slot(a, m)];
}

void OperatorAlgebra::dbar(const Monomial& x, const Rational& c, Element& out) const
{
  const KoszulAlgebra& A = *alg_;
  const Rational half(1, 2);
  for (int m = 1; m <= std::min(top_depth(A, x), D_); ++m)
    for (int b = 0; b < A.dim(); ++b) {
      Element tmp;
      A.apply(R_[slot(b, m)], x, c, tmp);
      A.apply(ad_[slot(b, m)], x, c * half, tmp);
      for (const auto& [y, v] : tmp)
        A.multiply(true, A.key(b, m), y, v, out);
    }
}

void OperatorAlgebra::D(const Monomial& x, const Rational& c, Element& out) const
{
  const KoszulAlgebra& A = *alg_;
  const LieAlgebra& g = A.lie();
  for (int m = 1; m <= std::min(top_depth(A, x), D_); ++m)
    for (int b = 0; b < A.dim(); ++b) {
      Element tmp;
      A.apply(ds_[slot(b, -m)], x, c / g.beta[std::size_t(b)], tmp);
      for (const auto& [y, v] : tmp)
        A.apply(d_[slot(b, -m)], y, v, out);
    }
}

void OperatorAlgebra::box(const Monomial& x, const Rational& c, Element& out) const
{
  const KoszulAlgebra& A = *alg_;
  const LieAlgebra& g = A.lie();
  for (int m = 1; m <= std::min(top_depth(A, x), D_); ++m) {
    const Rational cm = c / m;
    for (int b = 0; b < A.dim(); ++b) {
      Element y;
      for (const Term& t : kappa_inv_rows_[std::size_t(b)])
        A.apply(R_[slot(t.index, m)], x, cm * t.coeff, y);
      A.apply(ads_[slot(b, -m)], x, cm / g.beta[std::size_t(b)], y);
      for (const auto& [u, v] : y) {
        A.apply(R_[slot(b, -m)], u, v, out);
        A.apply(ad_[slot(b, -m)], u, v, out);
      }
    }
  }
}

void OperatorAlgebra::K(const Monomial& x, const Rational& c, Element& out) const
{
  const KoszulAlgebra& A = *alg_;
  const LieAlgebra& g = A.lie();
  for (int gi : x.odd) {
    const int m = A.depth_of(gi), gidx = A.index_of(gi);
    Element contracted;
    A.multiply_adjoint(true, gi, x, c, contracted);
    // sum over d with kappa(d, g) != 0 of kappa(d, g)/beta_d · ad_{[u_c, u_d]}(0) psi^c(-m) ...
    for (const Term& kd : kappa_rows_[std::size_t(gidx)]) {
      const int d = kd.index;
      const Rational theta = kd.coeff / g.beta[std::size_t(d)];
      for (int cidx = 0; cidx < A.dim(); ++cidx) {
        const SparseVector& br = g.bracket[std::size_t(cidx)][std::size_t(d)];
        if (br.empty())
          continue;
        Element y;
        for (const auto& [u, v] : contracted)
          A.multiply(true, A.key(cidx, m), u, v * theta, y);
        for (const Term& e : br)
          for (const auto& [u, v] : y)
            A.apply(zero_action_[std::size_t(e.index)], u, v * e.coeff, out);
      }
    }
  }
}

MonomialOp OperatorAlgebra::generator(const OperatorKind& k) const
{
  const GeneratorMap* map = nullptr;
  switch (k.tag) {
  case OpTag::Ad:
    map = &ad(k.a, k.m);
    break;
  case OpTag::R:
    map = &R(k.a, k.m);
    break;
  case OpTag::AdStar:
    map = &ad_star(k.a, k.m);
    break;
  case OpTag::RStar:
    map = &R_star(k.a, k.m);
    break;
  case OpTag::D:
    map = &d(k.a, k.m);
    break;
  case OpTag::DStar:
    map = &d_star(k.a, k.m);
    break;
  case OpTag::Dbar:
    return [this](const Monomial& x, const Rational& c, Element& out) { dbar(x, c, out); };
  case OpTag::Dop:
    return [this](const Monomial& x, const Rational& c, Element& out) { D(x, c, out); };
  case OpTag::Box:
    return [this](const Monomial& x, const Rational& c, Element& out) { box(x, c, out); };
  case OpTag::K:
    return [this](const Monomial& x, const Rational& c, Element& out) { K(x, c, out); };
  default:
    throw OperatorDomainError(to_string(k) + " is defined through slice matrices only");
  }
  if (k.a < 0 || k.a >= alg_->dim())
    throw OperatorDomainError("basis index out of range");
  return [this, map](const Monomial& x, const Rational& c, Element& out) { alg_->apply(*map, x, c, out); };
}

std::vector<MonomialOp> OperatorAlgebra::harmonic_family() const
{
  const LieAlgebra& g = alg_->lie();
  std::vector<MonomialOp> ops;
  for (int m = 0; m <= D_; ++m)
    for (int c = 0; c < alg_->dim(); ++c) {
      if (m > 0) {
        const GeneratorMap* ds = &ds_[slot(c, -m)];
        ops.push_back([this, ds](const Monomial& x, const Rational& v, Element& out) { alg_->apply(*ds, x, v, out); });
      }
      std::vector<std::pair<const GeneratorMap*, Rational>> parts{{&R_[slot(c, m)], Rational(1)}};
      for (int e = 0; e < alg_->dim(); ++e)
        if (sgn(g.theta(e, c)) != 0)
          parts.push_back({&ads_[slot(e, -m)], g.theta(e, c)});
      ops.push_back([this, parts](const Monomial& x, const Rational& v, Element& out) {
        for (const auto& [map, f] : parts)
          alg_->apply(*map, x, v * f, out);
      });
    }
  return ops;
}

SparseRationalMatrix metric_adjoint(const KoszulAlgebra& alg, const SparseRationalMatrix& m, const KoszulSlice& src,
                                    const KoszulSlice& tgt)
{
  std::vector<Rational> gs, gt;
  for (const auto& x : src.basis)
    gs.push_back(alg.metric(x));
  for (const auto& x : tgt.basis)
    gt.push_back(alg.metric(x));
  SparseRationalMatrix r(src.dim(), tgt.dim());
  for (int j = 0; j < m.rows(); ++j)
    for (const auto& [i, v] : m.row(j))
      r.add(i, j, v * gt[std::size_t(j)] / gs[std::size_t(i)]);
  return r;
}

namespace {

KoszulSlice neighbour(const KoszulAlgebra& alg, const KoszulSlice& s, int degree)
{
  return make_slice(alg, s.kind, degree, s.s_weight, s.z_weight, s.torus,
                    degree < 0 ? std::vector<Monomial>{}
                               : enumerate_monomials(alg, degree, s.s_weight, s.z_weight, &s.torus,
                                                     std::numeric_limits<std::size_t>::max()));
}

} // namespace

SparseRationalMatrix operator_matrix(const OperatorAlgebra& ops, const OperatorKind& kind, const KoszulSlice& src,
                                     const KoszulSlice& tgt)
{
  if (src.kind == ComplexKind::Truncated)
    throw OperatorDomainError("Laplacian operators act on restricted or full slices only");
  const KoszulAlgebra& alg = ops.algebra();
  auto dbar_op = ops.generator({OpTag::Dbar, 0, 0});
  if (kind.tag == OpTag::DbarStar)
    return metric_adjoint(alg, operator_matrix(tgt, src, dbar_op), tgt, src);
  if (kind.tag == OpTag::Boxbar) {
    const KoszulSlice below = neighbour(alg, src, src.degree - 1), above = neighbour(alg, src, src.degree + 1);
    const SparseRationalMatrix d_in = operator_matrix(below, src, dbar_op);
    const SparseRationalMatrix d_out = operator_matrix(src, above, dbar_op);
    return d_in * metric_adjoint(alg, d_in, below, src) + metric_adjoint(alg, d_out, src, above) * d_out;
  }
  return operator_matrix(src, tgt, ops.generator(kind));
}

bool check_adjoint_pair(const OperatorAlgebra& ops, const OperatorKind& p, const KoszulSlice& src,
                        const KoszulSlice& tgt)
{
  OperatorKind q = p;
  switch (p.tag) {
  case OpTag::Ad:
    q.tag = OpTag::AdStar;
    break;
  case OpTag::R:
    q.tag = OpTag::RStar;
    break;
  case OpTag::D:
    q.tag = OpTag::DStar;
    break;
  default:
    throw OperatorDomainError("adjointness is checked for ad, R and d generators");
  }
  const SparseRationalMatrix mp = operator_matrix(src, tgt, ops.generator(p));
  const SparseRationalMatrix mq = operator_matrix(tgt, src, ops.generator(q));
  return mq == metric_adjoint(ops.algebra(), mp, src, tgt);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json first_difference(const KoszulAlgebra& alg, const KoszulSlice& s, const SparseRationalMatrix& lhs,
                      const SparseRationalMatrix& rhs, const std::string& identity)
{
  const SparseRationalMatrix diff = lhs - rhs;
  for (int i = 0; i < diff.rows(); ++i)
    if (!diff.row(i).empty()) {
      const auto& [j, v] = *diff.row(i).begin();
      (void)v;
      return Json{{"identity", identity},
                  {"degree", s.degree},
                  {"s_weight", s.s_weight},
                  {"z_weight", s.z_weight},
                  {"torus", s.torus.str()},
                  {"row", alg.str(s.basis[std::size_t(i)])},
                  {"column", alg.str(s.basis[std::size_t(j)])},
                  {"lhs", lhs.get(i, j).get_str()},
                  {"rhs", rhs.get(i, j).get_str()}};
    }
  return Json();
}

struct NakanoGroup {
  int p = 0, w = 0;
  Weight torus;
  std::vector<std::vector<Monomial>> by_degree;
};

struct NakanoResult {
  long slices = 0, invariant_slices = 0;
  std::size_t max_bits = 0;
  Json failure;
};

} // namespace

Report verify_nakano(const RootSystem& rs, int z_bound, int p_bound)
{
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "verify-nakano";
  rep.params = {{"type", rs.name}, {"weight_bound", z_bound}, {"p_bound", p_bound}};
  if (z_bound > 0 || p_bound < 0)
    throw DomainError("need weight bound <= 0 and p bound >= 0");
  const LieAlgebra g = build_lie_algebra(rs);
  const KoszulAlgebra alg = restricted_algebra(g, -z_bound);
  const OperatorAlgebra ops(alg);
  const std::size_t cap = slice_cap();

  // full slices, grouped by torus weight
  std::vector<NakanoGroup> groups;
  try {
    for (int p = 0; p <= p_bound; ++p)
      for (int w = 0; w >= z_bound; --w) {
        const int kmax = max_odd_degree(alg, w);
        std::map<Weight, std::vector<std::vector<Monomial>>> bucket;
        for (int k = 0; k <= kmax; ++k)
          for (Monomial& m : enumerate_monomials(alg, k, p, w, nullptr, std::numeric_limits<std::size_t>::max())) {
            auto& b = bucket[alg.torus_weight(m)];
            b.resize(std::size_t(kmax + 1));
            b[std::size_t(k)].push_back(std::move(m));
          }
        for (auto& [mu, slices] : bucket) {
          for (std::size_t k = 0; k < slices.size(); ++k)
            if (slices[k].size() > cap)
              throw CapacityError("full slice (degree " + std::to_string(k) + ", symmetric degree " +
                                  std::to_string(p) + ", z-weight " + std::to_string(w) + ", torus " + mu.str() +
                                  ") exceeds the cap of " + std::to_string(cap) + " monomials");
          groups.push_back({p, w, mu, std::move(slices)});
        }
      }
  } catch (const CapacityError& e) {
    rep.status = "CAPACITY";
    rep.first_mismatch = Json{{"capacity", e.what()}};
    rep.wall_time_ms = ms_since(t0);
    return rep;
  }

  auto dbar_op = ops.generator({OpTag::Dbar, 0, 0});
  auto box_op = ops.generator({OpTag::Box, 0, 0});
  auto D_op = ops.generator({OpTag::Dop, 0, 0});
  auto K_op = ops.generator({OpTag::K, 0, 0});
  std::vector<NakanoResult> results(groups.size());
  parallel_for(groups.size(), [&](std::size_t gi) {
    const NakanoGroup& grp = groups[gi];
    NakanoResult& res = results[gi];
    const int top = int(grp.by_degree.size()) - 1;
    std::vector<KoszulSlice> s;
    for (int k = 0; k <= top + 1; ++k)
      s.push_back(make_slice(alg, ComplexKind::Full, k, grp.p, grp.w, grp.torus,
                             k <= top ? grp.by_degree[std::size_t(k)] : std::vector<Monomial>{}));
    std::vector<SparseRationalMatrix> d, ds;
    for (int k = 0; k <= top; ++k) {
      d.push_back(operator_matrix(s[std::size_t(k)], s[std::size_t(k + 1)], dbar_op));
      ds.push_back(metric_adjoint(alg, d.back(), s[std::size_t(k)], s[std::size_t(k + 1)]));
    }
    for (int k = 0; k <= top; ++k) {
      const KoszulSlice& sk = s[std::size_t(k)];
      if (sk.dim() == 0)
        continue;
      ++res.slices;
      SparseRationalMatrix boxbar = ds[std::size_t(k)] * d[std::size_t(k)];
      if (k > 0)
        boxbar = boxbar + d[std::size_t(k - 1)] * ds[std::size_t(k - 1)];
      const SparseRationalMatrix box = operator_matrix(sk, sk, box_op);
      const SparseRationalMatrix Dm = operator_matrix(sk, sk, D_op);
      const SparseRationalMatrix Km = operator_matrix(sk, sk, K_op);
      const SparseRationalMatrix rhs = box + Dm + Km;
      res.max_bits = std::max({res.max_bits, boxbar.max_entry_bits(), rhs.max_entry_bits()});
      if (!(boxbar == rhs)) {
        if (res.failure.is_null())
          res.failure = first_difference(alg, sk, boxbar, rhs, "boxbar = box + D + K");
        continue;
      }
      if (grp.torus.is_zero()) {
        const SparseRationalMatrix V = invariant_basis(alg, sk.basis);
        if (V.cols() == 0)
          continue;
        ++res.invariant_slices;
        const SparseRationalMatrix kv = Km * V;
        if (!kv.is_zero() && res.failure.is_null())
          res.failure = first_difference(alg, sk, Km, SparseRationalMatrix(Km.rows(), Km.cols()),
                                         "K = 0 on invariants");
        const SparseRationalMatrix lhs = boxbar * V, r2 = (box + Dm) * V;
        if (!(lhs == r2) && res.failure.is_null())
          res.failure = Json{{"identity", "boxbar = box + D on invariants"}, {"degree", k}, {"s_weight", grp.p},
                             {"z_weight", grp.w}};
      }
    }
  });
  long slices = 0, inv = 0;
  std::size_t bits = 0;
  for (const auto& r : results) {
    slices += r.slices;
    inv += r.invariant_slices;
    bits = std::max(bits, r.max_bits);
    if (!r.failure.is_null())
      rep.fail(r.failure);
  }
  rep.details["full_slices"] = slices;
  rep.details["invariant_slices"] = inv;
  rep.details["max_entry_bits"] = bits;
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Rational InvariantPolynomial::operator()(std::vector<int> slots) const
{
  std::sort(slots.begin(), slots.end());
  auto it = values.find(slots);
  return it == values.end() ? Rational(0) : it->second;
}

namespace {

void sorted_multisets(int n, int size, int start, std::vector<int>& cur, const std::function<void()>& f)
{
  if (int(cur.size()) == size) {
    f();
    return;
  }
  for (int a = start; a < n; ++a) {
    cur.push_back(a);
    sorted_multisets(n, size, a, cur, f);
    cur.pop_back();
  }
}

Rational factorial(int n)
{
  Rational r = 1;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

// (number of distinct orderings of the multiset v) = |v|! / prod mult!
Rational orderings(const std::vector<int>& v)
{
  Rational r = factorial(int(v.size()));
  std::size_t run = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    run = (i > 0 && v[i] == v[i - 1]) ? run + 1 : 1;
    r /= int(run);
  }
  return r;
}

} // namespace

std::vector<InvariantPolynomial> primitive_invariants(const LieAlgebra& g, int max_exponent)
{
  // the Pfaffian of D_r sits at exponent r - 1 and is not a trace
  if (g.rs.family == Family::D && max_exponent >= g.rs.rank - 1)
    throw DegreeError("the Pfaffian invariant of " + g.rs.name + " is not a trace; unsupported");
  std::vector<InvariantPolynomial> out;
  for (int m : g.rs.exponents) {
    if (m > max_exponent)
      continue;
    InvariantPolynomial phi;
    phi.exponent = m;
    phi.degree = m + 1;
    std::vector<int> cur;
    sorted_multisets(g.dim, m + 1, 0, cur, [&] {
      Weight w = Weight::zero(g.rs.ss_rank);
      for (int a : cur)
        w = w + g.weights[std::size_t(a)];
      if (!w.is_zero())
        return;
      Rational v = symmetrized_trace(g, cur);
      if (sgn(v) != 0)
        phi.values[cur] = v;
    });
    out.push_back(std::move(phi));
  }
  return out;
}

bool is_ad_invariant(const LieAlgebra& g, const InvariantPolynomial& phi)
{
  // sum over slots of phi(..., [u_x, u_{b_i}], ...) = 0 for every x and every slot multiset
  bool ok = true;
  std::vector<int> cur;
  for (int x = 0; x < g.dim && ok; ++x)
    sorted_multisets(g.dim, phi.degree, 0, cur, [&] {
      if (!ok)
        return;
      Rational s = 0;
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (const Term& t : g.bracket[std::size_t(x)][std::size_t(cur[i])]) {
          std::vector<int> v = cur;
          v[i] = t.index;
          s += t.coeff * phi(v);
        }
      if (sgn(s) != 0)
        ok = false;
    });
  return ok;
}

namespace {

void check_degree(const KoszulAlgebra& alg, const InvariantPolynomial& phi)
{
  const auto& ex = alg.lie().rs.exponents;
  if (phi.degree != phi.exponent + 1 || std::find(ex.begin(), ex.end(), phi.exponent) == ex.end())
    throw DegreeError("invariant of degree " + std::to_string(phi.degree) + " does not match an exponent of " +
                      alg.lie().rs.name);
}

} // namespace

Element build_S_cocycle(const KoszulAlgebra& alg, const InvariantPolynomial& phi, int n)
{
  if (n < 0)
    throw DegreeError("S cocycles need n >= 0");
  check_degree(alg, phi);
  Element e;
  for (const Monomial& m :
       enumerate_monomials(alg, 0, phi.degree, -n, nullptr, std::numeric_limits<std::size_t>::max())) {
    std::vector<int> slots;
    for (int k : m.even)
      slots.push_back(alg.index_of(k));
    const Rational v = phi(slots);
    if (sgn(v) != 0)
      accumulate(e, m, v * orderings(m.even));
  }
  return e;
}

Element build_E_cocycle(const KoszulAlgebra& alg, const InvariantPolynomial& phi, int n)
{
  if (n < 1)
    throw DegreeError("E cocycles need n >= 1");
  check_degree(alg, phi);
  Element e;
  for (const Monomial& m :
       enumerate_monomials(alg, 1, phi.degree - 1, -n, nullptr, std::numeric_limits<std::size_t>::max())) {
    std::vector<int> slots{alg.index_of(m.odd[0])};
    for (int k : m.even)
      slots.push_back(alg.index_of(k));
    const Rational v = phi(slots);
    if (sgn(v) != 0)
      accumulate(e, m, v * alg.depth_of(m.odd[0]) * orderings(m.even));
  }
  return e;
}

namespace {

SparseRationalMatrix columns_matrix(int rows, const std::vector<std::vector<Rational>>& cols)
{
  SparseRationalMatrix m(rows, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i)
      if (sgn(cols[j][std::size_t(i)]) != 0)
        m.add(i, int(j), cols[j][std::size_t(i)]);
  return m;
}

std::vector<std::vector<Rational>> matrix_columns(const SparseRationalMatrix& m)
{
  std::vector<std::vector<Rational>> cols(std::size_t(m.cols()), std::vector<Rational>(std::size_t(m.rows())));
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i))
      cols[std::size_t(j)][std::size_t(i)] = v;
  return cols;
}

// V · ker(M V): the joint kernel inside the span of V's columns
SparseRationalMatrix kernel_within(const SparseRationalMatrix& M, const SparseRationalMatrix& V)
{
  const auto ker = nullspace(M * V);
  return V * columns_matrix(V.cols(), ker);
}

bool kills(const KoszulAlgebra& alg, const std::vector<MonomialOp>& ops, const Element& e)
{
  (void)alg;
  for (const MonomialOp& op : ops) {
    Element out;
    for (const auto& [m, c] : e)
      op(m, c, out);
    prune(out);
    if (!out.empty())
      return false;
  }
  return true;
}

} // namespace

std::vector<std::vector<Rational>> harmonic_basis(const OperatorAlgebra& ops, const KoszulSlice& slice)
{
  if (slice.kind == ComplexKind::Truncated)
    throw OperatorDomainError("harmonic forms are defined on restricted slices");
  const KoszulAlgebra& alg = ops.algebra();
  const SparseRationalMatrix V = slice.invariant_projected ? slice.invariants : invariant_basis(alg, slice.basis);
  return matrix_columns(kernel_within(image_matrix(slice.basis, ops.harmonic_family()), V));
}

Element relabel(const KoszulAlgebra& from, const KoszulAlgebra& to, const Element& e)
{
  Element out;
  for (const auto& [m, c] : e) {
    Monomial y;
    Rational f = c;
    for (int k : m.odd) {
      const int depth = from.depth_of(k);
      y.odd.push_back(to.key(from.index_of(k), depth - 1));
      f /= depth;
    }
    for (int k : m.even)
      y.even.push_back(to.key(from.index_of(k), from.depth_of(k)));
    accumulate(out, y, f);
  }
  return out;
}

std::vector<MonomialOp> current_algebra_family(const KoszulAlgebra& rel)
{
  std::vector<MonomialOp> ops;
  for (int m = 0; m <= rel.max_depth(); ++m)
    for (int c = 0; c < rel.dim(); ++c) {
      const SparseVector uc{{c, Rational(1)}};
      auto even = std::make_shared<Derivation>();
      even->parts.push_back({rel.coadjoint(uc, m, true), Rational(1)});
      even->parts.push_back({rel.coadjoint(uc, m, false), Rational(1)});
      auto odd = std::make_shared<Derivation>();
      odd->parts.push_back({rel.s_map(uc, m), Rational(1)});
      const KoszulAlgebra* A = &rel;
      ops.push_back([A, even](const Monomial& x, const Rational& v, Element& out) { A->apply(*even, x, v, out); });
      ops.push_back([A, odd](const Monomial& x, const Rational& v, Element& out) { A->apply(*odd, x, v, out); });
    }
  return ops;
}

namespace {

struct ProductGenerator {
  Element e;
  int degree = 0, p = 0, w = 0;
  std::string name;
};

} // namespace

Report verify_harmonic(const RootSystem& rs, int z_bound, int p_bound)
{
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "verify-harmonic";
  rep.params = {{"type", rs.name}, {"weight_bound", z_bound}, {"p_bound", p_bound}};
  if (z_bound > 0 || p_bound < 0)
    throw DomainError("need weight bound <= 0 and p bound >= 0");
  const LieAlgebra g = build_lie_algebra(rs);
  constexpr int kCocycleOrder = 6;
  const int span = std::max(-z_bound, kCocycleOrder);
  const KoszulAlgebra alg = restricted_algebra(g, span);
  const KoszulAlgebra rel = relabeled_algebra(g, span);
  const OperatorAlgebra ops(alg);
  const auto family = ops.harmonic_family();
  const auto current = current_algebra_family(rel);
  auto dbar_op = ops.generator({OpTag::Dbar, 0, 0});

  // S and E cocycles: closed and harmonic for n <= 6
  const auto invariants = primitive_invariants(g, p_bound);
  long cocycles = 0, closed = 0, harmonic = 0, invariant_forms = 0;
  std::vector<ProductGenerator> gens;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    const InvariantPolynomial& phi = invariants[i];
    invariant_forms += is_ad_invariant(g, phi);
    if (!is_ad_invariant(g, phi))
      rep.fail(Json{{"what", "invariant polynomial is not ad-invariant"}, {"degree", phi.degree}});
    for (int n = 0; n <= kCocycleOrder; ++n)
      for (int odd = 0; odd < 2; ++odd) {
        if (odd && n == 0)
          continue;
        Element e = odd ? build_E_cocycle(alg, phi, n) : build_S_cocycle(alg, phi, n);
        const std::string name = std::string(odd ? "E" : "S") + "_" + std::to_string(phi.exponent) + "(-" +
                                 std::to_string(n) + ")";
        ++cocycles;
        const bool c = kills(alg, {dbar_op}, e), h = kills(alg, family, e);
        closed += c;
        harmonic += h;
        if (!c || !h)
          rep.fail(Json{{"what", "cocycle"}, {"name", name}, {"closed", c}, {"harmonic", h}});
        const int p = odd ? phi.degree - 1 : phi.degree;
        if (e.empty() || p > p_bound || -n < z_bound)
          continue;
        gens.push_back({std::move(e), odd, p, -n, name});
      }
  }
  rep.details["cocycles"] = Json{{"checked", cocycles}, {"closed", closed}, {"harmonic", harmonic},
                                 {"invariant_polynomials", invariant_forms}};

  // all products of generators inside the bounds, bucketed by (degree, p, w)
  std::map<std::tuple<int, int, int>, std::vector<Element>> products;
  {
    Element one;
    accumulate(one, Monomial{}, Rational(1));
    std::function<void(std::size_t, const Element&, int, int, int)> grow = [&](std::size_t start, const Element& e,
                                                                            int k, int p, int w) {
      products[{k, p, w}].push_back(e);
      for (std::size_t j = start; j < gens.size(); ++j) {
        const ProductGenerator& x = gens[j];
        if (p + x.p > p_bound || w + x.w < z_bound)
          continue;
        Element next = alg.product(e, x.e);
        if (next.empty())
          continue;
        grow(x.degree == 1 ? j + 1 : j, next, k + x.degree, p + x.p, w + x.w);
      }
    };
    grow(0, one, 0, 0, 0);
  }

  std::vector<SliceColumn> cols;
  try {
    cols = restricted_columns(alg, z_bound, p_bound);
  } catch (const CapacityError& e) {
    rep.status = "CAPACITY";
    rep.first_mismatch = Json{{"capacity", e.what()}};
    rep.wall_time_ms = ms_since(t0);
    return rep;
  }

  struct Task {
    std::size_t col;
    int k;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int k = 0; k <= cols[c].kmax; ++k)
      tasks.push_back({c, k});
  struct Outcome {
    SliceRecord rec;
    bool hodge = true, closed = true, coclosed = true, generated = true, relabel_kernel = true,
         relabel_dim = true;
    long products = 0;
  };
  std::vector<Outcome> outcomes(tasks.size());
  const Weight zero = Weight::zero(g.rs.ss_rank);
  parallel_for(tasks.size(), [&](std::size_t ti) {
    const SliceColumn& col = cols[tasks[ti].col];
    const int k = tasks[ti].k;
    const KoszulSlice& s = col.slices[std::size_t(k)];
    Outcome& o = outcomes[ti];
    const long h = col.h_rel[std::size_t(k)];
    const SparseRationalMatrix H = kernel_within(image_matrix(s.basis, family), s.invariants);
    o.rec = {k, col.w, col.p, s.invariants.cols(), h, long(H.cols())};
    const long r_in = k > 0 ? col.rank_rel[std::size_t(k - 1)] : 0;
    const long r_out = col.rank_rel[std::size_t(k)];
    o.hodge = long(s.invariants.cols()) == r_in + r_out + H.cols();
    if (H.cols() == 0 && h == 0) {
      o.generated = products.count({k, col.p, col.w}) == 0 ||
                    std::all_of(products[{k, col.p, col.w}].begin(), products[{k, col.p, col.w}].end(),
                                [](const Element& e) { return e.empty(); });
      return;
    }
    o.closed = (s.matrices.at("d") * H).is_zero();
    if (k > 0) {
      const KoszulSlice& below = col.slices[std::size_t(k - 1)];
      o.coclosed = (metric_adjoint(alg, below.matrices.at("d"), below, s) * H).is_zero();
    }
    // products of S and E span the harmonic space
    std::vector<std::vector<Rational>> pv;
    auto it = products.find({k, col.p, col.w});
    if (it != products.end())
      for (const Element& e : it->second)
        pv.push_back(s.coordinates(e));
    o.products = long(pv.size());
    const SparseRationalMatrix P = columns_matrix(s.dim(), pv);
    const int rp = observed_rank(P.transpose());
    SparseRationalMatrix both(s.dim(), P.cols() + H.cols());
    for (int i = 0; i < s.dim(); ++i) {
      for (const auto& [j, v] : P.row(i))
        both.add(i, j, v);
      for (const auto& [j, v] : H.row(i))
        both.add(i, P.cols() + j, v);
    }
    o.generated = rp == H.cols() && rank_exact(both.transpose()) == H.cols();
    // relabelled harmonic forms are the g[z, s]-invariants
    for (const auto& v : matrix_columns(H))
      if (!kills(rel, current, relabel(alg, rel, s.element(v))))
        o.relabel_kernel = false;
    const auto rbasis = enumerate_monomials(rel, k, col.p, col.w + k, &zero, slice_cap());
    const SparseRationalMatrix RV = invariant_basis(rel, rbasis);
    o.relabel_dim = kernel_within(image_matrix(rbasis, current), RV).cols() == H.cols();
  });

  long nonzero = 0, hodge = 0, closed_h = 0, gen_ok = 0, relabel_ok = 0;
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const Outcome& o = outcomes[ti];
    rep.per_slice.push_back(o.rec);
    nonzero += o.rec.expected > 0;
    hodge += o.hodge;
    closed_h += o.closed && o.coclosed;
    gen_ok += o.generated;
    relabel_ok += o.relabel_kernel && o.relabel_dim;
    const auto where = Json{{"degree", o.rec.degree}, {"s_weight", o.rec.s_weight}, {"z_weight", o.rec.z_weight}};
    auto certificate = [&](const std::string& what) {
      Json j = where;
      j["what"] = what;
      j["harmonic_dim"] = o.rec.expected;
      j["cohom_dim"] = o.rec.cohom_dim;
      return j;
    };
    if (o.rec.expected != o.rec.cohom_dim)
      rep.fail(certificate("dim harmonic != dim cohomology"));
    if (!o.hodge)
      rep.fail(certificate("Hodge dimension identity"));
    if (!o.closed || !o.coclosed)
      rep.fail(certificate("harmonic form not closed and co-closed"));
    if (!o.generated)
      rep.fail(certificate("products of S and E do not span the harmonic space"));
    if (!o.relabel_kernel || !o.relabel_dim)
      rep.fail(certificate("relabelled harmonic forms differ from g[z,s]-invariants"));
  }
  rep.details["nonzero_harmonic_slices"] = nonzero;
  rep.details["hodge_identity"] = hodge;
  rep.details["closed_and_coclosed"] = closed_h;
  rep.details["generated_by_products"] = gen_ok;
  rep.details["relabelling"] = relabel_ok;
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

} // namespace maclab
