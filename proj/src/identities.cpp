#include "maclab/identities.hpp"

#include "maclab/characters.hpp"
#include "maclab/errors.hpp"
#include "maclab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>

namespace maclab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_simple(const RootSystem& rs)
{
  if (rs.is_reductive_only())
    throw UnsupportedCartanType(rs.name + " is not semisimple; the identities need a simple type");
}

void require_simply_laced(const RootSystem& rs)
{
  require_simple(rs);
  if (!rs.simply_laced())
    throw LacingError(rs.name + " is not simply laced");
}

void require_cutoffs(int nq, int nt)
{
  if (nq < 0 || nt < 0)
    throw DomainError("series cutoffs must be non-negative");
}

std::string point_str(const std::vector<Rational>& p)
{
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

template <class D>
Json table(const QTSeries<D>& s, int order)
{
  Json j = Json::object();
  if (order < 0)
    return j;
  const D& dom = s.domain();
  for (int q = 0; q <= std::min(order, s.nq_units()); ++q)
    for (int t = 0; t <= s.nt(); ++t)
      if (!dom.is_zero(s.at(t, q)))
        j["q^" + make_rational(q, s.qden()).get_str() + " t^" + std::to_string(t)] = dom.str(s.at(t, q));
  return j;
}

Json mismatch_json(const SeriesMismatch& m, const std::string& where)
{
  return Json{{"where", where},
              {"q_exponent", m.q_exponent.get_str()},
              {"t_exponent", m.t_exponent},
              {"lhs", m.lhs},
              {"rhs", m.rhs}};
}

// coefficient maps from Laurent polynomials
RationalFunctionA1 to_rf(const TorusLaurent& x)
{
  RationalFunctionA1 r;
  for (const auto& [w, c] : x.terms())
    r += RationalFunctionA1::monomial(w[0], Rational(c));
  return r;
}

template <class D>
QTSeries<D> from_laurent(const QTSeries<LaurentDomain>& s, const D& dom);

template <>
QTSeries<RFDomain> from_laurent(const QTSeries<LaurentDomain>& s, const RFDomain& dom)
{
  return s.map_coeffs(dom, [](const TorusLaurent& x) { return to_rf(x); });
}

template <>
QTSeries<TorusPointDomain> from_laurent(const QTSeries<LaurentDomain>& s, const TorusPointDomain& dom)
{
  return s.map_coeffs(dom, [&](const TorusLaurent& x) { return x.evaluate(dom.point); });
}

template <class D>
QTSeries<D> from_rational(const QTSeries<RationalDomain>& s, const D& dom);

template <>
QTSeries<RFDomain> from_rational(const QTSeries<RationalDomain>& s, const RFDomain& dom)
{
  return s.map_coeffs(dom, [](const Rational& x) { return RationalFunctionA1::constant(x); });
}

template <>
QTSeries<TorusPointDomain> from_rational(const QTSeries<RationalDomain>& s, const TorusPointDomain& dom)
{
  return s.map_coeffs(dom, [](const Rational& x) { return x; });
}

// prod_{n>0, alpha} (1 - t q^{(n+<alpha|gamma>)/d} e^alpha)/(1 - q^{(n+<alpha|gamma>)/d} e^alpha), in units of 1/d
std::vector<AffineFactor> root_factors(const RootSystem& rs, const std::vector<int>& gamma, int qden, int nq_units)
{
  std::vector<AffineFactor> f;
  for (const Weight& a : rs.roots()) {
    const int p = pairing(rs, a, gamma);
    for (int n = 1; n + p <= nq_units; ++n) {
      const Rational j = make_rational(n + p, qden);
      f.push_back(AffineFactor{1, 1, j, a, Rational(1)});
      f.push_back(AffineFactor{-1, 0, j, a, Rational(1)});
    }
  }
  return f;
}

// prod over (t_power, q_from, sign) families of (1 - t^a q^n)^sign for n >= q_from
QTSeries<RationalDomain> scalar_product(const std::vector<std::tuple<int, int, int>>& families, int nq, int nt)
{
  std::vector<AffineFactor> f;
  for (const auto& [a, from, sign] : families)
    for (int n = from; n <= nq; ++n)
      if (a > 0 || n > 0)
        f.push_back(AffineFactor{sign, a, Rational(n), Weight(), Rational(1)});
  return truncated_product(RationalDomain{}, f, 1, nq, nt);
}

} // namespace

std::vector<std::vector<Rational>> torus_points(const RootSystem& rs, std::uint64_t seed, int count)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 7);
  std::vector<std::vector<Rational>> out;
  while (int(out.size()) < count) {
    std::vector<Rational> p;
    for (int i = 0; i < rs.ss_rank; ++i) {
      Rational u(num(rng), den(rng));
      u.canonicalize();
      p.push_back(u);
    }
    if (std::any_of(p.begin(), p.end(), [](const Rational& u) { return sgn(u) == 0; }))
      continue;
    bool pole = false;
    for (const Weight& a : rs.roots())
      pole = pole || torus_monomial_value(a, p) == 1;
    if (pole || std::find(out.begin(), out.end(), p) != out.end())
      continue;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CorootPoint> level0_translates(const RootSystem& rs, int nq_units, int nt)
{
  // Each flipped pair (j < 0) expands as (t - x)/(1 - x), x = q^{-j}·..., so it costs one t or at
  // least |j| powers of q.  Keep gamma when the cheapest selection fits the window.
  const long bound = long(nt) + nq_units + long(rs.positive_roots.size());
  std::vector<CorootPoint> out;
  for (CorootPoint& g : coroot_translates(rs, TranslateMode::Level0Flips, bound)) {
    std::vector<int> costs;
    for (const Weight& a : rs.roots()) {
      const int p = pairing(rs, a, g.coords);
      for (int n = 1; n + p < 0; ++n)
        costs.push_back(-(n + p));
    }
    std::sort(costs.begin(), costs.end());
    long need = long(costs.size()) - nt, q = 0;
    for (long i = 0; i < need; ++i)
      q += costs[std::size_t(i)];
    if (need <= 0 || q <= nq_units)
      out.push_back(std::move(g));
  }
  return out;
}

template <class D>
QTSeries<D> psi_sum(const RootSystem& rs, const D& dom, const std::vector<CorootPoint>& gammas, int nq, int nt)
{
  std::vector<QTSeries<D>> parts(gammas.size(), QTSeries<D>(dom, 1, nq, nt));
  parallel_for(gammas.size(), [&](std::size_t i) {
    parts[i] = truncated_product(dom, root_factors(rs, gammas[i].coords, 1, nq), 1, nq, nt);
  });
  QTSeries<D> s(dom, 1, nq, nt);
  for (const auto& p : parts)
    s += p;
  return s;
}

template QTSeries<RFDomain> psi_sum(const RootSystem&, const RFDomain&, const std::vector<CorootPoint>&, int, int);
template QTSeries<TorusPointDomain> psi_sum(const RootSystem&, const TorusPointDomain&,
                                            const std::vector<CorootPoint>&, int, int);

namespace {

template <class D>
QTSeries<D> with_cartan_factor(const RootSystem& rs, const D& dom, QTSeries<D> s, int nq, int nt)
{
  const auto c = scalar_product({{1, 1, 1}, {0, 1, -1}}, nq, nt);
  for (int k = 0; k < rs.rank; ++k)
    s = s * from_rational(c, dom);
  return s;
}

} // namespace

QTSeries<RFDomain> kac_E_series(const RootSystem& rs, int nq, int nt)
{
  require_simple(rs);
  require_cutoffs(nq, nt);
  if (rs.ss_rank != 1)
    throw DomainError("symbolic series need rank one; pass a torus point");
  const RFDomain dom;
  return with_cartan_factor(rs, dom, psi_sum(rs, dom, level0_translates(rs, nq, nt), nq, nt), nq, nt);
}

QTSeries<TorusPointDomain> kac_E_series(const RootSystem& rs, int nq, int nt, const std::vector<Rational>& point)
{
  require_simple(rs);
  require_cutoffs(nq, nt);
  const TorusPointDomain dom{point};
  return with_cartan_factor(rs, dom, psi_sum(rs, dom, level0_translates(rs, nq, nt), nq, nt), nq, nt);
}

QTSeries<RationalDomain> psi_product(const RootSystem& rs, int nq, int nt, bool perturb)
{
  std::vector<std::tuple<int, int, int>> fam;
  for (std::size_t k = 0; k < rs.exponents.size(); ++k) {
    const int m = rs.exponents[k];
    const int top = perturb && k == 0 ? m + 2 : m + 1;
    fam.push_back({0, 1, 1});
    fam.push_back({top, 1, 1});
    fam.push_back({1, 1, -1});
    fam.push_back({m, 0, -1});
  }
  return scalar_product(fam, nq, nt);
}

namespace {

// Compares lhs with rhs at one evaluation domain; returns the mismatch certificate or null.
template <class D>
Json compare(const QTSeries<D>& lhs, const QTSeries<D>& rhs, const std::string& where)
{
  if (auto m = lhs.equal_up_to(rhs))
    return mismatch_json(*m, where);
  return Json();
}

template <class D>
QTSeries<D> rhs_in(const QTSeries<RationalDomain>& r, const D& dom)
{
  return from_rational(r, dom);
}

} // namespace

Report verify_1psi1(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simple(rs);
  require_cutoffs(nq, nt);
  Report rep;
  rep.check = "verify-1psi1";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}};
  const auto gammas = level0_translates(rs, nq, nt);
  const auto rhs = psi_product(rs, nq, nt, opt.perturb);
  rep.details["gamma_count"] = gammas.size();
  rep.details["flip_bound"] = long(nt) + nq + long(rs.positive_roots.size());
  rep.details["rhs"] = table(rhs, opt.dump_order);
  bool constant = true;
  if (rs.ss_rank == 1) {
    const RFDomain dom;
    const auto lhs = psi_sum(rs, dom, gammas, nq, nt);
    for (int t = 0; t <= nt; ++t)
      for (int q = 0; q <= nq; ++q)
        constant = constant && lhs.at(t, q).reduced().is_constant();
    rep.details["mode"] = "symbolic_rank1";
    rep.details["lhs"] = table(lhs, opt.dump_order);
    Json m = compare(lhs, rhs_in(rhs, dom), "symbolic");
    if (!m.is_null())
      rep.fail(m);
  } else {
    rep.details["mode"] = "torus_points";
  }
  // evaluated route, also for rank one so both routes are seen to agree
  const auto points = torus_points(rs, opt.seed, opt.points);
  Json pts = Json::array();
  std::vector<QTSeries<TorusPointDomain>> values;
  bool evaluated_ok = true;
  for (const auto& p : points) {
    pts.push_back(point_str(p));
    const TorusPointDomain dom{p};
    values.push_back(psi_sum(rs, dom, gammas, nq, nt));
    Json m = compare(values.back(), rhs_in(rhs, dom), "point " + point_str(p));
    evaluated_ok = evaluated_ok && m.is_null();
    if (!m.is_null())
      rep.fail(m);
  }
  for (std::size_t i = 1; i < values.size(); ++i)
    for (int t = 0; t <= nt; ++t)
      for (int q = 0; q <= nq; ++q)
        constant = constant && values[i].at(t, q) == values[0].at(t, q);
  if (rs.ss_rank == 1) {
    rep.details["evaluated_route_agrees"] = evaluated_ok;
  } else {
    rep.params["seed"] = opt.seed;
    rep.details["points"] = pts;
  }
  rep.details["torus_constant"] = constant;
  if (!constant)
    rep.fail(Json{{"where", "torus constancy"}, {"what", "left side depends on the torus point"}});
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report weyl_denominator_check(const RootSystem& rs, int nq, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simple(rs);
  require_cutoffs(nq, 0);
  Report rep;
  rep.check = "weyl-denominator";
  rep.params = {{"type", rs.name}, {"nq", nq}};
  const auto weyl = weyl_elements(rs);
  const auto gammas = coroot_translates(rs, TranslateMode::Level0Flips, 2 * long(rs.positive_roots.size()));
  long checked = 0;
  for (const auto& p : torus_points(rs, opt.seed, opt.points)) {
    const TorusPointDomain dom{p};
    for (const CorootPoint& g : gammas) {
      QTSeries<TorusPointDomain> s(dom, 1, nq, 0);
      for (const WeylElement& w : weyl) {
        std::vector<AffineFactor> f;
        for (const Weight& a : rs.positive_roots) {
          const Weight wa = w.apply(a);
          f.push_back(AffineFactor{-1, 0, Rational(pairing(rs, wa, g.coords)), wa, Rational(1)});
        }
        s += truncated_product(dom, f, 1, nq, 0);
      }
      ++checked;
      if (auto m = s.equal_up_to(QTSeries<TorusPointDomain>::one(dom, 1, nq, 0))) {
        Json c = mismatch_json(*m, "point " + point_str(p));
        c["gamma"] = g.coords;
        rep.fail(c);
      }
    }
  }
  rep.details["weyl_order"] = weyl.size();
  rep.details["gamma_count"] = gammas.size();
  rep.details["evaluations"] = checked;
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report gamma_stability_check(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simple(rs);
  require_cutoffs(nq, nt);
  Report rep;
  rep.check = "gamma-stability";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}};
  const auto gammas = level0_translates(rs, nq, nt);
  int top = 0;
  for (const auto& g : gammas)
    top = std::max(top, g.flip_count);
  // the next attained flip count beyond the truncation
  int next = std::numeric_limits<int>::max();
  for (const auto& g : coroot_translates(rs, TranslateMode::Level0Flips, top + 2 * long(rs.positive_roots.size())))
    if (g.flip_count > top)
      next = std::min(next, g.flip_count);
  const auto wider = coroot_translates(rs, TranslateMode::Level0Flips, next);
  rep.details["gamma_count"] = gammas.size();
  rep.details["wider_count"] = wider.size();
  for (const auto& p : torus_points(rs, opt.seed, opt.points)) {
    const TorusPointDomain dom{p};
    Json m = compare(psi_sum(rs, dom, gammas, nq, nt), psi_sum(rs, dom, wider, nq, nt), "point " + point_str(p));
    if (!m.is_null())
      rep.fail(m);
  }
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

QTSeries<RationalDomain> constant_term(const RootSystem& rs, const QTSeries<LaurentDomain>& s)
{
  return s.map_coeffs(RationalDomain{},
                      [&](const TorusLaurent& x) { return Rational(long(invariant_multiplicity(rs, x))); });
}

QTSeries<LaurentDomain> koszul_factor(const RootSystem& rs, int nq, int nt)
{
  std::vector<Weight> weights = rs.roots();
  for (int k = 0; k < rs.rank; ++k)
    weights.push_back(Weight::zero(rs.ss_rank));
  std::vector<AffineFactor> f;
  for (int n = 1; n <= nq; ++n)
    for (const Weight& mu : weights) {
      f.push_back(AffineFactor{1, 0, Rational(n), mu, Rational(1)});
      f.push_back(AffineFactor{-1, 1, Rational(n), mu, Rational(1)});
    }
  return truncated_product(LaurentDomain{rs.ss_rank}, f, 1, nq, nt);
}

Report verify_macdonald_ct(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simple(rs);
  require_cutoffs(nq, nt);
  Report rep;
  rep.check = "verify-macdonald-ct";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}};
  const auto lhs = constant_term(rs, koszul_factor(rs, nq, nt));
  std::vector<std::tuple<int, int, int>> fam;
  for (std::size_t k = 0; k < rs.exponents.size(); ++k) {
    const int m = rs.exponents[k];
    fam.push_back({m, m + 1, 1});
    fam.push_back({opt.perturb && k == 0 ? m + 2 : m + 1, m + 1, -1});
  }
  const auto rhs = scalar_product(fam, nq, nt);
  rep.details["mode"] = "symbolic";
  rep.details["lhs"] = table(lhs, opt.dump_order);
  rep.details["rhs"] = table(rhs, opt.dump_order);
  Json m = compare(lhs, rhs, "constant term");
  if (!m.is_null())
    rep.fail(m);
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

QTSeries<LaurentDomain> basic_character(const RootSystem& rs, int nq, int nt, bool heisenberg)
{
  require_simply_laced(rs);
  require_cutoffs(nq, nt);
  const LaurentDomain dom{rs.ss_rank};
  QTSeries<LaurentDomain> s(dom, 1, nq, nt);
  for (const CorootPoint& g : coroot_translates(rs, TranslateMode::Level1Energy, nq)) {
    const int e = int(g.norm_half.get_num().get_si());
    s.at(0, e).add_term(rs.coroot_as_weight(g.coords), 1);
  }
  if (heisenberg)
    for (int k = 0; k < rs.rank; ++k)
      for (int n = 1; n <= nq; ++n)
        s.div_binomial(0, n, dom.one());
  return s;
}

namespace {

template <class D>
QTSeries<D> level1_lhs(const RootSystem& rs, const D& dom, int qden, int units, int nt)
{
  const auto gammas = coroot_translates(rs, TranslateMode::Level1Energy, units);
  std::vector<QTSeries<D>> parts(gammas.size(), QTSeries<D>(dom, qden, units, nt));
  parallel_for(gammas.size(), [&](std::size_t i) {
    const CorootPoint& g = gammas[i];
    auto s = truncated_product(dom, root_factors(rs, g.coords, qden, units), qden, units, nt);
    const int e = int(g.norm_half.get_num().get_si());
    const auto mono = dom.monomial(rs.coroot_as_weight(g.coords), Rational(1));
    s.mul_poly({{mono, 0, e}});
    parts[i] = std::move(s);
  });
  QTSeries<D> s(dom, qden, units, nt);
  for (const auto& p : parts)
    s += p;
  return s;
}

// prod_k prod_{n>0} (1 - t^{m_k+1} q^n)/(1 - t q^n) · theta, in units of 1/qden
QTSeries<LaurentDomain> level1_rhs(const RootSystem& rs, int qden, int units, int nt, bool perturb)
{
  auto theta = basic_character(rs, units, nt, false);
  const Weight zero = Weight::zero(rs.ss_rank);
  std::vector<AffineFactor> f;
  for (std::size_t k = 0; k < rs.exponents.size(); ++k) {
    const int m = rs.exponents[k];
    for (int n = 1; n <= units; ++n) {
      f.push_back(AffineFactor{1, perturb && k == 0 ? m + 2 : m + 1, Rational(n), zero, Rational(1)});
      f.push_back(AffineFactor{-1, 1, Rational(n), zero, Rational(1)});
    }
  }
  const LaurentDomain dom{rs.ss_rank};
  auto prod = truncated_product(dom, f, 1, units, nt);
  auto r = prod * theta;
  // reinterpret the units with denominator qden (q -> q^{1/qden})
  QTSeries<LaurentDomain> out(dom, qden, units, nt);
  for (int t = 0; t <= nt; ++t)
    for (int q = 0; q <= units; ++q)
      out.at(t, q) = r.at(t, q);
  return out;
}

} // namespace

Report verify_level1(const RootSystem& rs, int nq, int nt, int qden, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simply_laced(rs);
  require_cutoffs(nq, nt);
  if (qden < 1)
    throw DomainError("q-denominator must be positive");
  Report rep;
  rep.check = qden == 2 && rs.ss_rank == 1 ? "bailey-sl2" : "verify-level1";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}, {"qden", qden}};
  const int units = nq * qden;
  const auto rhs = level1_rhs(rs, qden, units, nt, opt.perturb);
  rep.details["energy_bound"] = units;
  rep.details["gamma_count"] = coroot_translates(rs, TranslateMode::Level1Energy, units).size();
  rep.details["rhs"] = table(rhs, opt.dump_order);
  if (rs.ss_rank == 1) {
    const RFDomain dom;
    const auto lhs = level1_lhs(rs, dom, qden, units, nt);
    rep.details["mode"] = "symbolic_rank1";
    rep.details["lhs"] = table(lhs, opt.dump_order);
    Json m = compare(lhs, from_laurent(rhs, dom), "symbolic");
    if (!m.is_null())
      rep.fail(m);
    // t^0 layer: every t-factor drops out and both sides are the theta series
    bool t0_ok = true;
    const auto theta = basic_character(rs, units, 0, false);
    for (int q = 0; q <= units; ++q)
      t0_ok = t0_ok && lhs.at(0, q) == to_rf(theta.at(0, q));
    rep.details["t0_layer"] = t0_ok;
    if (!t0_ok)
      rep.fail(Json{{"where", "t^0 layer"}, {"what", "left side differs from the theta series"}});
  } else {
    rep.details["mode"] = "torus_points";
  }
  Json pts = Json::array();
  bool evaluated_ok = true;
  for (const auto& p : torus_points(rs, opt.seed, opt.points)) {
    pts.push_back(point_str(p));
    const TorusPointDomain dom{p};
    Json m = compare(level1_lhs(rs, dom, qden, units, nt), from_laurent(rhs, dom), "point " + point_str(p));
    evaluated_ok = evaluated_ok && m.is_null();
    if (!m.is_null())
      rep.fail(m);
  }
  if (rs.ss_rank == 1) {
    rep.details["evaluated_route_agrees"] = evaluated_ok;
  } else {
    rep.params["seed"] = opt.seed;
    rep.details["points"] = pts;
  }
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report bailey_sl2(int nq, int nt, const IdentityOptions& opt)
{
  return verify_level1(parse_cartan_type("A1"), nq, nt, 2, opt);
}

Report verify_brylinski(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simply_laced(rs);
  require_cutoffs(nq, nt);
  Report rep;
  rep.check = "verify-brylinski";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}};
  const auto ch = basic_character(rs, nq, nt, !opt.perturb);
  const auto lhs = constant_term(rs, ch * koszul_factor(rs, nq, nt));
  std::vector<std::tuple<int, int, int>> fam;
  for (int m : rs.exponents)
    fam.push_back({m + 1, m + 1, -1});
  const auto rhs = scalar_product(fam, nq, nt);
  rep.details["mode"] = "symbolic";
  rep.details["lhs"] = table(lhs, opt.dump_order);
  rep.details["rhs"] = table(rhs, opt.dump_order);
  Json m = compare(lhs, rhs, "constant term");
  if (!m.is_null())
    rep.fail(m);

  // t^0 layer of the identity: only the vacuum survives
  bool t0_ok = true;
  for (int q = 0; q <= nq; ++q)
    t0_ok = t0_ok && lhs.at(0, q) == rhs.at(0, q);
  rep.details["t0_layer"] = t0_ok;
  // dim_q H_0^G from the bosonic character against prod_k prod_{n>m_k} (1 - q^n)^{-1}
  std::vector<std::tuple<int, int, int>> inv;
  for (int m : rs.exponents)
    inv.push_back({0, m + 1, -1});
  const auto dim_lhs = constant_term(rs, basic_character(rs, nq, 0, !opt.perturb));
  const auto dim_rhs = scalar_product(inv, nq, 0);
  Json dm = compare(dim_lhs, dim_rhs, "invariant q-dimension");
  rep.details["invariant_q_dimension"] = dm.is_null();
  rep.details["invariant_q_dimension_series"] = table(dim_lhs, opt.dump_order);
  if (!t0_ok)
    rep.fail(Json{{"where", "t^0 layer"}});
  if (!dm.is_null())
    rep.fail(dm);
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

Report verify_ortho(const RootSystem& rs, int nq, int nt, const IdentityOptions& opt)
{
  const auto t0 = Clock::now();
  require_simply_laced(rs);
  require_cutoffs(nq, nt);
  Report rep;
  rep.check = "verify-ortho";
  rep.params = {{"type", rs.name}, {"nq", nq}, {"nt", nt}};
  // Brylinski generating function with headroom for t -> t q^{-1}
  const int wide = nq + nt;
  std::vector<std::tuple<int, int, int>> bry, hall, rhs_fam;
  for (std::size_t k = 0; k < rs.exponents.size(); ++k) {
    const int m = rs.exponents[k];
    bry.push_back({m + 1, m + 1, -1});
    hall.push_back({opt.perturb && k == 0 ? m + 2 : m + 1, 1, 1});
    rhs_fam.push_back({m + 1, 0, -1});
  }
  const auto shifted = scalar_product(bry, wide, nt).substitute_t(-1);
  rep.details["substitution_in_ring"] = true;
  const auto lhs = scalar_product(hall, nq, nt) * shifted;
  const auto rhs = scalar_product(rhs_fam, 0, nt).truncated(0, nt);
  // the right side is q-independent: widen it to the q-cutoff
  QTSeries<RationalDomain> r(RationalDomain{}, 1, nq, nt);
  for (int t = 0; t <= nt; ++t)
    r.at(t, 0) = rhs.at(t, 0);
  rep.details["mode"] = "symbolic";
  rep.details["lhs"] = table(lhs, opt.dump_order);
  rep.details["rhs"] = table(r, opt.dump_order);
  Json m = compare(lhs, r, "product route");
  if (!m.is_null())
    rep.fail(m);
  rep.wall_time_ms = ms_since(t0);
  return rep;
}

} // namespace maclab
