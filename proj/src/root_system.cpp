#include "maclab/root_system.hpp"

#include "maclab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace maclab {

// ---------------------------------------------------------------- Weight

bool Weight::is_zero() const
{
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

Weight Weight::operator+(const Weight& o) const
{
  if (o.coords.size() != coords.size())
    throw DimensionError("weight addition: rank mismatch");
  Weight r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i)
    r.coords[i] += o.coords[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const
{
  Weight r = *this;
  for (auto& c : r.coords)
    c = -c;
  return r;
}

Weight Weight::scaled(int k) const
{
  Weight r = *this;
  for (auto& c : r.coords)
    c *= k;
  return r;
}

std::string Weight::str() const
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords.size(); ++i)
    os << (i ? "," : "") << coords[i];
  os << ']';
  return os.str();
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept
{
  std::size_t h = 1469598103934665603ull;
  for (int c : w.coords) {
    h ^= std::size_t(std::uint32_t(c));
    h *= 1099511628211ull;
  }
  return h;
}

Weight WeylElement::apply(const Weight& w) const
{
  const int n = int(on_weights.size());
  Weight r = Weight::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.coords[std::size_t(i)] += on_weights[std::size_t(i)][std::size_t(j)] * w.coords[std::size_t(j)];
  return r;
}

std::vector<int> WeylElement::apply_coroot(const std::vector<int>& k) const
{
  const std::size_t n = on_coroots.size();
  std::vector<int> r(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r[i] += on_coroots[i][j] * k[j];
  return r;
}

// ---------------------------------------------------------------- RootSystem

bool RootSystem::simply_laced() const
{
  return family == Family::A || family == Family::D || family == Family::GL;
}

std::vector<Weight> RootSystem::roots() const
{
  std::vector<Weight> all = positive_roots;
  for (const auto& a : positive_roots)
    all.push_back(-a);
  return all;
}

namespace {

RationalMatrix cartan_rational(const IntMatrix& a)
{
  const int n = int(a.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = a[std::size_t(i)][std::size_t(j)];
  return m;
}

IntMatrix identity_int(int n)
{
  IntMatrix m(std::size_t(n), std::vector<int>(std::size_t(n), 0));
  for (int i = 0; i < n; ++i)
    m[std::size_t(i)][std::size_t(i)] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j)
          c[i][j] += a[i][k] * b[k][j];
  return c;
}

} // namespace

std::vector<Rational> RootSystem::simple_root_coords(const Weight& w) const
{
  if (w.rank() != ss_rank)
    throw DimensionError("weight rank does not match root system");
  RationalMatrix inv = inverse(cartan_rational(cartan_matrix));
  // mu = A c  (alpha_j has coordinates given by column j of A)
  std::vector<Rational> c(static_cast<std::size_t>(ss_rank));
  for (int i = 0; i < ss_rank; ++i)
    for (int j = 0; j < ss_rank; ++j)
      c[std::size_t(i)] += inv(i, j) * w[j];
  return c;
}

Rational RootSystem::height(const Weight& w) const
{
  Rational h = 0;
  for (const auto& c : simple_root_coords(w))
    h += c;
  return h;
}

bool RootSystem::is_dominant(const Weight& w) const
{
  if (w.rank() != ss_rank)
    throw DimensionError("weight rank does not match root system");
  return std::all_of(w.coords.begin(), w.coords.end(), [](int c) { return c >= 0; });
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const
{
  if (a.rank() != ss_rank || b.rank() != ss_rank)
    throw DimensionError("inner product: rank mismatch");
  Rational s = 0;
  for (int i = 0; i < ss_rank; ++i)
    for (int j = 0; j < ss_rank; ++j)
      if (a[i] != 0 && b[j] != 0)
        s += basic_gram(i, j) * a[i] * b[j];
  return s;
}

Weight RootSystem::dominant_conjugate(const Weight& w) const
{
  Weight r = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < ss_rank; ++i) {
      const int c = r[i];
      if (c < 0) {
        r = r - simple_roots[std::size_t(i)].scaled(c);
        changed = true;
      }
    }
  }
  return r;
}

Weight RootSystem::coroot_as_weight(const std::vector<int>& k) const
{
  if (!simply_laced())
    throw LacingError("coroot-to-weight conversion needs a simply laced type");
  Weight w = Weight::zero(ss_rank);
  for (int i = 0; i < ss_rank; ++i)
    w = w + simple_roots[std::size_t(i)].scaled(k[std::size_t(i)]);
  return w;
}

Rational RootSystem::coroot_norm_half(const std::vector<int>& k) const
{
  Rational s = 0;
  for (int i = 0; i < ss_rank; ++i)
    for (int j = 0; j < ss_rank; ++j)
      s += coroot_gram(i, j) * k[std::size_t(i)] * k[std::size_t(j)];
  return s / 2;
}

int RootSystem::flip_count(const std::vector<int>& k) const
{
  int total = 0;
  for (const auto& a : positive_roots) {
    int p = 0;
    for (int i = 0; i < ss_rank; ++i)
      p += a[i] * k[std::size_t(i)];
    total += std::abs(p);
  }
  return total;
}

// ---------------------------------------------------------------- construction

namespace {

struct TypeData {
  IntMatrix cartan;
  std::vector<Rational> d;
  std::vector<int> exponents;
  int dual_coxeter;
  long weyl_order;
};

IntMatrix cartan_A(int n)
{
  IntMatrix a(std::size_t(n), std::vector<int>(std::size_t(n), 0));
  for (int i = 0; i < n; ++i) {
    a[std::size_t(i)][std::size_t(i)] = 2;
    if (i + 1 < n) {
      a[std::size_t(i)][std::size_t(i + 1)] = -1;
      a[std::size_t(i + 1)][std::size_t(i)] = -1;
    }
  }
  return a;
}

long factorial(int n)
{
  long f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

TypeData type_data(Family f, int n)
{
  TypeData t;
  switch (f) {
  case Family::A:
    t.cartan = cartan_A(n);
    t.d.assign(std::size_t(n), Rational(1));
    for (int k = 1; k <= n; ++k)
      t.exponents.push_back(k);
    t.dual_coxeter = n + 1;
    t.weyl_order = factorial(n + 1);
    break;
  case Family::B: // alpha_1 long, alpha_2 short
    t.cartan = {{2, -1}, {-2, 2}};
    t.d = {Rational(1), Rational(1, 2)};
    t.exponents = {1, 3};
    t.dual_coxeter = 3;
    t.weyl_order = 8;
    break;
  case Family::C: // alpha_1 short, alpha_2 long
    t.cartan = {{2, -2}, {-1, 2}};
    t.d = {Rational(1, 2), Rational(1)};
    t.exponents = {1, 3};
    t.dual_coxeter = 3;
    t.weyl_order = 8;
    break;
  case Family::D: // node 2 is the branch node
    t.cartan = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    t.d.assign(4, Rational(1));
    t.exponents = {1, 3, 3, 5};
    t.dual_coxeter = 6;
    t.weyl_order = 192;
    break;
  case Family::G: // alpha_1 short, alpha_2 long
    t.cartan = {{2, -3}, {-1, 2}};
    t.d = {Rational(1, 3), Rational(1)};
    t.exponents = {1, 5};
    t.dual_coxeter = 4;
    t.weyl_order = 12;
    break;
  case Family::GL:
    t.cartan = cartan_A(n - 1);
    t.d.assign(std::size_t(n - 1), Rational(1));
    for (int k = 0; k < n; ++k)
      t.exponents.push_back(k);
    t.dual_coxeter = n;
    t.weyl_order = factorial(n);
    break;
  }
  return t;
}

} // namespace

RootSystem build_root_system(const std::string& family_in, int rank)
{
  std::string family;
  for (char c : family_in)
    family.push_back(char(std::tolower(static_cast<unsigned char>(c))));

  Family f;
  bool ok = false;
  if (family == "a" && rank >= 1 && rank <= 4) {
    f = Family::A;
    ok = true;
  } else if (family == "b" && rank == 2) {
    f = Family::B;
    ok = true;
  } else if (family == "c" && rank == 2) {
    f = Family::C;
    ok = true;
  } else if (family == "d" && rank == 4) {
    f = Family::D;
    ok = true;
  } else if (family == "g" && rank == 2) {
    f = Family::G;
    ok = true;
  } else if (family == "gl" && rank >= 1 && rank <= 3) {
    f = Family::GL;
    ok = true;
  }
  if (!ok)
    throw UnsupportedCartanType("unsupported Cartan type " + family_in + std::to_string(rank));

  TypeData t = type_data(f, rank);
  RootSystem rs;
  rs.family = f;
  rs.name = (f == Family::GL ? std::string("gl") : std::string(1, char(std::toupper(family[0])))) +
            std::to_string(rank);
  rs.rank = rank;
  rs.ss_rank = int(t.cartan.size());
  rs.cartan_matrix = t.cartan;
  rs.symmetrizer = t.d;
  rs.exponents = t.exponents;
  rs.dual_coxeter = t.dual_coxeter;
  rs.weyl_order = t.weyl_order;

  const int l = rs.ss_rank;
  for (int j = 0; j < l; ++j) {
    Weight a = Weight::zero(l);
    for (int i = 0; i < l; ++i)
      a.coords[std::size_t(i)] = t.cartan[std::size_t(i)][std::size_t(j)];
    rs.simple_roots.push_back(a);
  }

  // symmetrized form S_ij = d_i a_ij on simple roots; G = A^{-T} S A^{-1}
  rs.basic_gram = RationalMatrix(l, l);
  rs.coroot_gram = RationalMatrix(l, l);
  rs.killing_gram = RationalMatrix(l, l);
  if (l > 0) {
    RationalMatrix a = cartan_rational(t.cartan);
    RationalMatrix s(l, l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        s(i, j) = t.d[std::size_t(i)] * t.cartan[std::size_t(i)][std::size_t(j)];
        rs.coroot_gram(i, j) = Rational(t.cartan[std::size_t(i)][std::size_t(j)]) / t.d[std::size_t(j)];
      }
    RationalMatrix ainv = inverse(a);
    rs.basic_gram = transpose(ainv) * s * ainv;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j)
        rs.killing_gram(i, j) = rs.basic_gram(i, j) / (2 * rs.dual_coxeter);
  }

  // roots = Weyl orbit of the simple roots
  std::set<Weight> seen(rs.simple_roots.begin(), rs.simple_roots.end());
  std::deque<Weight> queue(rs.simple_roots.begin(), rs.simple_roots.end());
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (int i = 0; i < l; ++i) {
      Weight r = w - rs.simple_roots[std::size_t(i)].scaled(w[i]);
      if (seen.insert(r).second)
        queue.push_back(r);
    }
  }
  for (const auto& w : seen) {
    auto c = rs.simple_root_coords(w);
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) >= 0; }))
      rs.positive_roots.push_back(w);
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [&](const Weight& x, const Weight& y) {
    Rational hx = rs.height(x), hy = rs.height(y);
    if (hx != hy)
      return hx < hy;
    return x > y;
  });

  rs.rho = Weight(std::vector<int>(std::size_t(l), 1));
  return rs;
}

RootSystem parse_cartan_type(const std::string& type)
{
  std::string letters, digits;
  for (char c : type) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits.push_back(c);
    else if (digits.empty())
      letters.push_back(c);
    else
      throw UnsupportedCartanType("malformed Cartan type '" + type + "'");
  }
  if (letters.empty() || digits.empty() || digits.size() > 2)
    throw UnsupportedCartanType("malformed Cartan type '" + type + "'");
  return build_root_system(letters, std::stoi(digits));
}

std::vector<WeylElement> weyl_elements(const RootSystem& rs)
{
  const int l = rs.ss_rank;
  std::vector<IntMatrix> sw, sc;
  for (int i = 0; i < l; ++i) {
    IntMatrix w = identity_int(l), c = identity_int(l);
    // s_i(lambda) = lambda - lambda_i alpha_i
    for (int r = 0; r < l; ++r)
      w[std::size_t(r)][std::size_t(i)] -= rs.simple_roots[std::size_t(i)][r];
    // s_i(gamma) = gamma - <alpha_i, gamma> alpha_i^vee,  <alpha_i, alpha_j^vee> = a_ji
    for (int j = 0; j < l; ++j)
      c[std::size_t(i)][std::size_t(j)] -= rs.cartan_matrix[std::size_t(j)][std::size_t(i)];
    sw.push_back(w);
    sc.push_back(c);
  }

  std::vector<WeylElement> out;
  std::map<IntMatrix, std::size_t> index;
  WeylElement id{identity_int(l), identity_int(l), 0};
  index[id.on_weights] = 0;
  out.push_back(id);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i = 0; i < l; ++i) {
      IntMatrix w = multiply(sw[std::size_t(i)], out[head].on_weights);
      if (index.count(w))
        continue;
      WeylElement e{w, multiply(sc[std::size_t(i)], out[head].on_coroots), out[head].length + 1};
      index[w] = out.size();
      out.push_back(std::move(e));
    }
  }
  return out;
}

int pairing(const RootSystem& rs, const Weight& lambda, const std::vector<int>& gamma)
{
  if (lambda.rank() != rs.ss_rank || int(gamma.size()) != rs.ss_rank)
    throw DimensionError("pairing: rank mismatch");
  int s = 0;
  for (int i = 0; i < rs.ss_rank; ++i)
    s += lambda[i] * gamma[std::size_t(i)];
  return s;
}

int pairing(const RootSystem& rs, const Weight& lambda, const CorootPoint& gamma)
{
  return pairing(rs, lambda, gamma.coords);
}

std::vector<CorootPoint> coroot_translates(const RootSystem& rs, TranslateMode mode, long bound)
{
  const int l = rs.ss_rank;
  if (bound < 0)
    return {};
  std::vector<long> box(static_cast<std::size_t>(l), 0);
  if (l > 0) {
    RationalMatrix a = cartan_rational(rs.cartan_matrix);
    if (mode == TranslateMode::Level0Flips) {
      // k = A^{-T} p with |p_j| <= flip_count
      RationalMatrix m = transpose(inverse(a));
      for (int i = 0; i < l; ++i) {
        Rational s = 0;
        for (int j = 0; j < l; ++j)
          s += abs(m(i, j));
        Rational b = s * Rational(bound);
        box[std::size_t(i)] = long(mpz_class(b.get_num() / b.get_den()).get_si());
      }
    } else {
      // |k_i|^2 <= (M^{-1})_ii * k^T M k
      RationalMatrix minv = inverse(rs.coroot_gram);
      for (int i = 0; i < l; ++i) {
        double v = minv(i, i).get_d() * 2.0 * double(bound);
        box[std::size_t(i)] = long(std::floor(std::sqrt(std::max(0.0, v)) + 1e-9)) + 1;
      }
    }
  }

  std::vector<CorootPoint> out;
  std::vector<int> k(static_cast<std::size_t>(l), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == l) {
      CorootPoint p;
      p.coords = k;
      p.norm_half = rs.coroot_norm_half(k);
      p.flip_count = rs.flip_count(k);
      bool keep = mode == TranslateMode::Level0Flips ? p.flip_count <= bound
                                                     : p.norm_half <= Rational(bound);
      if (keep)
        out.push_back(std::move(p));
      return;
    }
    for (long v = -box[std::size_t(i)]; v <= box[std::size_t(i)]; ++v) {
      k[std::size_t(i)] = int(v);
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const CorootPoint& x, const CorootPoint& y) {
    if (x.norm_half != y.norm_half)
      return x.norm_half < y.norm_half;
    if (x.flip_count != y.flip_count)
      return x.flip_count < y.flip_count;
    return x.coords < y.coords;
  });
  return out;
}

} // namespace maclab
