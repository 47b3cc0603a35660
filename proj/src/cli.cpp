#include "maclab/cli.hpp"

#include "maclab/errors.hpp"
#include "maclab/identities.hpp"
#include "maclab/koszul.hpp"
#include "maclab/laplacian.hpp"
#include "maclab/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

namespace maclab {

namespace {

const std::vector<std::string> kCommands = {
    "verify-trunc",  "verify-sym",          "verify-delta1", "verify-nakano", "verify-harmonic",
    "verify-1psi1",  "verify-macdonald-ct", "verify-level1", "bailey-sl2",    "verify-brylinski",
    "verify-ortho",  "dump-matrix",         "dump-series"};

int to_int(const std::string& s, const std::string& what)
{
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos == s.size())
      return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + " must be an integer, got '" + s + "'");
}

// dump-matrix OP DEGREE S_WEIGHT Z_WEIGHT: the operator on the full torus-weight-zero slice
Report dump_matrix(const RunConfig& c)
{
  if (c.args.size() != 4)
    throw UsageError("dump-matrix expects OP DEGREE S_WEIGHT Z_WEIGHT");
  const OperatorKind kind = parse_operator(c.args[0]);
  const int degree = to_int(c.args[1], "DEGREE"), p = to_int(c.args[2], "S_WEIGHT"),
            w = to_int(c.args[3], "Z_WEIGHT");
  if (degree < 0 || p < 0 || w > 0)
    throw UsageError("need DEGREE >= 0, S_WEIGHT >= 0 and Z_WEIGHT <= 0");
  const RootSystem rs = parse_cartan_type(c.type);
  const LieAlgebra g = build_lie_algebra(rs);
  const KoszulAlgebra alg = restricted_algebra(g, std::max(1, -w));
  const OperatorAlgebra ops(alg);
  const Weight zero = Weight::zero(rs.ss_rank);
  auto slice = [&](int k) {
    return make_slice(alg, ComplexKind::Full, k, p, w, zero,
                      k < 0 ? std::vector<Monomial>{} : enumerate_monomials(alg, k, p, w, &zero, slice_cap()));
  };
  const KoszulSlice src = slice(degree);
  std::vector<std::string> rows;
  SparseRationalMatrix m(0, 0);
  switch (kind.tag) {
  case OpTag::Dbar:
  case OpTag::DbarStar:
  case OpTag::Dop:
  case OpTag::Box:
  case OpTag::Boxbar:
  case OpTag::K: {
    const int shift = kind.tag == OpTag::Dbar ? 1 : kind.tag == OpTag::DbarStar ? -1 : 0;
    const KoszulSlice tgt = shift == 0 ? src : slice(degree + shift);
    m = operator_matrix(ops, kind, src, tgt);
    for (const Monomial& x : tgt.basis)
      rows.push_back(alg.str(x));
    break;
  }
  default: {
    // generator operators move the weights; rows are the image monomials in order of appearance
    const MonomialOp op = ops.generator(kind);
    std::vector<Monomial> image;
    std::unordered_map<Monomial, int, MonomialHash> index;
    std::vector<std::tuple<int, int, Rational>> entries;
    for (int j = 0; j < src.dim(); ++j) {
      Element out;
      op(src.basis[std::size_t(j)], Rational(1), out);
      prune(out);
      std::vector<std::pair<Monomial, Rational>> sorted(out.begin(), out.end());
      std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [x, v] : sorted) {
        auto [it, fresh] = index.emplace(x, int(image.size()));
        if (fresh)
          image.push_back(x);
        entries.emplace_back(it->second, j, v);
      }
    }
    m = SparseRationalMatrix(int(image.size()), src.dim());
    for (const auto& [i, j, v] : entries)
      m.add(i, j, v);
    for (const Monomial& x : image)
      rows.push_back(alg.str(x));
  }
  }
  Report rep;
  rep.check = "dump-matrix";
  rep.params = {{"type", rs.name}, {"operator", to_string(kind)}, {"degree", degree}, {"s_weight", p},
                {"z_weight", w}};
  Json cols = Json::array(), trip = Json::array();
  for (const Monomial& x : src.basis)
    cols.push_back(alg.str(x));
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i))
      trip.push_back(Json::array({i, j, v.get_str()}));
  rep.details["rows"] = m.rows();
  rep.details["cols"] = m.cols();
  rep.details["row_basis"] = rows;
  rep.details["column_basis"] = cols;
  rep.details["triplets"] = trip;
  return rep;
}

template <class D>
Json series_table(const QTSeries<D>& s)
{
  Json j = Json::object();
  for (int q = 0; q <= s.nq_units(); ++q)
    for (int t = 0; t <= s.nt(); ++t)
      if (!s.domain().is_zero(s.at(t, q)))
        j["q^" + make_rational(q, s.qden()).get_str() + " t^" + std::to_string(t)] = s.domain().str(s.at(t, q));
  return j;
}

// dump-series NAME with NAME in kac, 1psi1-rhs, macdonald-ct, basic
Report dump_series(const RunConfig& c)
{
  if (c.args.size() != 1)
    throw UsageError("dump-series expects one of kac, 1psi1-rhs, macdonald-ct, basic");
  const std::string& name = c.args[0];
  const RootSystem rs = parse_cartan_type(c.type);
  Report rep;
  rep.check = "dump-series";
  rep.params = {{"type", rs.name}, {"series", name}, {"nq", c.nq}, {"nt", c.nt}};
  if (name == "kac") {
    if (rs.ss_rank == 1) {
      rep.details["series"] = series_table(kac_E_series(rs, c.nq, c.nt));
    } else {
      const auto p = torus_points(rs, c.seed, 1).front();
      rep.params["seed"] = c.seed;
      rep.details["series"] = series_table(kac_E_series(rs, c.nq, c.nt, p));
    }
  } else if (name == "1psi1-rhs") {
    rep.details["series"] = series_table(psi_product(rs, c.nq, c.nt));
  } else if (name == "macdonald-ct") {
    rep.details["series"] = series_table(constant_term(rs, koszul_factor(rs, c.nq, c.nt)));
  } else if (name == "basic") {
    rep.details["series"] = series_table(basic_character(rs, c.nq, 0));
  } else {
    throw UsageError("unknown series '" + name + "'");
  }
  return rep;
}

} // namespace

Report dispatch(const RunConfig& c)
{
  const auto t0 = std::chrono::steady_clock::now();
  const std::string& cmd = c.command;
  IdentityOptions opt;
  opt.seed = c.seed;
  opt.dump_order = c.dump_order < 0 ? -1 : c.dump_order * c.qden;
  // MACLAB_NEGATIVE_CONTROL=1 corrupts one factor of the identity checks
  if (const char* nc = std::getenv("MACLAB_NEGATIVE_CONTROL"))
    opt.perturb = std::string(nc) == "1";
  Report rep;
  if (cmd == "verify-delta1") {
    rep = delta1_check(c.m, c.n, c.N);
  } else if (cmd == "bailey-sl2") {
    opt.dump_order = c.dump_order < 0 ? -1 : 2 * c.dump_order;
    rep = bailey_sl2(c.nq, c.nt, opt);
  } else if (cmd == "dump-matrix") {
    rep = dump_matrix(c);
  } else if (cmd == "dump-series") {
    rep = dump_series(c);
  } else {
    const RootSystem rs = parse_cartan_type(c.type);
    if (cmd == "verify-trunc")
      rep = verify_trunc(rs, c.n, c.weight_bound);
    else if (cmd == "verify-sym")
      rep = verify_sym(rs, c.weight_bound, c.p_bound);
    else if (cmd == "verify-nakano")
      rep = verify_nakano(rs, c.weight_bound, c.p_bound);
    else if (cmd == "verify-harmonic")
      rep = verify_harmonic(rs, c.weight_bound, c.p_bound);
    else if (cmd == "verify-1psi1")
      rep = verify_1psi1(rs, c.nq, c.nt, opt);
    else if (cmd == "verify-macdonald-ct")
      rep = verify_macdonald_ct(rs, c.nq, c.nt, opt);
    else if (cmd == "verify-level1")
      rep = verify_level1(rs, c.nq, c.nt, c.qden, opt);
    else if (cmd == "verify-brylinski")
      rep = verify_brylinski(rs, c.nq, c.nt, opt);
    else if (cmd == "verify-ortho")
      rep = verify_ortho(rs, c.nq, c.nt, opt);
    else
      throw UsageError("unknown command '" + cmd + "'");
  }
  if (opt.perturb)
    rep.params["negative_control"] = true;
  if (rep.wall_time_ms == 0)
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  RunConfig c;
  CLI::App app{"Exact verification of strong Macdonald identities", "maclab"};
  app.add_option("command", c.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(std::set<std::string>(kCommands.begin(), kCommands.end())));
  app.add_option("args", c.args, "Operands of dump-matrix (OP DEGREE S_WEIGHT Z_WEIGHT) and dump-series (NAME)");
  app.add_option("--type", c.type, "Cartan type, e.g. A1, A2, D4, gl3");
  int rank = -1;
  app.add_option("--rank", rank, "Rank; must agree with --type when given")->check(CLI::NonNegativeNumber);
  app.add_option("--n", c.n, "Truncation order (verify-trunc, verify-delta1)")->check(CLI::PositiveNumber);
  app.add_option("--m", c.m, "Exponent (verify-delta1)")->check(CLI::PositiveNumber);
  app.add_option("--N", c.N, "z-degree bound (verify-delta1)")->check(CLI::NonNegativeNumber);
  app.add_option("--nq", c.nq, "q cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--nt", c.nt, "t cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--qden", c.qden, "q denominator (verify-level1)")->check(CLI::PositiveNumber);
  app.add_option("--weight-bound", c.weight_bound, "Lowest z-weight (<= 0)");
  app.add_option("--p-bound", c.p_bound, "Largest symmetric degree")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", c.threads, "Worker threads (default: available parallelism)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "Seed for torus evaluation points");
  app.add_option("--dump-order", c.dump_order, "Embed coefficient tables up to this q-order")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "Write the report to FILE");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (c.weight_bound > 0) {
    err << "usage error: --weight-bound must be <= 0\n";
    return 2;
  }
  if (rank >= 0) {
    try {
      if (parse_cartan_type(c.type).rank != rank) {
        err << "usage error: --rank " << rank << " does not match --type " << c.type << "\n";
        return 2;
      }
    } catch (const Error& e) {
      err << e.kind() << ": " << e.what() << "\n";
      return 2;
    }
  }
  set_thread_count(c.threads);

  Report rep;
  try {
    rep = dispatch(c);
  } catch (const CapacityError& e) {
    rep.check = c.command;
    rep.status = "CAPACITY";
    rep.first_mismatch = Json{{"capacity", e.what()}};
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
  const std::string text = c.format == "json" ? rep.to_json().dump(2) + "\n" : rep.text() + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
    out << rep.check << ": " << rep.status << "\n";
  }
  if (rep.status == "CAPACITY") {
    err << "slice cap exceeded; raise MACLAB_CAP to allow larger slices\n";
    return 2;
  }
  return rep.passed() ? 0 : 1;
}

} // namespace maclab
