// Acceptance run: one PASS/FAIL line per criterion.
//
//   maclab_acceptance [--expect-fail N ...]
//
// Exit status is 0 when exactly the criteria listed with --expect-fail fail.

#include "golden_cases.hpp"

#include "maclab/identities.hpp"
#include "maclab/koszul.hpp"
#include "maclab/laplacian.hpp"
#include "maclab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

using namespace maclab;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what)
  {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void expect_pass(const Report& r)
  {
    std::ostringstream os;
    os << r.check << " " << r.params.dump() << " " << r.status << " (" << long(r.wall_time_ms) << " ms)";
    require(r.passed(), os.str());
    if (r.passed())
      notes.push_back(os.str());
  }
};

// Reservoir of matrices whose rank was taken, for the rank oracle.
class RankSampler {
public:
  void observe(const SparseRationalMatrix& m)
  {
    if (m.rows() > 300 || m.cols() > 300 || m.rows() == 0 || m.cols() == 0)
      return;
    std::lock_guard<std::mutex> lock(mu_);
    ++seen_;
    if (pool_.size() < kSize) {
      pool_.push_back(m);
      return;
    }
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, seen_ - 1)(rng_);
    if (j < kSize)
      pool_[j] = m;
  }
  const std::vector<SparseRationalMatrix>& pool() const { return pool_; }
  std::size_t seen() const { return seen_; }

private:
  static constexpr std::size_t kSize = 120;
  std::mutex mu_;
  std::mt19937_64 rng_{20261015};
  std::size_t seen_ = 0;
  std::vector<SparseRationalMatrix> pool_;
};

struct SliceTotals {
  long complexes = 0, squares = 0, euler = 0;
  void add(const Report& r, const char* unit)
  {
    complexes += r.details["d_squared_zero"][unit].get<long>();
    squares += r.details["d_squared_zero"]["ok"].get<long>();
    euler += r.details["euler"]["ok"].get<long>();
  }
};

RootSystem T(const char* s) { return parse_cartan_type(s); }

} // namespace

int main(int argc, char** argv)
{
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc)
      expected_failures.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: maclab_acceptance [--expect-fail N ...]\n";
      return 2;
    }
  }

  RankSampler sampler;
  set_rank_observer([&sampler](const SparseRationalMatrix& m) { sampler.observe(m); });
  SliceTotals totals;
  std::vector<Outcome> ac(11);

  // 1: truncated current algebras
  for (int n : {2, 3, 4}) {
    const Report r = verify_trunc(T("A1"), n, -6);
    ac[1].expect_pass(r);
    totals.add(r, "weights");
  }
  {
    const Report r = verify_trunc(T("A2"), 2, -4);
    ac[1].expect_pass(r);
    totals.add(r, "weights");
  }

  // 2: restricted complex; the degree >= 2 clause is evaluated literally
  for (const auto& [t, w, p] : {std::tuple{"A1", -6, 4}, std::tuple{"A2", -4, 3}}) {
    const Report r = verify_sym(T(t), w, p);
    ac[2].expect_pass(r);
    ac[2].require(r.details["h0_h1_match"] == true, std::string(t) + ": H0/H1 mismatch");
    const Json& high = r.details["h_ge2_nonzero"];
    ac[2].require(high.empty(), std::string(t) + ": H^{>=2} nonzero on " + std::to_string(high.size()) +
                                    " slices, first " + (high.empty() ? std::string() : high[0].dump()));
    totals.add(r, "columns");
  }

  // 3: Nakano identity
  ac[3].expect_pass(verify_nakano(T("A1"), -6, 4));
  ac[3].expect_pass(verify_nakano(T("A2"), -4, 3));

  // 4: harmonic forms
  for (const auto& [t, w, p] : {std::tuple{"A1", -6, 4}, std::tuple{"A2", -4, 3}}) {
    const Report r = verify_harmonic(T(t), w, p);
    ac[4].expect_pass(r);
    const Json& c = r.details["cocycles"];
    ac[4].require(c["closed"] == c["checked"] && c["harmonic"] == c["checked"], std::string(t) + ": cocycles");
    ac[4].require(r.details["generated_by_products"] == r.details["hodge_identity"], std::string(t) + ": generation");
  }

  // 5: the first-order operator on C[z]
  for (int m : {1, 2})
    for (int n : {1, 2, 3}) {
      const Report r = delta1_check(m, n, 2 * n + 8);
      ac[5].expect_pass(r);
      ac[5].require(r.details["injective"] == true, "injectivity");
      ac[5].require(r.details["cokernel_dim"] == n - 1, "cokernel dimension");
    }

  set_rank_observer(nullptr);

  // 6-8: q,t identities
  {
    const Report a1 = verify_1psi1(T("A1"), 8, 8);
    ac[6].expect_pass(a1);
    ac[6].require(a1.details["evaluated_route_agrees"] == true, "A1 evaluated route");
    const Report a2 = verify_1psi1(T("A2"), 5, 5);
    ac[6].expect_pass(a2);
    ac[6].require(a2.details["torus_constant"] == true, "A2 torus constancy");
    ac[6].require(a2.details["points"].size() == 3, "three torus points");
  }
  ac[7].expect_pass(verify_macdonald_ct(T("A1"), 8, 8));
  ac[7].expect_pass(verify_macdonald_ct(T("A2"), 5, 5));

  ac[8].expect_pass(verify_level1(T("A1"), 6, 6, 1));
  ac[8].expect_pass(verify_level1(T("A2"), 4, 4, 1));
  ac[8].expect_pass(bailey_sl2(6, 6));
  {
    const Report b = verify_brylinski(T("A1"), 6, 4);
    ac[8].expect_pass(b);
    ac[8].require(b.details["t0_layer"] == true, "t^0 layer");
    ac[8].require(b.details["invariant_q_dimension"] == true, "invariant q-dimension");
  }
  ac[8].expect_pass(verify_ortho(T("A1"), 8, 8));
  ac[8].expect_pass(verify_ortho(T("D4"), 4, 4));

  // 9: rank oracle on sampled matrices from 1-4
  {
    long agree = 0;
    for (const SparseRationalMatrix& m : sampler.pool())
      agree += rank_exact(m) == rank_bareiss(m);
    const long n = long(sampler.pool().size());
    ac[9].require(n >= 50, "only " + std::to_string(n) + " matrices sampled");
    ac[9].require(agree == n, std::to_string(n - agree) + " disagreements");
    ac[9].notes.push_back(std::to_string(agree) + "/" + std::to_string(n) + " sampled of " +
                          std::to_string(sampler.seen()) + " observed");
  }

  // 10: complex axioms and report stability
  ac[10].require(totals.squares == totals.complexes, "d^2 != 0 somewhere");
  ac[10].require(totals.euler == totals.complexes, "Euler characteristic mismatch");
  ac[10].notes.push_back(std::to_string(totals.squares) + "/" + std::to_string(totals.complexes) +
                         " complexes with d^2 = 0 and matching Euler characteristics");
  {
    const unsigned many = std::max(2u, std::thread::hardware_concurrency());
    int stable = 0, in_corpus = 0;
    const auto configs = testing::golden_configs();
    for (const RunConfig& c : configs) {
      set_thread_count(1);
      const Json a = dispatch(c).to_json();
      const Json b = dispatch(c).to_json();
      set_thread_count(many);
      const Json d = dispatch(c).to_json();
      const std::string s = strip_timing(a).dump();
      const bool ok = s == strip_timing(b).dump() && s == strip_timing(d).dump();
      stable += ok;
      ac[10].require(ok, "unstable report for " + c.command);
#ifdef MACLAB_GOLDEN_DIR
      const bool match = golden_compare(a, MACLAB_GOLDEN_DIR).match;
      in_corpus += match;
      ac[10].require(match, "golden drift for " + golden_file_name(a));
#endif
    }
    set_thread_count(0);
    ac[10].notes.push_back(std::to_string(stable) + "/" + std::to_string(configs.size()) +
                           " reports byte-stable across reruns and thread counts {1, " + std::to_string(many) + "}");
#ifdef MACLAB_GOLDEN_DIR
    ac[10].notes.push_back(std::to_string(in_corpus) + " match the stored corpus");
#endif
  }

  static const char* titles[] = {"",
                                 "truncated current algebra cohomology",
                                 "restricted Koszul cohomology",
                                 "Nakano identity",
                                 "harmonic forms",
                                 "first-order operator on C[z]",
                                 "1psi1 identity",
                                 "Macdonald constant term",
                                 "level-one identities",
                                 "rank oracle equivalence",
                                 "complex axioms and report stability"};
  bool as_expected = true;
  for (int i = 1; i <= 10; ++i) {
    const Outcome& o = ac[std::size_t(i)];
    std::cout << "AC" << i << " " << (o.pass ? "PASS" : "FAIL") << "  " << titles[i] << "\n";
    for (const auto& n : o.notes)
      std::cout << "    " << n << "\n";
    if (o.pass == bool(expected_failures.count(i))) {
      as_expected = false;
      if (o.pass)
        std::cout << "    (listed as an expected failure but passed)\n";
    }
  }
  return as_expected ? 0 : 1;
}
