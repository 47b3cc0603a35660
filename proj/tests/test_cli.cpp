#include "golden_cases.hpp"

#include "maclab/cli.hpp"
#include "maclab/errors.hpp"
#include "maclab/koszul.hpp"
#include "maclab/parallel.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace maclab;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "maclab");
  std::vector<char*> argv;
  for (auto& a : args)
    argv.push_back(a.data());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(int(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct EnvGuard {
  std::string name;
  EnvGuard(std::string n, const char* v) : name(std::move(n)) { setenv(name.c_str(), v, 1); }
  ~EnvGuard() { unsetenv(name.c_str()); }
};

std::filesystem::path scratch_dir(const std::string& leaf)
{
  auto p = std::filesystem::temp_directory_path() / ("maclab-test-" + leaf);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// cohomology dims of sl2[z]/z^2 slices, computed from a possibly modified algebra
Report trunc_dims_report(const LieAlgebra& g)
{
  Report r;
  r.check = "trunc-dims";
  r.params = {{"type", "A1"}, {"n", 2}};
  for (int w = 0; w >= -3; --w)
    for (int k = 0; k <= 4; ++k) {
      const KoszulSlice mid = trunc_slice(g, 2, k, w, false);
      std::vector<KoszulSlice> in;
      if (k > 0)
        in.push_back(trunc_slice(g, 2, k - 1, w, false));
      long h = 0;
      try {
        h = cohomology_dim(in.empty() ? nullptr : &in[0], mid, &mid);
      } catch (const NotAComplex&) {
        h = -1;
      }
      r.per_slice.push_back({k, w, 0, mid.dim(), h, 0});
    }
  return r;
}

} // namespace

TEST_SUITE("cli")
{
  TEST_CASE("documented end-to-end runs")
  {
    const Run a = run({"verify-trunc", "--type", "A1", "--n", "2", "--weight-bound", "-6", "--format", "json"});
    CHECK(a.code == 0);
    const Json j = Json::parse(a.out);
    CHECK(j["status"] == "PASS");
    CHECK(j["schema"] == kReportSchema);

    const Run b = run({"verify-delta1", "--m", "1", "--n", "1"});
    CHECK(b.code == 0);
    const Run c = run({"verify-1psi1", "--type", "A1", "--nq", "0", "--nt", "0"});
    CHECK(c.code == 0);
  }

  TEST_CASE("exit code matrix")
  {
    CHECK(run({"verify-delta1", "--m", "2", "--n", "3", "--N", "10"}).code == 0);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"verify-trunc", "--bogus-flag", "1"}).code == 2);
    CHECK(run({"verify-trunc", "--weight-bound", "3"}).code == 2);
    CHECK(run({"verify-trunc", "--type", "A2", "--rank", "3"}).code == 2);
    CHECK(run({"verify-trunc", "--type", "E8"}).code == 2);
    CHECK(run({"verify-level1", "--type", "B2", "--nq", "2", "--nt", "2"}).code == 2);
    CHECK(run({"verify-delta1", "--n", "3", "--N", "4"}).code == 2);
    CHECK(run({"verify-1psi1", "--format", "yaml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    {
      const EnvGuard cap("MACLAB_CAP", "5");
      const Run r = run({"verify-sym", "--type", "A2", "--weight-bound", "-3", "--p-bound", "3"});
      CHECK(r.code == 2);
      CHECK(r.out.find("CAPACITY") != std::string::npos);
      CHECK(r.err.find("MACLAB_CAP") != std::string::npos);
    }
    {
      const EnvGuard nc("MACLAB_NEGATIVE_CONTROL", "1");
      const Run r = run({"verify-1psi1", "--nq", "4", "--nt", "4", "--format", "json"});
      CHECK(r.code == 1);
      CHECK(Json::parse(r.out)["status"] == "FAIL");
      CHECK(run({"verify-ortho", "--nq", "4", "--nt", "4"}).code == 1);
    }
  }

  TEST_CASE("report written to a file")
  {
    const auto dir = scratch_dir("out");
    const std::string file = (dir / "r.json").string();
    const Run r = run({"verify-delta1", "--m", "1", "--n", "2", "--N", "8", "--format", "json", "--out", file});
    CHECK(r.code == 0);
    CHECK(r.out == "verify-delta1: PASS\n");
    std::ifstream in(file);
    const Json j = Json::parse(in);
    CHECK(j["details"]["cokernel_dim"] == 1);
  }

  TEST_CASE("dump commands")
  {
    const Run m = run({"dump-matrix", "dbar", "0", "2", "-1", "--format", "json"});
    CHECK(m.code == 0);
    const Json j = Json::parse(m.out);
    CHECK(j["details"].contains("triplets"));
    const Run s = run({"dump-series", "kac", "--nq", "2", "--nt", "2"});
    CHECK(s.code == 0);
    CHECK(run({"dump-series", "nonsense"}).code == 2);
    CHECK(run({"dump-matrix", "dbar"}).code == 2);
  }

  TEST_CASE("golden corpus")
  {
    const bool regenerate = std::getenv("MACLAB_REGEN_GOLDEN") != nullptr;
    for (const RunConfig& c : testing::golden_configs()) {
      const Json j = dispatch(c).to_json();
      CAPTURE(golden_file_name(j));
      if (regenerate)
        golden_store(j, MACLAB_GOLDEN_DIR);
      const GoldenResult g = golden_compare(j, MACLAB_GOLDEN_DIR);
      CHECK(g.match);
      for (const auto& d : g.drift)
        MESSAGE("drift at " << d);
    }
  }

  TEST_CASE("determinism across thread counts")
  {
    const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
    for (const RunConfig& c : testing::golden_configs()) {
      set_thread_count(1);
      const std::string one = strip_timing(dispatch(c).to_json()).dump();
      set_thread_count(hw);
      const std::string many = strip_timing(dispatch(c).to_json()).dump();
      CAPTURE(c.command);
      CHECK(one == many);
    }
    set_thread_count(0);
  }

  TEST_CASE("golden comparison semantics")
  {
    const auto dir = scratch_dir("golden").string();
    RunConfig c = testing::make_config("verify-1psi1");
    c.nq = 3;
    c.nt = 3;
    const Json base = dispatch(c).to_json();
    CHECK(golden_compare(base, dir).drift == std::vector<std::string>{"absent"});
    golden_store(base, dir);
    CHECK(golden_compare(dispatch(c).to_json(), dir).match);
    c.seed = 12345; // the rank-one route is symbolic
    CHECK(golden_compare(dispatch(c).to_json(), dir).match);

    const LieAlgebra g = build_lie_algebra(parse_cartan_type("A1"));
    golden_store(trunc_dims_report(g).to_json(), dir);
    CHECK(golden_compare(trunc_dims_report(g).to_json(), dir).match);
    LieAlgebra bent = g;
    // one structure constant changed, its antisymmetric partner left alone
    for (auto& v : bent.bracket[0])
      if (!v.empty()) {
        v[0].coeff *= 3;
        break;
      }
    const GoldenResult drift = golden_compare(trunc_dims_report(bent).to_json(), dir);
    CHECK_FALSE(drift.match);
    CHECK_FALSE(drift.drift.empty());
  }
}
