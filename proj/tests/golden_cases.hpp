#pragma once

#include "maclab/cli.hpp"

#include <string>
#include <vector>

namespace maclab::testing {

inline RunConfig make_config(std::string command, std::string type = "A1")
{
  RunConfig c;
  c.command = std::move(command);
  c.type = std::move(type);
  return c;
}

/// Small runs covering every command; their reports form the regression corpus.
inline std::vector<RunConfig> golden_configs()
{
  std::vector<RunConfig> v;
  auto add = [&](RunConfig c) { v.push_back(std::move(c)); };
  RunConfig c;

  c = make_config("verify-trunc");
  c.n = 2;
  c.weight_bound = -4;
  add(c);
  c = make_config("verify-trunc", "A2");
  c.n = 2;
  c.weight_bound = -2;
  add(c);
  c = make_config("verify-sym");
  c.weight_bound = -3;
  c.p_bound = 3;
  add(c);
  c = make_config("verify-sym", "A2");
  c.weight_bound = -2;
  c.p_bound = 2;
  add(c);
  c = make_config("verify-nakano");
  c.weight_bound = -3;
  c.p_bound = 2;
  add(c);
  c = make_config("verify-harmonic");
  c.weight_bound = -3;
  c.p_bound = 3;
  add(c);
  c = make_config("verify-delta1");
  c.m = 2;
  c.n = 3;
  c.N = 10;
  add(c);
  c = make_config("verify-1psi1");
  c.nq = 4;
  c.nt = 4;
  add(c);
  c = make_config("verify-1psi1", "A2");
  c.nq = 2;
  c.nt = 2;
  add(c);
  c = make_config("verify-macdonald-ct");
  c.nq = 4;
  c.nt = 4;
  add(c);
  c = make_config("verify-level1");
  c.nq = 3;
  c.nt = 3;
  add(c);
  c = make_config("bailey-sl2");
  c.nq = 3;
  c.nt = 3;
  add(c);
  c = make_config("verify-brylinski");
  c.nq = 4;
  c.nt = 3;
  add(c);
  c = make_config("verify-ortho");
  c.nq = 4;
  c.nt = 4;
  add(c);
  c = make_config("dump-series");
  c.nq = 3;
  c.nt = 2;
  c.args = {"basic"};
  add(c);
  c = make_config("dump-matrix");
  c.args = {"dbar", "0", "2", "-1"};
  add(c);
  return v;
}

} // namespace maclab::testing
