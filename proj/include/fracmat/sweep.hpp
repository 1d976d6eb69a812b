// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracmat/certification.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/fmm.hpp"
#include "fracmat/instance.hpp"
#include "fracmat/io.hpp"
#include "fracmat/weighted_solver.hpp"

namespace fracmat {

using WeightSolver = std::function<WeightedResult(
    const Matroid&, const LineSet&, const std::vector<Rational>&)>;

struct SweepConfig {
  std::uint64_t seed = 1;
  long count = 200;
  RandomInstanceConfig instances;
  bool perfect_variant = true;  // also compare the perfect problem
};

// Outcome of every check on one random instance. A check that could not run
// (because the solver threw) counts as failed.
struct SweepEntry {
  std::uint64_t index = 0;
  Instance instance;
  int ground = 0;
  int rank = 0;
  std::optional<Rational> solver_weight;
  std::optional<Rational> oracle_weight;
  bool oracle_equal = false;
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool optimal_pair = false;
  bool half_integral = false;
  TerminationCheck termination;
  bool termination_ok = false;
  bool perfect_agrees = true;
  std::string error;

  bool pass() const {
    return error.empty() && oracle_equal && primal_feasible && dual_feasible &&
           optimal_pair && half_integral && termination_ok && perfect_agrees;
  }
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepEntry> entries;

  long passed() const {
    long n = 0;
    for (const auto& e : entries) n += e.pass();
    return n;
  }
  bool all_pass() const { return passed() == static_cast<long>(entries.size()); }
};

inline SweepEntry sweep_one(const SweepConfig& cfg, std::uint64_t index,
                            const WeightSolver& solver) {
  SweepEntry e;
  e.index = index;
  e.instance = random_instance(cfg.seed, index, cfg.instances);
  const Instance& in = e.instance;
  try {
    const Matroid m = in.spec.build();
    e.ground = m.ground_size();
    e.rank = m.rank();
    e.oracle_weight = brute_force_optimum(m, in.lines, in.weights, false);
    const WeightedResult r = solver(m, in.lines, in.weights);
    e.solver_weight = r.weight;
    e.oracle_equal = e.oracle_weight && *e.oracle_weight == r.weight;
    e.primal_feasible = verify_matching(m, in.lines, r.x).pass();
    e.dual_feasible = verify_dual(m, in.lines, in.weights, r.dual, false).pass();
    e.optimal_pair =
        verify_optimal_pair(m, in.lines, in.weights, r.x, r.dual, r.weight).pass();
    e.termination = check_termination(r.trace, e.rank);
    e.termination_ok = e.termination.pass();
    bool integral = true;
    for (const auto& q : in.weights) integral = integral && is_integer(q);
    e.half_integral = !integral ||
        verify_half_integral_dual(m, in.lines, in.weights,
                                  half_integer_dual(m, in.lines, in.weights)).pass();
    if (cfg.perfect_variant) {
      const auto oracle = brute_force_optimum(m, in.lines, in.weights, true);
      std::optional<Rational> got;
      try {
        got = solve_max_weight_perfect(m, in.lines, in.weights).weight;
      } catch (const NoPerfectMatching&) {
      }
      e.perfect_agrees = oracle == got;
    }
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

// Instances are generated per index, so the report depends only on the
// configuration and is identical across runs.
inline SweepReport run_sweep(const SweepConfig& cfg, const WeightSolver& solver = {}) {
  const WeightSolver use = solver ? solver : WeightSolver([](const Matroid& m, const LineSet& l,
                                                             const std::vector<Rational>& w) {
    return solve_max_weight(m, l, w);
  });
  SweepReport rep;
  rep.config = cfg;
  for (long i = 0; i < cfg.count; ++i) {
    rep.entries.push_back(sweep_one(cfg, static_cast<std::uint64_t>(i), use));
  }
  return rep;
}

namespace io {

inline Json to_json(const SweepEntry& e) {
  Json j;
  j["index"] = e.index;
  j["instance"] = to_json(e.instance);
  j["ground"] = e.ground;
  j["rank"] = e.rank;
  j["solver"] = e.solver_weight ? Json(to_string(*e.solver_weight)) : Json(nullptr);
  j["oracle"] = e.oracle_weight ? Json(to_string(*e.oracle_weight)) : Json(nullptr);
  j["oracle_equal"] = e.oracle_equal;
  j["primal_feasible"] = e.primal_feasible;
  j["dual_feasible"] = e.dual_feasible;
  j["optimal_pair"] = e.optimal_pair;
  j["half_integral"] = e.half_integral;
  j["termination"] = {{"pass", e.termination_ok},
                      {"iterations", e.termination.iterations},
                      {"lexicographic", e.termination.lexicographic},
                      {"psi_bounded", e.termination.psi_bounded},
                      {"within_cap", e.termination.within_cap}};
  j["perfect_agrees"] = e.perfect_agrees;
  j["error"] = e.error.empty() ? Json(nullptr) : Json(e.error);
  j["pass"] = e.pass();
  return j;
}

inline Json to_json(const SweepReport& r) {
  Json j;
  j["seed"] = r.config.seed;
  j["count"] = r.config.count;
  j["max_elements"] = r.config.instances.max_elements;
  j["max_lines"] = r.config.instances.max_lines;
  j["passed"] = r.passed();
  j["failed"] = static_cast<long>(r.entries.size()) - r.passed();
  Json es = Json::array();
  for (const auto& e : r.entries) es.push_back(to_json(e));
  j["entries"] = es;
  return j;
}

}  // namespace io

}  // namespace fracmat
