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


#include <gtest/gtest.h>

#include "fracmat/sweep.hpp"

namespace fracmat {
namespace {

SweepConfig small(long count) {
  SweepConfig cfg;
  cfg.seed = 11;
  cfg.count = count;
  cfg.instances.max_elements = 6;
  cfg.instances.max_lines = 5;
  return cfg;
}

TEST(Sweep, EmptyRun) {
  const SweepReport r = run_sweep(small(0));
  EXPECT_TRUE(r.entries.empty());
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(io::to_json(r)["failed"], 0);
}

TEST(Sweep, CorrectSolverPassesEverything) {
  const SweepReport r = run_sweep(small(25));
  ASSERT_EQ(r.entries.size(), 25u);
  for (const auto& e : r.entries) EXPECT_TRUE(e.pass()) << "instance " << e.index << " " << e.error;
}

TEST(Sweep, DeterministicPerSeed) {
  EXPECT_EQ(io::to_json(run_sweep(small(10))).dump(), io::to_json(run_sweep(small(10))).dump());
  SweepConfig other = small(10);
  other.seed = 12;
  EXPECT_NE(io::to_json(run_sweep(small(10))).dump(), io::to_json(run_sweep(other)).dump());
}

TEST(Sweep, InstancesAreIndependentOfCount) {
  const SweepReport a = run_sweep(small(4));
  const SweepReport b = run_sweep(small(8));
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(io::to_json(a.entries[i].instance), io::to_json(b.entries[i].instance));
  }
}

TEST(Sweep, BrokenSolverIsReported) {
  // Scales the correct answer down by half: feasible but not optimal.
  const WeightSolver halved = [](const Matroid& m, const LineSet& l,
                                 const std::vector<Rational>& w) {
    WeightedResult r = solve_max_weight(m, l, w);
    for (auto& q : r.x) q /= 2;
    r.weight = dot(w, r.x);
    return r;
  };
  const SweepReport r = run_sweep(small(15), halved);
  EXPECT_FALSE(r.all_pass());
  long caught = 0;
  for (const auto& e : r.entries) {
    if (e.solver_weight && e.oracle_weight && *e.oracle_weight > 0) {
      EXPECT_FALSE(e.oracle_equal);
      EXPECT_FALSE(e.optimal_pair);
      ++caught;
    }
  }
  EXPECT_GT(caught, 0);
}

TEST(Sweep, ThrowingSolverBecomesAnErrorEntry) {
  const WeightSolver broken = [](const Matroid&, const LineSet&,
                                 const std::vector<Rational>&) -> WeightedResult {
    throw InternalError("solver exploded");
  };
  const SweepReport r = run_sweep(small(3), broken);
  for (const auto& e : r.entries) {
    EXPECT_FALSE(e.pass());
    EXPECT_EQ(e.error, "solver exploded");
  }
}

TEST(RandomInstances, RespectTheLimits) {
  RandomInstanceConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Instance in = random_instance(5, i, cfg);
    const Matroid m = in.spec.build();
    EXPECT_LE(m.ground_size(), cfg.max_elements);
    EXPECT_LE(m.rank(), cfg.max_rank);
    EXPECT_LE(static_cast<int>(in.lines.size()), cfg.max_lines);
    EXPECT_NO_THROW(validate_instance(m, in.lines));
    for (const auto& q : in.weights) {
      EXPECT_TRUE(is_integer(q));
      EXPECT_GE(q, 0);
      EXPECT_LE(q, cfg.max_weight);
    }
  }
}

}  // namespace
}  // namespace fracmat
