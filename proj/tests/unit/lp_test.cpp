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

#include "fracmat/lp.hpp"

namespace fracmat {
namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

// Strong duality and dual feasibility for max c.x, Ax <= b, x >= 0.
void expect_certified(const LinearProgram& lp, const LPSolution& s) {
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  Rational by = 0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    EXPECT_GE(s.dual[i], 0);
    by += lp.rhs[i] * s.dual[i];
  }
  EXPECT_EQ(by, s.objective_value);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) col += lp.rows[i][j] * s.dual[i];
    EXPECT_GE(col, lp.objective[j]);
  }
  EXPECT_EQ(dot(lp.objective, s.primal), s.objective_value);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2")), "-2");
  EXPECT_THROW(parse_rational(""), InvalidArgument);
  EXPECT_THROW(parse_rational("1/x"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
}

TEST(Rational, RatioIsCanonical) {
  EXPECT_EQ(ratio(2, 2), Rational(1));
  EXPECT_EQ(ratio(-4, 6), q(-2, 3));
  EXPECT_THROW(ratio(1, 0), InvalidArgument);
  EXPECT_TRUE(is_half_integer(q(5, 2)));
  EXPECT_FALSE(is_half_integer(q(1, 3)));
}

TEST(Simplex, SingleBound) {
  const LinearProgram lp{{q(1)}, {{q(1)}}, {q(1)}};
  const LPSolution s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  EXPECT_EQ(s.primal[0], 1);
  EXPECT_EQ(s.dual[0], 1);
  expect_certified(lp, s);
}

TEST(Simplex, FractionalValue) {
  const LinearProgram lp{{q(1), q(1)}, {{q(1), q(1)}}, {q(3, 2)}};
  const LPSolution s = solve(lp);
  EXPECT_EQ(s.objective_value, q(3, 2));
  expect_certified(lp, s);
}

TEST(Simplex, TriangleMatchingSystem) {
  // The 7 nontrivial flats of free(3) against the three pair lines.
  const LinearProgram lp{{q(1), q(1), q(1)},
                         {{q(1), q(0), q(1)},
                          {q(1), q(1), q(0)},
                          {q(0), q(1), q(1)},
                          {q(2), q(1), q(1)},
                          {q(1), q(2), q(1)},
                          {q(1), q(1), q(2)},
                          {q(2), q(2), q(2)}},
                         {q(1), q(1), q(1), q(2), q(2), q(2), q(3)}};
  const LPSolution s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  EXPECT_EQ(s.objective_value, q(3, 2));
  EXPECT_EQ(s.primal, (std::vector<Rational>{q(1, 2), q(1, 2), q(1, 2)}));
  expect_certified(lp, s);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  const LinearProgram lp{{q(3, 4), q(-20), q(1, 2), q(-6)},
                         {{q(1, 4), q(-8), q(-1), q(9)},
                          {q(1, 2), q(-12), q(-1, 2), q(3)},
                          {q(0), q(0), q(1), q(0)}},
                         {q(0), q(0), q(1)}};
  const LPSolution s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  EXPECT_EQ(s.objective_value, q(5, 4));
  expect_certified(lp, s);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  EXPECT_EQ(solve(LinearProgram{{q(1)}, {{q(1)}}, {q(-1)}}).status, LPStatus::kInfeasible);
  EXPECT_EQ(solve(LinearProgram{{q(1)}, {{q(-1)}}, {q(1)}}).status, LPStatus::kUnbounded);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne) {
  // max x1 + x2, x1 + x2 <= 4, -x1 <= -1 (x1 >= 1), -x2 <= -2 (x2 >= 2).
  const LinearProgram lp{{q(1), q(1)},
                         {{q(1), q(1)}, {q(-1), q(0)}, {q(0), q(-1)}},
                         {q(4), q(-1), q(-2)}};
  const LPSolution s = solve(lp);
  EXPECT_EQ(s.objective_value, 4);
  expect_certified(lp, s);
}

TEST(Simplex, DimensionChecks) {
  EXPECT_THROW(solve(LinearProgram{{q(1)}, {{q(1), q(1)}}, {q(1)}}), DimensionMismatch);
  EXPECT_THROW(solve(LinearProgram{{q(1)}, {{q(1)}}, {}}), DimensionMismatch);
}

TEST(RestrictedDual, AllRowsMatchesFullSolve) {
  const LinearProgram lp{{q(2), q(3)},
                         {{q(1), q(1)}, {q(1), q(2)}, {q(3), q(1)}},
                         {q(4), q(6), q(9)}};
  const LPSolution full = solve(lp);
  const LPSolution r = solve_restricted_dual(lp, {0, 1, 2});
  ASSERT_EQ(r.status, LPStatus::kOptimal);
  EXPECT_EQ(r.objective_value, full.objective_value);
}

TEST(RestrictedDual, EmptySupportIsInfeasible) {
  const LinearProgram lp{{q(1), q(0)}, {{q(1), q(1)}}, {q(1)}};
  EXPECT_EQ(solve_restricted_dual(lp, {}).status, LPStatus::kInfeasible);
}

TEST(RestrictedDual, DualIsZeroOffSupport) {
  const LinearProgram lp{{q(1), q(1)},
                         {{q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}},
                         {q(5), q(1), q(5)}};
  const LPSolution r = solve_restricted_dual(lp, {1});
  ASSERT_EQ(r.status, LPStatus::kOptimal);
  EXPECT_EQ(r.objective_value, 1);
  EXPECT_EQ(r.dual, (std::vector<Rational>{q(0), q(1), q(0)}));
  EXPECT_THROW(solve_restricted_dual(lp, {3}), InvalidArgument);
}

}  // namespace
}  // namespace fracmat
