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

#include <algorithm>

#include "fracmat/certification.hpp"
#include "fracmat/weighted_solver.hpp"

namespace fracmat {
namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

const ElementSet kE3{0, 1, 2};
const LineSet kTriangle{{0, 1}, {1, 2}, {0, 2}};
const std::vector<Rational> kOnes3{q(1), q(1), q(1)};
const std::vector<Rational> kHalves3{q(1, 2), q(1, 2), q(1, 2)};

TEST(VerifyMatching, ZeroPasses) {
  EXPECT_TRUE(verify_matching(Matroid::free(3), kTriangle, {q(0), q(0), q(0)}).pass());
}

TEST(VerifyMatching, TriangleHalves) {
  const Certificate c = verify_matching(Matroid::free(3), kTriangle, kHalves3);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("size"), "3/2");
}

TEST(VerifyMatching, OverloadedMatchingFailsAtTheFirstFlat) {
  // a(E).x = 4 > 3, but flats are checked by increasing rank and
  // a({1}).x = 2 > 1 comes first.
  const Matroid m = Matroid::free(3);
  const std::vector<Rational> x{q(1), q(1), q(0)};
  const Certificate c = verify_matching(m, kTriangle, x);
  ASSERT_FALSE(c.pass());
  EXPECT_EQ(c.violation->what, "flat constraint violated");
  EXPECT_EQ(c.violation->data.at("flat"), "{1}");
  EXPECT_EQ(c.violation->data.at("lhs"), "2");
  Rational at_e = 0;
  for (std::size_t l = 0; l < 3; ++l) at_e += degree(kE3, kTriangle[l]) * x[l];
  EXPECT_EQ(at_e, 4);
}

TEST(VerifyMatching, NegativeAndPerfect) {
  const Matroid m = Matroid::free(3);
  EXPECT_EQ(verify_matching(m, kTriangle, {q(-1), q(0), q(0)}).violation->what, "negative entry");
  EXPECT_TRUE(verify_matching(m, kTriangle, kHalves3, kDefaultFlatBudget, true).pass());
  EXPECT_EQ(verify_matching(m, kTriangle, {q(1, 2), q(0), q(0)}, kDefaultFlatBudget, true)
                .violation->what,
            "not perfect");
}

TEST(VerifyDual, InitialDualIsFeasible) {
  const Matroid m = Matroid::free(3);
  const std::vector<Rational> w{q(4), q(2), q(1)};
  FormalSum y;
  y.add(kE3, q(2));
  EXPECT_TRUE(verify_dual(m, kTriangle, w, y, false).pass());
}

TEST(VerifyDual, ZeroDualFailsPositiveWeights) {
  const Certificate c = verify_dual(Matroid::free(3), kTriangle, kOnes3, FormalSum{}, false);
  ASSERT_FALSE(c.pass());
  EXPECT_EQ(c.violation->what, "a(y) below w");
  EXPECT_EQ(c.violation->data.at("line"), "0");
}

TEST(VerifyDual, SignRuleDependsOnVariant) {
  const Matroid m = Matroid::free(3);
  FormalSum y;
  y.add(kE3, q(-1));
  y.add({0, 1}, q(3));
  y.add({1, 2}, q(3));
  y.add({0, 2}, q(3));
  EXPECT_TRUE(verify_dual(m, kTriangle, kOnes3, y, true).pass());
  EXPECT_EQ(verify_dual(m, kTriangle, kOnes3, y, false).violation->what, "negative coefficient");
}

TEST(VerifyDual, TermsMustBeFlats) {
  FormalSum y;
  y.add({0, 1}, q(1));
  EXPECT_EQ(verify_dual(Matroid::uniform(3, 2), {{0, 1}}, {q(1)}, y, false).violation->what,
            "term is not a flat");
}

TEST(VerifyOptimalPair, SolverOutputPasses) {
  const Matroid m = Matroid::free(3);
  const std::vector<Rational> w{q(2), q(1), q(1)};
  const WeightedResult r = solve_max_weight_perfect(m, kTriangle, w);
  EXPECT_TRUE(verify_optimal_pair(m, kTriangle, w, r.x, r.dual, r.weight).pass());
}

TEST(VerifyOptimalPair, PerturbedDualOpensAGap) {
  const Matroid m = Matroid::free(3);
  const WeightedResult r = solve_max_weight(m, kTriangle, kOnes3);
  FormalSum y = r.dual;
  y.add(kE3, q(1));
  EXPECT_EQ(verify_optimal_pair(m, kTriangle, kOnes3, r.x, y).violation->what, "objective gap");
}

TEST(VerifyOptimalPair, ZeroWeightsAndZeroDual) {
  const std::vector<Rational> zero{q(0), q(0), q(0)};
  EXPECT_TRUE(verify_optimal_pair(Matroid::free(3), kTriangle, zero, kHalves3, FormalSum{}).pass());
}

TEST(VerifyOptimalPair, ClaimedObjectiveMustMatch) {
  const Matroid m = Matroid::free(3);
  FormalSum y;
  y.add(kE3, q(1, 2));
  EXPECT_TRUE(verify_optimal_pair(m, kTriangle, kOnes3, kHalves3, y, q(3, 2)).pass());
  EXPECT_EQ(verify_optimal_pair(m, kTriangle, kOnes3, kHalves3, y, q(2)).violation->what,
            "claimed objective differs");
}

TEST(VerifyOptimalPair, SlacknessOnTheMatchingSide) {
  // Equal objectives, but y is not dual feasible and line 0, in supp(x), is
  // not tight: the pair check does not rely on the individual checks.
  const Matroid m = Matroid::free(2);
  const LineSet lines{{0}, {1}};
  const std::vector<Rational> w{q(1), q(1)};
  FormalSum y;
  y.add({0}, q(1, 4));
  y.add({1}, q(1, 4));
  const Certificate c = verify_optimal_pair(m, lines, w, {q(1, 2), q(0)}, y);
  ASSERT_FALSE(c.pass());
  EXPECT_EQ(c.violation->what, "line in supp(x) not tight in the dual");
}

TEST(VerifyOptimalPair, SlacknessOnTheDualSide) {
  // Both lines are tight in the dual and the objectives agree, but x is
  // slack on the flat {0} in supp(y).
  const Matroid m = Matroid::free(3);
  const LineSet lines{{0, 1}, {2}};
  FormalSum y;
  y.add({0}, q(1));
  y.add({2}, q(1, 2));
  const Certificate c = verify_optimal_pair(m, lines, {q(1), q(1)}, {q(1, 2), q(1)}, y);
  ASSERT_FALSE(c.pass());
  EXPECT_EQ(c.violation->what, "flat in supp(y) not tight in the primal");
  EXPECT_EQ(c.violation->data.at("flat"), "{0}");
}

TEST(Oracle, TriangleOptimum) {
  EXPECT_EQ(brute_force_optimum(Matroid::free(3), kTriangle, kOnes3, false), q(3, 2));
  EXPECT_EQ(brute_force_optimum(Matroid::free(3), kTriangle, kOnes3, true), q(3, 2));
}

TEST(Oracle, NoLines) {
  EXPECT_EQ(brute_force_optimum(Matroid::free(3), {}, {}, false), q(0));
  EXPECT_FALSE(brute_force_optimum(Matroid::free(3), {}, {}, true).has_value());
}

TEST(Oracle, PerfectInfeasible) {
  EXPECT_FALSE(brute_force_optimum(Matroid::free(4), {{0, 1}, {0, 2}, {0, 3}}, kOnes3, true));
}

TEST(Oracle, AgreesWithTheSolverOnAGraphicInstance) {
  const Matroid m = Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const LineSet lines{{0, 5}, {1, 4}, {2, 3}, {0, 1}, {3, 4}};
  const std::vector<Rational> w{q(3), q(2), q(5, 2), q(1), q(4)};
  EXPECT_EQ(brute_force_optimum(m, lines, w, false), solve_max_weight(m, lines, w).weight);
  EXPECT_EQ(brute_force_optimum(m, lines, w, true), solve_max_weight_perfect(m, lines, w).weight);
}

TEST(Oracle, RefusesLargeGroundSets) {
  EXPECT_THROW(brute_force_optimum(Matroid::free(21), {{0, 1}}, {q(1)}, false), BudgetExceeded);
}

TEST(HalfIntegral, TriangleDual) {
  FormalSum y;
  y.add(kE3, q(1, 2));
  EXPECT_TRUE(verify_half_integral_dual(Matroid::free(3), kTriangle, kOnes3, y).pass());
  FormalSum third;
  third.add(kE3, q(2, 3));
  EXPECT_EQ(verify_half_integral_dual(Matroid::free(3), kTriangle, kOnes3, third).violation->what,
            "coefficient not in (1/2)Z");
}

TEST(Vertices, TriangleIncludesAllHalves) {
  const auto vs = enumerate_optimal_vertices(Matroid::free(3), kTriangle, kOnes3);
  EXPECT_EQ(vs, std::vector<std::vector<Rational>>{kHalves3});
}

TEST(Vertices, UniqueOptimum) {
  const auto vs = enumerate_optimal_vertices(Matroid::free(3), kTriangle, {q(3), q(1), q(1)});
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs.front(), (std::vector<Rational>{q(1), q(0), q(0)}));
}

TEST(Vertices, FaceWithSeveralVertices) {
  // Zero weight on the second line: every optimal vertex has x_0 = 1 but
  // x_1 ranges over [0, 1/2] ... the face has two vertices.
  const Matroid m = Matroid::free(3);
  const LineSet lines{{0, 1}, {2}};
  const auto vs = enumerate_optimal_vertices(m, lines, {q(1), q(0)});
  ASSERT_EQ(vs.size(), 2u);
  for (const auto& v : vs) {
    EXPECT_EQ(v[0], 1);
    EXPECT_TRUE(is_half_integer(v[1]));
  }
}

TEST(TightClosure, ZeroVector) {
  const Matroid m = Matroid::free(2);
  const LineSet lines{{0, 1}};
  const Certificate c = verify_tight_closure(m, lines, {q(0)});
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("literal"), "holds");
}

TEST(TightClosure, TriangleReportsBothReadings) {
  const Certificate c = verify_tight_closure(Matroid::free(3), kTriangle, kHalves3);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("|x|"), "3/2");
  EXPECT_EQ(c.notes.at("r(cl(x))"), "3");
  EXPECT_EQ(c.notes.at("literal"), "fails");
  EXPECT_EQ(c.notes.at("doubled"), "holds");
}

TEST(TightClosure, RefusesNonVertices) {
  EXPECT_THROW(verify_tight_closure(Matroid::free(3), kTriangle, {q(1, 4), q(1, 4), q(1, 4)}),
               InvalidArgument);
  EXPECT_THROW(verify_tight_closure(Matroid::free(3), kTriangle, {q(1), q(1), q(0)}),
               InvalidArgument);
}

TEST(Dominant, TriangleCover) {
  const Matroid m = Matroid::free(3);
  const Certificate c = verify_dominant(m, kTriangle, dominant_cover(m, kTriangle).cover);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("intersection"), kE3.to_string());
  EXPECT_FALSE(verify_dominant(m, kTriangle, Cover{kE3, kE3}).pass());
}

TEST(Dominant, UniqueCoverIsDominant) {
  const Matroid m = Matroid::free(3);
  const Certificate c = verify_dominant(m, kTriangle, Cover{ElementSet{}, kE3});
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("minimum covers"), "1");
}

TEST(Dominant, SingleLineHasThreeMinimumCovers) {
  // ({}, E), ({0}, {0}) and ({1}, {1}) all have value 1.
  const Matroid m = Matroid::free(2);
  const LineSet lines{{0, 1}};
  const Certificate c = verify_dominant(m, lines, dominant_cover(m, lines).cover);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.notes.at("minimum covers"), "3");
  EXPECT_FALSE(verify_dominant(m, lines, Cover{{0}, {0}}).pass());
}

TEST(Dominant, NonDominantMinimumCoverIsRejected) {
  const Matroid m = Matroid::uniform(4, 3);
  const LineSet lines{{0, 1}, {0, 2}, {3}};
  const DominantCoverResult d = dominant_cover(m, lines);
  EXPECT_TRUE(verify_dominant(m, lines, d.cover).pass());
  for (const Cover& c : d.minimum_covers) {
    if (c == d.cover) continue;
    EXPECT_FALSE(verify_dominant(m, lines, c).pass());
  }
}

TEST(Lift, EmptyChain) {
  const Matroid m = Matroid::free(3);
  EXPECT_TRUE(verify_lift(m, Chain::of(m, {}), kTriangle, kHalves3).pass());
}

TEST(Lift, ReportsWithoutClaimingTheConverse) {
  // x is feasible in M but the chain flat {0,1} is slack; the verifier
  // reports the facts and does not fail.
  const Matroid m = Matroid::free(3);
  const Chain c = Chain::of(m, {{0, 1}});
  const Certificate cert = verify_lift(m, c, kTriangle, {q(0), q(1, 2), q(1, 2)});
  EXPECT_TRUE(cert.pass());
  EXPECT_EQ(cert.notes.at("chain-tight"), "no");
}

TEST(Lift, TightChainTransfers) {
  const Matroid m = Matroid::free(3);
  const Chain c = Chain::of(m, {{0, 1}});
  const Certificate cert = verify_lift(m, c, kTriangle, {q(1), q(0), q(0)});
  EXPECT_TRUE(cert.pass());
  EXPECT_EQ(cert.notes.at("chain-tight"), "yes");
  EXPECT_EQ(cert.notes.at("star-feasible"), "yes");
}

}  // namespace
}  // namespace fracmat
