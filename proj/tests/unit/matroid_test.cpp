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

#include "fracmat/matroid.hpp"

namespace fracmat {
namespace {

ElementSet set(std::initializer_list<int> xs) { return ElementSet(xs); }

Matroid triangle_graph() { return Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}}); }

TEST(Rank, FreeMatroidCountsElements) {
  EXPECT_EQ(Matroid::free(3).rank(set({0, 1})), 2);
  EXPECT_EQ(Matroid::free(3).rank(ElementSet{}), 0);
}

TEST(Rank, UniformMatroidIsCapped) {
  EXPECT_EQ(Matroid::uniform(4, 2).rank(set({0, 1, 2})), 2);
}

TEST(Rank, GraphicTriangleHasRankTwo) {
  EXPECT_EQ(triangle_graph().rank(set({0, 1, 2})), 2);
}

TEST(Rank, LinearOverGF2) {
  // Columns e1, e2, e1 + e2: a three-element circuit.
  const Matroid m = Matroid::linear_gf(2, {{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(m.rank(), 2);
  EXPECT_EQ(m.rank(set({0, 2})), 2);
  EXPECT_EQ(m.closure(set({0, 1})).elements, set({0, 1, 2}));
}

TEST(Rank, LinearOverRationals) {
  const Matroid m = Matroid::linear_q({{Rational(1), Rational(2)},
                                       {Rational(2), Rational(4)},
                                       {Rational(0), Rational(1)}});
  EXPECT_EQ(m.rank(set({0, 1})), 1);
  EXPECT_EQ(m.rank(), 2);
}

TEST(Rank, PartitionMatroid) {
  const Matroid m = Matroid::partition({2, 3}, {1, 2});
  EXPECT_EQ(m.rank(set({0, 1})), 1);
  EXPECT_EQ(m.rank(set({2, 3, 4})), 2);
  EXPECT_EQ(m.rank(), 3);
}

TEST(Rank, RejectsOutOfRangeSets) {
  EXPECT_THROW(Matroid::free(2).rank(set({2})), InvalidArgument);
}

TEST(Closure, FreeMatroidSetsAreClosed) {
  EXPECT_EQ(Matroid::free(3).closure(set({0})).elements, set({0}));
}

TEST(Closure, UniformSpanningSet) {
  const Flat f = Matroid::uniform(4, 2).closure(set({0, 1}));
  EXPECT_EQ(f.elements, set({0, 1, 2, 3}));
  EXPECT_EQ(f.rank, 2);
}

TEST(Closure, GraphicCycleIsSpanned) {
  EXPECT_EQ(triangle_graph().closure(set({0, 1})).elements, set({0, 1, 2}));
}

TEST(Flats, FreeTwo) {
  const auto flats = enumerate_flats(Matroid::free(2));
  ASSERT_EQ(flats.size(), 4u);
  EXPECT_EQ(flats.front().elements, ElementSet{});
  EXPECT_EQ(flats.back().elements, set({0, 1}));
}

TEST(Flats, UniformThreeTwo) {
  EXPECT_EQ(enumerate_flats(Matroid::uniform(3, 2)).size(), 5u);
}

TEST(Flats, GraphicTriangle) {
  EXPECT_EQ(enumerate_flats(triangle_graph()).size(), 5u);
}

TEST(Flats, FreeThreeHasEight) {
  EXPECT_EQ(enumerate_flats(Matroid::free(3)).size(), 8u);
}

TEST(Flats, OrderedByRank) {
  const auto flats = enumerate_flats(Matroid::uniform(5, 3));
  for (std::size_t i = 1; i < flats.size(); ++i) EXPECT_LE(flats[i - 1].rank, flats[i].rank);
}

TEST(Flats, BudgetIsEnforced) {
  try {
    enumerate_flats(Matroid::free(8), 10);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.cap(), 10);
  }
}

TEST(Lattice, NestedFlats) {
  const Matroid m = Matroid::free(3);
  EXPECT_EQ(join(m, set({0}), set({0, 1})).elements, set({0, 1}));
  EXPECT_EQ(meet(m, set({0}), set({0, 1})).elements, set({0}));
}

TEST(Lattice, UniformJoinSpans) {
  const Matroid m = Matroid::uniform(4, 2);
  EXPECT_EQ(join(m, set({0}), set({1})).elements, set({0, 1, 2, 3}));
  EXPECT_EQ(meet(m, set({0}), set({1})).elements, ElementSet{});
}

TEST(Lattice, GraphicJoin) {
  const Matroid m = triangle_graph();
  EXPECT_EQ(join(m, set({0}), set({1})).elements, set({0, 1, 2}));
  EXPECT_EQ(meet(m, set({0}), set({1})).elements, ElementSet{});
}

TEST(Degree, ThreeCases) {
  const ElementSet line = set({0, 1});
  EXPECT_EQ(degree(ElementSet{}, line), 0);
  EXPECT_EQ(degree(set({0}), line), 1);
  EXPECT_EQ(degree(set({0, 1, 2}), line), 2);
  EXPECT_EQ(degree_vector(set({1}), {set({0, 1}), set({2}), set({1})}),
            (DegreeVector{1, 0, 2}));
}

TEST(Star, EmptyChainIsIdentity) {
  const Matroid m = Matroid::uniform(4, 2);
  const Matroid s = star(m, Chain::of(m, {}));
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const ElementSet x = ElementSet(mask);
    EXPECT_EQ(s.rank(x), m.rank(x));
  }
}

TEST(Star, ContractionRankFormula) {
  const Matroid m = Matroid::uniform(3, 2);
  const Matroid s = star(m, Chain::of(m, {set({0})}));
  EXPECT_EQ(s.rank(set({1, 2})), 1);
  EXPECT_EQ(s.rank(set({0, 1, 2})), 2);
}

TEST(Star, RankNeverExceedsBase) {
  const Matroid m = Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}});
  const Chain c = Chain::of(m, {set({0, 1, 2})});
  const Matroid s = star(m, c);
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    const ElementSet x = ElementSet(mask);
    EXPECT_LE(s.rank(x), m.rank(x));
  }
}

TEST(StarClosure, EmptyChainIsOrdinaryClosure) {
  const Matroid m = Matroid::uniform(4, 2);
  EXPECT_EQ(star_closure(m, Chain::of(m, {}), set({0, 1})), set({0, 1, 2, 3}));
}

TEST(StarClosure, FlatsOfTheStarAreFixed) {
  const Matroid m = Matroid::uniform(4, 3);
  const Chain c = Chain::of(m, {set({0})});
  const Matroid s = star(m, c);
  for (const Flat& f : enumerate_flats(s)) EXPECT_EQ(star_closure(m, c, f.elements), f.elements);
}

TEST(Chain, RejectsNonFlatsAndNonNested) {
  const Matroid m = Matroid::uniform(4, 2);
  EXPECT_THROW(Chain::of(m, {set({0, 1})}), InvalidArgument);  // spans E
  const Matroid f = Matroid::free(3);
  EXPECT_THROW(Chain::of(f, {set({0}), set({1})}), InvalidArgument);
  EXPECT_NO_THROW(Chain::of(f, {set({0}), set({0, 1})}));
}

TEST(Validate, AcceptsLines) {
  EXPECT_NO_THROW(validate_instance(Matroid::free(3), {set({0, 1})}));
}

TEST(Validate, ReportsLoops) {
  // Column 2 is zero, so element 2 is a loop.
  const Matroid m = Matroid::linear_gf(2, {{1, 0}, {0, 1}, {0, 0}});
  try {
    validate_instance(m, {set({0, 1})});
    FAIL() << "expected LoopsPresent";
  } catch (const LoopsPresent& e) {
    EXPECT_EQ(e.element(), 2);
  }
}

TEST(Validate, RejectsRankThreeLine) {
  EXPECT_THROW(validate_instance(Matroid::free(4), {set({0, 1, 2})}), NotALine);
}

TEST(GreedyBase, IsABase) {
  const Matroid m = Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const ElementSet b = greedy_base(m);
  EXPECT_EQ(b.size(), m.rank());
  EXPECT_EQ(m.rank(b), m.rank());
}

}  // namespace
}  // namespace fracmat
