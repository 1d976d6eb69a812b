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


// Walks through the triangle instance: the free matroid on {0,1,2} with the
// three pairs as lines. Prints the maximum-size matching, the optimal
// vertices, the dominant cover and a weighted solve with its certificates.

#include <iostream>

#include "fracmat/fracmat.hpp"

int main() {
  using namespace fracmat;

  const Matroid m = Matroid::free(3);
  const LineSet lines{{0, 1}, {1, 2}, {0, 2}};
  validate_instance(m, lines);

  const MaxSizeResult ms = max_size_matching(m, lines);
  std::cout << "nu* = " << to_string(ms.nu) << "\n";

  const std::vector<Rational> ones3 = ones(lines.size());
  for (const auto& v : enumerate_optimal_vertices(m, lines, ones3)) {
    std::cout << "optimal vertex:";
    for (const auto& q : v) std::cout << " " << to_string(q);
    const Certificate c = verify_tight_closure(m, lines, v);
    std::cout << "  |x| = " << c.notes.at("|x|") << ", r(cl x) = " << c.notes.at("r(cl(x))")
              << "\n";
  }

  const DominantCoverResult dom = dominant_cover(m, lines);
  std::cout << "dominant cover: S* = " << dom.cover.s.to_string()
            << ", T* = " << dom.cover.t.to_string() << "\n";

  const std::vector<Rational> w{Rational(3), Rational(1), Rational(1)};
  const WeightedResult r = solve_max_weight(m, lines, w);
  std::cout << "max weight for w = (3,1,1): " << to_string(r.weight) << " at x =";
  for (const auto& q : r.x) std::cout << " " << to_string(q);
  std::cout << "\n";
  for (const Certificate& c : {verify_matching(m, lines, r.x),
                               verify_dual(m, lines, w, r.dual, false),
                               verify_optimal_pair(m, lines, w, r.x, r.dual, r.weight)}) {
    std::cout << "  " << c.kind << ": " << (c.pass() ? "pass" : "fail") << "\n";
  }
  return 0;
}
