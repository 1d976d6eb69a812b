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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracmat/certification.hpp"
#include "fracmat/element_set.hpp"
#include "fracmat/fmm.hpp"
#include "fracmat/instance.hpp"
#include "fracmat/lp.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/weighted_solver.hpp"

// Randomized checks of the structural facts the solver relies on: lattice
// inequalities for rank and degree, the blockwise rank and flats of M * F,
// lifting fractional matchings between M and M * F, and the two
// monotonicity properties of the progress potential phi.
namespace fracmat::properties {

struct PropertyReport {
  std::string name;
  long checks = 0;
  long violations = 0;
  long boundary = 0;  // checks that hit the equality / positive case
  std::string first_violation;

  bool pass() const { return violations == 0 && checks > 0; }
};

struct PropertyConfig {
  std::uint64_t seed = 1;
  long checks = 1000;      // per property
  long max_attempts = 0;   // 0 = 50 * checks
  RandomInstanceConfig instances{8, 4, 6, 6, {"uniform", "free", "graphic", "linear_gf"}};
};

namespace detail {

struct Sample {
  Matroid m;
  LineSet lines;
  std::vector<Flat> flats;
  std::mt19937_64 rng;
};

inline ElementSet random_subset(std::mt19937_64& rng, ElementSet of) {
  ElementSet out;
  for (int e : of.elements()) {
    if (rng() & 1) out.insert(e);
  }
  return out;
}

inline const Flat& random_flat(Sample& s) {
  return s.flats[s.rng() % s.flats.size()];
}

// Random chain built from proper nonempty flats among `pool`, each added
// when comparable with every flat chosen so far.
inline Chain random_chain(Sample& s, const std::vector<ElementSet>& pool) {
  std::vector<ElementSet> order = pool;
  std::shuffle(order.begin(), order.end(), s.rng);
  const std::size_t want = s.rng() % 4;
  std::vector<ElementSet> chosen;
  for (ElementSet f : order) {
    if (chosen.size() >= want) break;
    if (f.empty() || f == s.m.ground()) continue;
    const bool comparable = std::all_of(chosen.begin(), chosen.end(), [&](ElementSet g) {
      return f != g && (f.subset_of(g) || g.subset_of(f));
    });
    if (comparable) chosen.push_back(f);
  }
  return Chain::of(s.m, std::move(chosen));
}

inline Chain random_chain(Sample& s) {
  std::vector<ElementSet> pool;
  for (const Flat& f : s.flats) pool.push_back(f.elements);
  return random_chain(s, pool);
}

inline std::vector<Rational> random_weights(Sample& s) {
  std::vector<Rational> w(s.lines.size());
  for (auto& q : w) q = Rational(static_cast<long>(s.rng() % 7));
  return w;
}

// Optimal basic solution of max w.x over the polytope of (m, lines).
inline std::vector<Rational> optimal_matching(const Matroid& m, const LineSet& lines,
                                              const std::vector<Rational>& w) {
  const LPSolution s = solve(build_constraints(m, lines).as_lp(w));
  if (s.status != LPStatus::kOptimal) throw InternalError("matching LP failed");
  return s.primal;
}

// Blockwise rank computed directly from the definition.
inline int star_rank_by_definition(const Matroid& m, const Chain& c, ElementSet x) {
  int r = 0;
  for (int i = 0; i < c.block_count(); ++i) {
    r += m.rank((x & c.block(i)) | c.level(i)) - m.rank(c.level(i));
  }
  return r;
}

struct Outcome {
  std::string why;        // input description, reported on violation
  bool boundary = false;  // the equality or positive branch was taken
};

using Check = std::function<std::optional<bool>(Sample&, Outcome&)>;

// Runs `check` on samples from the instance stream until `checks` of them
// applied (returned a value). nullopt means the drawn input did not meet the
// property's hypothesis.
inline PropertyReport run(const std::string& name, const PropertyConfig& cfg,
                          std::uint64_t salt, const Check& check) {
  PropertyReport rep{name, 0, 0, 0, {}};
  const long attempts = cfg.max_attempts > 0 ? cfg.max_attempts : 50 * cfg.checks;
  constexpr int kPerInstance = 10;
  std::uint64_t index = 0;
  for (long a = 0; a < attempts && rep.checks < cfg.checks; ++index) {
    const Instance inst = random_instance(cfg.seed ^ salt, index, cfg.instances);
    Sample s{inst.spec.build(), inst.lines, {},
             std::mt19937_64(fracmat::detail::splitmix64(cfg.seed + salt * 7919 + index))};
    s.flats = enumerate_flats(s.m);
    for (int k = 0; k < kPerInstance && a < attempts && rep.checks < cfg.checks; ++k, ++a) {
      Outcome out;
      const std::optional<bool> ok = check(s, out);
      if (!ok) continue;
      ++rep.checks;
      rep.boundary += out.boundary;
      if (!*ok) {
        if (rep.violations++ == 0) {
          rep.first_violation = "instance " + std::to_string(index) + ": " + out.why;
        }
      }
    }
  }
  return rep;
}

}  // namespace detail

// r(S) + r(T) >= r(S join T) + r(S meet T) on flats.
inline PropertyReport check_submodularity(const PropertyConfig& cfg) {
  return detail::run("rank submodularity on flats", cfg, 0x51, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Flat& a = detail::random_flat(s);
    const Flat& b = detail::random_flat(s);
    const Flat j = join(s.m, a.elements, b.elements);
    const Flat mt = meet(s.m, a.elements, b.elements);
    out.why = a.elements.to_string() + " " + b.elements.to_string();
    out.boundary = a.rank + b.rank == j.rank + mt.rank;
    return a.rank + b.rank >= j.rank + mt.rank &&
           j.rank == s.m.rank(a.elements | b.elements);
  });
}

// a(S)_l + a(T)_l <= a(S join T)_l + a(S meet T)_l for every line.
inline PropertyReport check_supermodularity(const PropertyConfig& cfg) {
  return detail::run("degree supermodularity on flats", cfg, 0x52, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    if (s.lines.empty()) return std::nullopt;
    const Flat& a = detail::random_flat(s);
    const Flat& b = detail::random_flat(s);
    const ElementSet j = join(s.m, a.elements, b.elements).elements;
    const ElementSet mt = a.elements & b.elements;
    for (const auto& l : s.lines) {
      if (degree(a.elements, l) + degree(b.elements, l) > degree(j, l) + degree(mt, l)) {
        out.why = a.elements.to_string() + " " + b.elements.to_string() + " line " + l.to_string();
        return false;
      }
    }
    return true;
  });
}

// r_{M*F}(X) is the blockwise sum and never exceeds r(X).
inline PropertyReport check_star_rank(const PropertyConfig& cfg) {
  return detail::run("star rank is blockwise and at most r", cfg, 0x53, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Chain c = detail::random_chain(s);
    const ElementSet x = detail::random_subset(s.rng, s.m.ground());
    const int rs = star(s.m, c).rank(x);
    out.why = "X=" + x.to_string();
    out.boundary = rs < s.m.rank(x);
    return rs == detail::star_rank_by_definition(s.m, c, x) && rs <= s.m.rank(x);
  });
}

// The flats of M*F are the sets whose block parts X_i give flats X_i + F_i.
inline PropertyReport check_star_flats(const PropertyConfig& cfg) {
  return detail::run("flats of M*F by blocks", cfg, 0x54, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Chain c = detail::random_chain(s);
    // Half the draws start from a flat of M*F so both outcomes occur.
    ElementSet x = detail::random_subset(s.rng, s.m.ground());
    if (s.rng() & 1) x = star_closure(s.m, c, x);
    bool blockwise = true;
    for (int i = 0; i < c.block_count(); ++i) {
      blockwise = blockwise && s.m.is_flat((x & c.block(i)) | c.level(i));
    }
    out.why = "X=" + x.to_string();
    out.boundary = blockwise;
    return blockwise == star(s.m, c).is_flat(x) &&
           star(s.m, c).closure(x).elements == star_closure(s.m, c, x);
  });
}

// For S a flat of M*F: a(S) = sum_i [a(S_i + F_i) - a(F_i)].
inline PropertyReport check_star_degree(const PropertyConfig& cfg) {
  return detail::run("degree of a star flat by blocks", cfg, 0x55, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    if (s.lines.empty()) return std::nullopt;
    const Chain c = detail::random_chain(s);
    const ElementSet sf = star_closure(s.m, c, detail::random_subset(s.rng, s.m.ground()));
    for (const auto& l : s.lines) {
      int sum = 0;
      for (int i = 0; i < c.block_count(); ++i) {
        sum += degree((sf & c.block(i)) | c.level(i), l) - degree(c.level(i), l);
      }
      if (sum != degree(sf, l)) {
        out.why = "S=" + sf.to_string() + " line " + l.to_string();
        return false;
      }
    }
    return true;
  });
}

// A fractional matching of (M*F, L) is one of (M, L).
inline PropertyReport check_lift_down(const PropertyConfig& cfg) {
  return detail::run("star matching is a base matching", cfg, 0x56, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    if (s.lines.empty()) return std::nullopt;
    const Chain c = detail::random_chain(s);
    const Matroid ms = star(s.m, c);
    const auto x = detail::optimal_matching(ms, s.lines, detail::random_weights(s));
    out.why = "chain of " + std::to_string(c.size());
    out.boundary = !c.empty();
    return verify_matching(s.m, s.lines, x).pass() && verify_lift(s.m, c, s.lines, x).pass();
  });
}

// A fractional matching of (M, L) tight on every flat of F is one of
// (M*F, L).
inline PropertyReport check_lift_up(const PropertyConfig& cfg) {
  return detail::run("tight base matching is a star matching", cfg, 0x57, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    if (s.lines.empty()) return std::nullopt;
    const auto x = detail::optimal_matching(s.m, s.lines, detail::random_weights(s));
    std::vector<ElementSet> tight;
    for (const Flat& f : s.flats) {
      Rational ax = 0;
      for (std::size_t l = 0; l < s.lines.size(); ++l) ax += degree(f.elements, s.lines[l]) * x[l];
      if (ax == f.rank) tight.push_back(f.elements);
    }
    const Chain c = detail::random_chain(s, tight);
    if (c.empty()) return std::nullopt;
    out.why = "chain of " + std::to_string(c.size());
    out.boundary = c.size() > 1;
    return verify_matching(star(s.m, c), s.lines, x).pass() &&
           verify_lift(s.m, c, s.lines, x).pass();
  });
}

// For X inside X': phi(F,X') - phi(F,X) <= 2 r(E) (r*(X') - r*(X)), with
// equality iff r*(X') = r*(X).
inline PropertyReport check_phi_increment(const PropertyConfig& cfg) {
  return detail::run("phi increment bound", cfg, 0x58, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Chain c = detail::random_chain(s);
    const Matroid ms = star(s.m, c);
    const ElementSet big = detail::random_subset(s.rng, s.m.ground());
    // Every other draw takes X to be the star closure of a subset, so the
    // equality case is exercised too.
    ElementSet small = detail::random_subset(s.rng, big);
    if (s.rng() & 1) small = big & star_closure(s.m, c, small);
    const long lhs = phi(s.m, c, big) - phi(s.m, c, small);
    const long rhs = 2L * s.m.rank() * (ms.rank(big) - ms.rank(small));
    out.why = "X=" + small.to_string() + " X'=" + big.to_string();
    out.boundary = lhs == rhs;
    return lhs <= rhs && ((lhs == rhs) == (ms.rank(big) == ms.rank(small)));
  });
}

// For F inside a longer chain F' with r_{M*F}(X) = r_{M*F'}(X):
// phi(F,X) <= phi(F',X), with equality iff F' plus every F_i join X_i is a
// chain.
inline PropertyReport check_phi_refinement(const PropertyConfig& cfg) {
  return detail::run("phi under chain refinement", cfg, 0x59, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Chain longer = detail::random_chain(s);
    if (longer.empty()) return std::nullopt;
    std::vector<ElementSet> sub;
    for (ElementSet f : longer.flats()) {
      if (s.rng() & 1) sub.push_back(f);
    }
    if (sub.size() == longer.flats().size()) sub.pop_back();
    const Chain shorter = Chain::of(s.m, sub);
    ElementSet x = detail::random_subset(s.rng, s.m.ground());
    if (s.rng() & 1) {
      // Sparse draws meet the rank hypothesis far more often.
      x = x & detail::random_subset(s.rng, s.m.ground());
    }
    if (star(s.m, shorter).rank(x) != star(s.m, longer).rank(x)) return std::nullopt;
    const long a = phi(s.m, shorter, x);
    const long b = phi(s.m, longer, x);
    bool chain = true;
    for (int i = 0; i < shorter.block_count() && chain; ++i) {
      const ElementSet j = s.m.closure(shorter.level(i) | (x & shorter.block(i))).elements;
      for (ElementSet f : longer.flats()) {
        if (!j.subset_of(f) && !f.subset_of(j)) {
          chain = false;
          break;
        }
      }
    }
    out.why = "X=" + x.to_string();
    out.boundary = a == b;
    return a <= b && ((a == b) == chain);
  });
}

// M * (F1 + F2) = (M * F1) * F2, and X*F is inside (X*F1)*F2.
inline PropertyReport check_star_composition(const PropertyConfig& cfg) {
  return detail::run("star composition", cfg, 0x5a, [](detail::Sample& s, detail::Outcome& out) -> std::optional<bool> {
    const Chain both = detail::random_chain(s);
    std::vector<ElementSet> f1, f2;
    for (ElementSet f : both.flats()) (s.rng() & 1 ? f1 : f2).push_back(f);
    const Chain c1 = Chain::of(s.m, f1);
    const Matroid m1 = star(s.m, c1);
    const Chain c2 = Chain::of(m1, f2);
    const Matroid direct = star(s.m, both);
    const Matroid nested = star(m1, c2);
    const ElementSet x = detail::random_subset(s.rng, s.m.ground());
    out.why = "X=" + x.to_string();
    out.boundary = !f1.empty() && !f2.empty();
    return direct.rank(x) == nested.rank(x) &&
           star_closure(s.m, both, x).subset_of(star_closure(m1, c2, star_closure(s.m, c1, x)));
  });
}

inline std::vector<PropertyReport> run_all(const PropertyConfig& cfg) {
  return {check_submodularity(cfg),  check_supermodularity(cfg),
          check_star_rank(cfg),      check_star_flats(cfg),
          check_star_degree(cfg),    check_lift_down(cfg),
          check_lift_up(cfg),        check_phi_increment(cfg),
          check_phi_refinement(cfg), check_star_composition(cfg)};
}

}  // namespace fracmat::properties
