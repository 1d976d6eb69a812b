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
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/fmm.hpp"
#include "fracmat/formal_sum.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

// phi(F, X) = sum_i r(F_i + X_i)^2 - r(F_i)^2 with X_i = X meet block i.
inline long phi(const Matroid& m, const Chain& chain, ElementSet x) {
  m.check_subset(x);
  long total = 0;
  for (int i = 0; i < chain.block_count(); ++i) {
    const ElementSet lo = chain.level(i);
    const long a = m.rank(lo | (x & chain.block(i)));
    const long b = m.rank(lo);
    total += a * a - b * b;
  }
  return total;
}

// psi(F, S, T) = phi(F, S) + phi(F, T) + 2 r(E) r_{M*F}(T).
inline long psi(const Matroid& m, const Chain& chain, ElementSet s,
                ElementSet t) {
  const long re = m.rank();
  return phi(m, chain, s) + phi(m, chain, t) +
         2 * re * star(m, chain).rank(t);
}

struct IterationRecord {
  int iter = 0;
  Rational nu;                   // nu* of (M * F, L_y)
  long psi = 0;                  // psi(F, S*, T*)
  std::optional<Rational> eps1;  // nullopt = unbounded
  std::optional<Rational> eps2;
  std::optional<Rational> eps;
  int case_taken = 0;            // 1 = perfect found, 2 = dual update
};

struct IterationTrace {
  std::vector<IterationRecord> records;
};

// The dual y = sum_i lambda_i F_i + lambda E with lambda_i > 0.
struct AlgorithmState {
  Chain chain;
  FormalSum dual;
  int iteration = 0;
};

struct PerfectFound {
  std::vector<Rational> x;
  FormalSum dual;
};

struct StepResult {
  std::variant<PerfectFound, AlgorithmState> outcome;
  IterationRecord record;
};

struct WeightedResult {
  std::vector<Rational> x;
  FormalSum dual;
  IterationTrace trace;
  Rational weight;
};

struct SolverOptions {
  long long flat_budget = kDefaultFlatBudget;
};

// Lines where the dual constraint is tight: w_l = a(y)_l.
inline std::vector<int> restricted_lines(const LineSet& lines,
                                         const std::vector<Rational>& w,
                                         const FormalSum& y) {
  const std::vector<Rational> a = degree_of(y, lines);
  std::vector<int> out;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (a[l] == w[l]) out.push_back(int(l));
  }
  return out;
}

inline void check_weights(const LineSet& lines, const std::vector<Rational>& w) {
  if (w.size() != lines.size()) {
    throw DimensionMismatch("weight count differs from line count");
  }
  for (const auto& q : w) {
    if (sgn(q) < 0) throw InvalidArgument("weights must be nonnegative");
  }
}

// F = {}, y = lambda E with lambda = max(w) / 2.
inline AlgorithmState init_state(const Matroid& m, const LineSet& lines,
                                 const std::vector<Rational>& w) {
  check_weights(lines, w);
  if (lines.empty() && m.rank() > 0) throw NoPerfectMatching();
  AlgorithmState st;
  st.chain = Chain::of(m, {});
  Rational top = 0;
  for (const auto& q : w) top = std::max(top, q);
  st.dual.add(m.ground(), top / 2);
  return st;
}

// The iteration cap: 8 r(E)^3 + 8.
inline long iteration_cap(int rank) {
  const long r = rank;
  return 8 * r * r * r + 8;
}

// One primal-dual iteration.
inline StepResult step(const Matroid& m, const LineSet& lines,
                       const std::vector<Rational>& w,
                       const AlgorithmState& state,
                       const SolverOptions& opts = {}) {
  StepResult res;
  IterationRecord& rec = res.record;
  rec.iter = state.iteration;

  const std::vector<int> tight = restricted_lines(lines, w, state.dual);
  LineSet sub;
  for (int l : tight) sub.push_back(lines[l]);
  const Matroid mstar = star(m, state.chain);
  const std::vector<Flat> flats = enumerate_flats(mstar, opts.flat_budget);
  const MaxSizeResult ms = max_size_matching(build_constraints(flats, sub));
  const DominantCoverResult dom = dominant_cover(mstar, sub, flats, ms.nu);
  const Cover& dc = dom.cover;
  rec.nu = ms.nu;
  rec.psi = psi(m, state.chain, dc.s, dc.t);

  const int re = m.rank();
  std::vector<Rational> x(lines.size(), Rational(0));
  for (std::size_t k = 0; k < tight.size(); ++k) x[tight[k]] = ms.x[k];

  if (2 * ms.nu == re) {
    rec.case_taken = 1;
    res.outcome = PerfectFound{std::move(x), state.dual};
    return res;
  }
  rec.case_taken = 2;

  // z = sum_i (S*_i + F_i - F_i) + sum_i (T*_i + F_i - F_i) - E
  FormalSum z;
  const Chain& ch = state.chain;
  for (int i = 0; i < ch.block_count(); ++i) {
    const ElementSet lo = ch.level(i);
    for (ElementSet part : {dc.s, dc.t}) {
      const ElementSet upper = (part & ch.block(i)) | lo;
      if (!upper.empty()) z.add(upper, 1);
      if (!lo.empty()) z.add(lo, -1);
    }
  }
  z.add(m.ground(), -1);

  const std::vector<Rational> az = degree_of(z, lines);
  const std::vector<Rational> ay = degree_of(state.dual, lines);
  for (int l : tight) {
    if (sgn(az[l]) < 0) throw InternalError("a(z) negative on a tight line");
    if (sgn(x[l]) > 0 && sgn(az[l]) != 0) {
      throw InternalError("a(z) nonzero on the matching support");
    }
  }

  for (const auto& [f, c] : z.terms()) {
    if (f == m.ground() || sgn(c) >= 0) continue;
    Rational t = state.dual.coeff(f) / -c;
    if (!rec.eps1 || t < *rec.eps1) rec.eps1 = std::move(t);
  }
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (sgn(az[l]) >= 0) continue;
    Rational t = (ay[l] - w[l]) / -az[l];
    if (!rec.eps2 || t < *rec.eps2) rec.eps2 = std::move(t);
  }
  if (!rec.eps1 && !rec.eps2) throw NoPerfectMatching();
  if (!rec.eps1) rec.eps = rec.eps2;
  else if (!rec.eps2) rec.eps = rec.eps1;
  else rec.eps = std::min(*rec.eps1, *rec.eps2);
  if (sgn(*rec.eps) <= 0) throw InternalError("non-positive step length");

  AlgorithmState next;
  next.dual = state.dual;
  next.dual.add_scaled(z, *rec.eps);
  next.iteration = state.iteration + 1;
  std::vector<ElementSet> members;
  for (const auto& [f, c] : next.dual.terms()) {
    if (f == m.ground()) continue;
    if (sgn(c) < 0) throw InternalError("dual went negative off E");
    members.push_back(f);
  }
  next.chain = Chain::of(m, std::move(members));
  res.outcome = std::move(next);
  return res;
}

namespace detail {

inline std::string describe(const AlgorithmState& st) {
  std::ostringstream os;
  os << "iteration " << st.iteration << ", dual:";
  for (const auto& [f, c] : st.dual.terms()) {
    os << " " << to_string(c) << "*" << f.to_string();
  }
  return os.str();
}

}  // namespace detail

// Maximum-weight perfect fractional matching with an optimal dual supported
// on a chain plus E.
inline WeightedResult solve_max_weight_perfect(const Matroid& m,
                                               const LineSet& lines,
                                               const std::vector<Rational>& w,
                                               const SolverOptions& opts = {}) {
  validate_instance(m, lines);
  check_weights(lines, w);
  const int re = m.rank();
  WeightedResult out;
  if (lines.empty()) {
    if (re > 0) throw NoPerfectMatching();
    out.weight = 0;
    return out;
  }
  if (2 * max_size_matching(m, lines, opts.flat_budget).nu != re) {
    throw NoPerfectMatching();
  }

  AlgorithmState st = init_state(m, lines, w);
  const long cap = iteration_cap(re);
  for (long it = 0;; ++it) {
    if (it >= cap) {
      throw InternalError("iteration cap " + std::to_string(cap) +
                          " exceeded at " + detail::describe(st));
    }
    StepResult sr = step(m, lines, w, st, opts);
    out.trace.records.push_back(sr.record);
    if (auto* done = std::get_if<PerfectFound>(&sr.outcome)) {
      out.x = std::move(done->x);
      out.dual = std::move(done->dual);
      break;
    }
    st = std::move(std::get<AlgorithmState>(sr.outcome));
  }
  out.weight = dot(w, out.x);
  return out;
}

// Maximum-weight fractional matching: adjoin zero-weight singleton lines on
// a greedy base (through fresh parallel copies when {b} is already a line),
// solve the perfect problem, restrict back.
inline WeightedResult solve_max_weight(const Matroid& m, const LineSet& lines,
                                       const std::vector<Rational>& w,
                                       const SolverOptions& opts = {}) {
  validate_instance(m, lines);
  check_weights(lines, w);
  WeightedResult out;
  if (lines.empty()) {
    out.weight = 0;
    return out;
  }
  const int n = m.ground_size();
  const ElementSet base = greedy_base(m);
  LineSet ext = lines;
  std::vector<Rational> wext = w;
  std::vector<int> copies;
  base.for_each([&](int b) {
    const ElementSet single = ElementSet::singleton(b);
    const bool taken = std::find(lines.begin(), lines.end(), single) != lines.end();
    if (taken) {
      if (n + int(copies.size()) >= kMaxGroundSize) {
        throw InvalidArgument("no room for a parallel copy in a 64-element ground set");
      }
      ext.push_back(ElementSet::singleton(n + int(copies.size())));
      copies.push_back(b);
    } else {
      ext.push_back(single);
    }
    wext.emplace_back(0);
  });
  const Matroid mext = copies.empty() ? m : Matroid::parallel_extension(m, copies);

  WeightedResult inner = solve_max_weight_perfect(mext, ext, wext, opts);
  out.x.assign(inner.x.begin(), inner.x.begin() + lines.size());
  // Flats of the extension meet E in flats of M of the same rank.
  for (const auto& [f, c] : inner.dual.terms()) {
    out.dual.add(f & m.ground(), c);
  }
  if (sgn(out.dual.coeff(m.ground())) < 0) {
    throw InternalError("reduction produced a negative coefficient on E");
  }
  out.trace = std::move(inner.trace);
  out.weight = dot(w, out.x);
  return out;
}

// True when (r(E) - 2 nu*, psi) strictly decreases from record to record.
inline bool measure_strictly_decreasing(const IterationTrace& trace, int rank) {
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const auto& a = trace.records[i - 1];
    const auto& b = trace.records[i];
    const Rational da = rank - 2 * a.nu;
    const Rational db = rank - 2 * b.nu;
    if (db < da) continue;
    if (db == da && b.psi < a.psi) continue;
    return false;
  }
  return true;
}

struct TerminationCheck {
  bool lexicographic = true;  // (r(E) - 2 nu*, psi) strictly decreasing
  bool psi_bounded = true;    // psi <= 4 r(E)^2 on every record
  bool within_cap = true;     // iterations <= 8 r(E)^3 + 8
  long iterations = 0;

  bool pass() const { return lexicographic && psi_bounded && within_cap; }
};

inline TerminationCheck check_termination(const IterationTrace& trace, int rank) {
  TerminationCheck t;
  t.iterations = static_cast<long>(trace.records.size());
  t.lexicographic = measure_strictly_decreasing(trace, rank);
  const long bound = 4L * rank * rank;
  for (const auto& r : trace.records) t.psi_bounded = t.psi_bounded && r.psi <= bound;
  t.within_cap = t.iterations <= iteration_cap(rank);
  return t;
}

}  // namespace fracmat
