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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/fmm.hpp"
#include "fracmat/formal_sum.hpp"
#include "fracmat/lp.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

struct Violation {
  std::string what;
  std::map<std::string, std::string> data;
};

// Outcome of one verifier. Verifiers recompute everything from the
// instance and never look at solver internals.
struct Certificate {
  std::string kind;  // primal-feasible | dual-feasible | optimal-pair |
                     // half-integral | tight-closure | dominant-valid | lift
  std::optional<Violation> violation;
  std::map<std::string, std::string> notes;

  bool pass() const { return !violation.has_value(); }

  Certificate& fail(std::string what, std::map<std::string, std::string> data = {}) {
    if (!violation) violation = Violation{std::move(what), std::move(data)};
    return *this;
  }
};

namespace oracle {

// Constraint rows a(X).x <= r(X) over every subset X of E, one per distinct
// degree vector with the smallest right-hand side. Equivalent to the flat
// system because a(X) <= a(cl X) and r(X) = r(cl X); assembled without
// closures or flat enumeration.
struct SubsetRows {
  std::vector<std::vector<int>> degrees;
  std::vector<int> rhs;
};

inline constexpr int kMaxOracleGround = 20;

inline SubsetRows subset_rows(const Matroid& m, const LineSet& lines) {
  const int n = m.ground_size();
  if (n > kMaxOracleGround) {
    throw BudgetExceeded("oracle enumerates 2^n subsets", 1LL << kMaxOracleGround);
  }
  std::map<std::vector<int>, int> best;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const ElementSet x(bits);
    std::vector<int> a(lines.size());
    bool nonzero = false;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const ElementSet hit = x & lines[l];
      a[l] = hit.empty() ? 0 : (hit == lines[l] ? 2 : 1);
      nonzero |= a[l] != 0;
    }
    if (!nonzero) continue;
    const int r = m.rank(x);
    auto [it, inserted] = best.emplace(std::move(a), r);
    if (!inserted) it->second = std::min(it->second, r);
  }
  SubsetRows rows;
  for (auto& [a, r] : best) {
    rows.degrees.push_back(a);
    rows.rhs.push_back(r);
  }
  return rows;
}

// Full-tableau simplex on the dual
//   min sum_i b_i y_i + h mu  s.t.  sum_i A_il y_i + mu >= w_l,  y >= 0,
// with mu free (present only when `equality_total` is set, h = r(E)/2).
// Largest-coefficient pricing, falling back to Bland's rule after a run of
// degenerate pivots. Returns nullopt when the dual is unbounded, i.e. the
// primal is infeasible.
class DualTableau {
 public:
  DualTableau(const SubsetRows& rows, const std::vector<Rational>& w,
              std::optional<Rational> equality_total)
      : lines_(w.size()) {
    const std::size_t m = rows.rhs.size();
    // Columns: y_0..y_{m-1}, [mu+, mu-], surplus s_l, artificial t_l.
    ny_ = m;
    nmu_ = equality_total ? 2 : 0;
    ns_ = lines_;
    cols_ = ny_ + nmu_ + 2 * lines_;
    tab_.assign(lines_, std::vector<Rational>(cols_ + 1, Rational(0)));
    cost_.assign(cols_, Rational(0));
    for (std::size_t i = 0; i < m; ++i) cost_[i] = rows.rhs[i];
    if (equality_total) {
      cost_[ny_] = *equality_total;
      cost_[ny_ + 1] = -*equality_total;
    }
    for (std::size_t l = 0; l < lines_; ++l) {
      for (std::size_t i = 0; i < m; ++i) tab_[l][i] = rows.degrees[i][l];
      if (equality_total) {
        tab_[l][ny_] = 1;
        tab_[l][ny_ + 1] = -1;
      }
      tab_[l][ny_ + nmu_ + l] = -1;
      tab_[l][ny_ + nmu_ + ns_ + l] = 1;
      tab_[l][cols_] = w[l];
      basis_.push_back(int(ny_ + nmu_ + ns_ + l));
    }
  }

  std::optional<Rational> minimize() {
    // Phase one: drive the artificials to zero.
    std::vector<Rational> phase1(cols_, Rational(0));
    for (std::size_t l = 0; l < lines_; ++l) phase1[ny_ + nmu_ + ns_ + l] = 1;
    if (!run(phase1, cols_)) throw InternalError("oracle phase one unbounded");
    if (sgn(value(phase1)) != 0) {
      throw InternalError("oracle dual infeasible; primal would be unbounded");
    }
    // Artificials stay out from here on.
    const std::size_t usable = ny_ + nmu_ + ns_;
    for (std::size_t l = 0; l < lines_; ++l) {
      if (std::size_t(basis_[l]) < usable) continue;
      for (std::size_t j = 0; j < usable; ++j) {
        if (sgn(tab_[l][j]) != 0) {
          pivot(l, j);
          break;
        }
      }
    }
    if (!run(cost_, usable)) return std::nullopt;
    return value(cost_);
  }

 private:
  Rational value(const std::vector<Rational>& c) const {
    Rational v = 0;
    for (std::size_t l = 0; l < lines_; ++l) v += c[basis_[l]] * tab_[l][cols_];
    return v;
  }

  void pivot(std::size_t r, std::size_t q) {
    const Rational inv = 1 / tab_[r][q];
    for (auto& v : tab_[r]) v *= inv;
    for (std::size_t l = 0; l < lines_; ++l) {
      if (l == r || sgn(tab_[l][q]) == 0) continue;
      const Rational f = tab_[l][q];
      for (std::size_t j = 0; j <= cols_; ++j) tab_[l][j] -= f * tab_[r][j];
    }
    basis_[r] = int(q);
  }

  // Minimizes c over columns [0, usable). False when unbounded.
  bool run(const std::vector<Rational>& c, std::size_t usable) {
    int degenerate = 0;
    bool bland = false;
    for (;;) {
      std::optional<std::size_t> q;
      Rational best_rc;
      for (std::size_t j = 0; j < usable; ++j) {
        Rational rc = c[j];
        for (std::size_t l = 0; l < lines_; ++l) rc -= c[basis_[l]] * tab_[l][j];
        if (sgn(rc) >= 0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (!q || rc < best_rc) {
          q = j;
          best_rc = rc;
        }
      }
      if (!q) return true;
      std::optional<std::size_t> r;
      Rational best;
      for (std::size_t l = 0; l < lines_; ++l) {
        if (sgn(tab_[l][*q]) <= 0) continue;
        Rational ratio = tab_[l][cols_] / tab_[l][*q];
        if (!r || ratio < best || (ratio == best && basis_[l] < basis_[*r])) {
          r = l;
          best = std::move(ratio);
        }
      }
      if (!r) return false;
      if (sgn(best) == 0) {
        if (++degenerate > 50) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(*r, *q);
    }
  }

  std::size_t lines_;
  std::size_t ny_ = 0, nmu_ = 0, ns_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> cost_;
  std::vector<int> basis_;
};

}  // namespace oracle

// Optimum of max w.x over the fractional matching polytope (restricted to
// |x| = r(E)/2 when `perfect`), solved through the dual on an independently
// assembled constraint system. nullopt when `perfect` and no perfect
// fractional matching exists.
inline std::optional<Rational> brute_force_optimum(const Matroid& m,
                                                   const LineSet& lines,
                                                   const std::vector<Rational>& w,
                                                   bool perfect) {
  if (w.size() != lines.size()) throw DimensionMismatch("w vs lines");
  const Rational half_rank = ratio(m.rank(), 2);
  if (lines.empty()) {
    if (perfect && sgn(half_rank) != 0) return std::nullopt;
    return Rational(0);
  }
  const oracle::SubsetRows rows = oracle::subset_rows(m, lines);
  oracle::DualTableau tab(rows, w, perfect ? std::optional<Rational>(half_rank)
                                           : std::nullopt);
  return tab.minimize();
}

// x >= 0 and a(T).x <= r(T) for every flat T; with `perfect`, also
// |x| = r(E)/2.
inline Certificate verify_matching(const Matroid& m, const LineSet& lines,
                                   const std::vector<Rational>& x,
                                   long long budget = kDefaultFlatBudget,
                                   bool perfect = false) {
  Certificate c{"primal-feasible", {}, {}};
  if (x.size() != lines.size()) return c.fail("length mismatch");
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (sgn(x[l]) < 0) {
      return c.fail("negative entry", {{"line", std::to_string(l)},
                                       {"value", to_string(x[l])}});
    }
  }
  for (const Flat& f : enumerate_flats(m, budget)) {
    Rational lhs = 0;
    for (std::size_t l = 0; l < lines.size(); ++l) lhs += degree(f.elements, lines[l]) * x[l];
    if (lhs > f.rank) {
      return c.fail("flat constraint violated",
                    {{"flat", f.elements.to_string()},
                     {"lhs", to_string(lhs)},
                     {"rank", std::to_string(f.rank)}});
    }
  }
  c.notes["size"] = to_string(sum(x));
  if (perfect && 2 * sum(x) != m.rank()) {
    return c.fail("not perfect", {{"size", to_string(sum(x))},
                                  {"r(E)", std::to_string(m.rank())}});
  }
  return c;
}

// y >= 0 off E (everywhere when not `perfect`), every term a flat, and
// a(y) >= w.
inline Certificate verify_dual(const Matroid& m, const LineSet& lines,
                               const std::vector<Rational>& w,
                               const FormalSum& y, bool perfect) {
  Certificate c{"dual-feasible", {}, {}};
  if (w.size() != lines.size()) return c.fail("length mismatch");
  for (const auto& [f, coeff] : y.terms()) {
    if (!f.subset_of(m.ground()) || !m.is_flat(f)) {
      return c.fail("term is not a flat", {{"flat", f.to_string()}});
    }
    if (sgn(coeff) < 0 && !(perfect && f == m.ground())) {
      return c.fail("negative coefficient", {{"flat", f.to_string()},
                                             {"coeff", to_string(coeff)}});
    }
  }
  const std::vector<Rational> a = degree_of(y, lines);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (a[l] < w[l]) {
      return c.fail("a(y) below w", {{"line", std::to_string(l)},
                                     {"a(y)", to_string(a[l])},
                                     {"w", to_string(w[l])}});
    }
  }
  c.notes["r(y)"] = to_string(rank_of(m, y));
  return c;
}

// w.x = r(y) plus both complementary slackness families. `claimed`, when
// given, must equal both sides.
inline Certificate verify_optimal_pair(const Matroid& m, const LineSet& lines,
                                       const std::vector<Rational>& w,
                                       const std::vector<Rational>& x,
                                       const FormalSum& y,
                                       std::optional<Rational> claimed = std::nullopt) {
  Certificate c{"optimal-pair", {}, {}};
  if (w.size() != lines.size() || x.size() != lines.size()) {
    return c.fail("length mismatch");
  }
  const Rational wx = dot(w, x);
  const Rational ry = rank_of(m, y);
  c.notes["w.x"] = to_string(wx);
  c.notes["r(y)"] = to_string(ry);
  if (wx != ry) {
    return c.fail("objective gap", {{"w.x", to_string(wx)}, {"r(y)", to_string(ry)}});
  }
  if (claimed && *claimed != wx) {
    return c.fail("claimed objective differs",
                  {{"claimed", to_string(*claimed)}, {"w.x", to_string(wx)}});
  }
  const std::vector<Rational> a = degree_of(y, lines);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (sgn(x[l]) > 0 && a[l] != w[l]) {
      return c.fail("line in supp(x) not tight in the dual",
                    {{"line", std::to_string(l)}, {"a(y)", to_string(a[l])},
                     {"w", to_string(w[l])}});
    }
  }
  for (const auto& [f, coeff] : y.terms()) {
    Rational ax = 0;
    for (std::size_t l = 0; l < lines.size(); ++l) ax += degree(f, lines[l]) * x[l];
    if (ax != m.rank(f)) {
      return c.fail("flat in supp(y) not tight in the primal",
                    {{"flat", f.to_string()}, {"a(F).x", to_string(ax)},
                     {"r(F)", std::to_string(m.rank(f))}});
    }
  }
  return c;
}

// Chain support, coefficients in (1/2)Z, dual feasibility, and optimality
// against the oracle.
inline Certificate verify_half_integral_dual(const Matroid& m,
                                             const LineSet& lines,
                                             const std::vector<Rational>& w,
                                             const FormalSum& y) {
  Certificate c{"half-integral", {}, {}};
  if (!y.chain_supported()) return c.fail("support is not a chain");
  for (const auto& [f, coeff] : y.terms()) {
    if (!is_half_integer(coeff)) {
      return c.fail("coefficient not in (1/2)Z",
                    {{"flat", f.to_string()}, {"coeff", to_string(coeff)}});
    }
  }
  if (auto d = verify_dual(m, lines, w, y, false); !d.pass()) {
    return c.fail("not dual feasible: " + d.violation->what, d.violation->data);
  }
  const Rational ry = rank_of(m, y);
  const Rational opt = *brute_force_optimum(m, lines, w, false);
  c.notes["r(y)"] = to_string(ry);
  c.notes["optimum"] = to_string(opt);
  if (ry != opt) return c.fail("r(y) differs from the optimum");
  return c;
}

struct VertexEnumerationOptions {
  long long node_budget = 2'000'000;
};

namespace oracle {

// Polyhedron {x >= 0 : rows}, rows stored as g.x <= h.
struct Inequalities {
  std::vector<std::vector<Rational>> g;
  std::vector<Rational> h;

  void add(std::vector<Rational> a, Rational b) {
    g.push_back(std::move(a));
    h.push_back(std::move(b));
  }
  void add_equation(const std::vector<Rational>& a, const Rational& b) {
    std::vector<Rational> neg(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) neg[j] = -a[j];
    add(a, b);
    add(std::move(neg), -b);
  }
};

// Which of the inequalities `probe` (indices into `all`) hold with equality
// on the whole polyhedron `base`, which must be bounded; nullopt when `base`
// is empty. Each round maximizes the total of slacks t_j <= h_j - g_j.x;
// any j with t_j > 0 is not implicit. Stops once the probed slacks are all
// zero.
inline std::optional<std::vector<std::size_t>> implicit_equalities(
    const Inequalities& base, const Inequalities& all,
    std::vector<std::size_t> probe, std::size_t n) {
  for (;;) {
    const std::size_t q = probe.size();
    LinearProgram lp;
    lp.objective.assign(n + q, Rational(0));
    for (std::size_t i = 0; i < q; ++i) lp.objective[n + i] = 1;
    for (std::size_t r = 0; r < base.g.size(); ++r) {
      std::vector<Rational> row = base.g[r];
      row.resize(n + q, Rational(0));
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(base.h[r]);
    }
    for (std::size_t i = 0; i < q; ++i) {
      std::vector<Rational> row = all.g[probe[i]];
      row.resize(n + q, Rational(0));
      row[n + i] = 1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(all.h[probe[i]]);
    }
    const LPSolution s = solve(lp);
    if (s.status == LPStatus::kInfeasible) return std::nullopt;
    if (s.status != LPStatus::kOptimal) throw InternalError("slack LP unbounded");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < q; ++i) {
      if (sgn(s.primal[n + i]) == 0) rest.push_back(probe[i]);
    }
    if (rest.size() == q) return rest;
    probe = std::move(rest);
  }
}

}  // namespace oracle

// Every vertex of the optimal face of max w.x over the polytope.
//
// The face F is described by its affine hull (the implicit equalities) and
// its facets; every vertex of F is the intersection of the hull with the
// facets through it, so the search runs over combinations of facet rows
// with exact elimination, keeping those points that satisfy every
// constraint.
inline std::vector<std::vector<Rational>> enumerate_optimal_vertices(
    const Matroid& m, const LineSet& lines, const std::vector<Rational>& w,
    const VertexEnumerationOptions& opts = {}) {
  const std::size_t n = lines.size();
  if (n == 0) return {std::vector<Rational>{}};
  const oracle::SubsetRows sr = oracle::subset_rows(m, lines);
  const Rational opt = *brute_force_optimum(m, lines, w, false);

  // All constraints: the subset rows, then -x_j <= 0.
  oracle::Inequalities all;
  for (std::size_t i = 0; i < sr.rhs.size(); ++i) {
    all.add(std::vector<Rational>(sr.degrees[i].begin(), sr.degrees[i].end()),
            Rational(sr.rhs[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = -1;
    all.add(std::move(e), Rational(0));
  }
  oracle::Inequalities face = all;
  face.add_equation(w, opt);

  std::vector<std::size_t> every(all.g.size());
  for (std::size_t k = 0; k < every.size(); ++k) every[k] = k;
  const auto equalities = oracle::implicit_equalities(face, all, every, n);
  if (!equalities) throw InternalError("optimal face is empty");

  // Reduced row echelon form, augmented with the right-hand side.
  struct Echelon {
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> pivots;
  };
  auto reduce = [&](const Echelon& e, std::size_t k) {
    std::vector<Rational> row = all.g[k];
    row.push_back(all.h[k]);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      const Rational f = row[e.pivots[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) row[j] -= f * e.rows[r][j];
    }
    return row;
  };
  // nullopt when row k is implied by, or inconsistent with, e.
  auto try_add = [&](const Echelon& e, std::size_t k) -> std::optional<Echelon> {
    std::vector<Rational> row = reduce(e, k);
    std::size_t p = 0;
    while (p < n && sgn(row[p]) == 0) ++p;
    if (p == n) return std::nullopt;
    const Rational inv = 1 / row[p];
    for (auto& v : row) v *= inv;
    Echelon out = e;
    for (auto& other : out.rows) {
      const Rational f = other[p];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) other[j] -= f * row[j];
    }
    out.rows.push_back(std::move(row));
    out.pivots.push_back(p);
    return out;
  };

  Echelon hull;
  for (std::size_t k : *equalities) {
    if (auto next = try_add(hull, k)) hull = std::move(*next);
  }
  // The objective hyperplane is part of the hull as well.
  {
    oracle::Inequalities tmp = all;
    tmp.add(w, opt);
    all = std::move(tmp);
    if (auto next = try_add(hull, all.g.size() - 1)) hull = std::move(*next);
    all.g.pop_back();
    all.h.pop_back();
  }

  // One row per hyperplane section of the hull; rows implied by the hull
  // are implicit equalities and rows missing it are never tight.
  std::vector<std::size_t> sections;
  {
    std::set<std::vector<Rational>> planes;
    for (std::size_t k = 0; k < all.g.size(); ++k) {
      std::vector<Rational> row = reduce(hull, k);
      auto lead = std::find_if(row.begin(), row.end(),
                               [](const Rational& q) { return sgn(q) != 0; });
      if (lead == row.end() || lead == row.end() - 1) continue;
      const Rational inv = 1 / *lead;
      for (auto& q : row) q *= inv;
      if (planes.insert(std::move(row)).second) sections.push_back(k);
    }
  }

  oracle::Inequalities on_hull;
  for (std::size_t k : sections) on_hull.add(all.g[k], all.h[k]);
  for (const auto& row : hull.rows) {
    on_hull.add_equation(std::vector<Rational>(row.begin(), row.begin() + long(n)),
                         row[n]);
  }
  // Row k is a facet iff F meets its hyperplane H_k in dimension dim F - 1.
  // Points of aff(F) meet H_k are parametrized by the free columns of the
  // echelon form; the dimension grows one affinely independent point at a
  // time by optimizing along a direction orthogonal to those found so far,
  // and a direction that stays constant on F meet H_k caps it.
  auto optimize = [&](const oracle::Inequalities& q, std::vector<Rational> c)
      -> std::optional<std::vector<Rational>> {
    LinearProgram lp;
    lp.objective = std::move(c);
    lp.rows = q.g;
    lp.rhs = q.h;
    const LPSolution s = solve(lp);
    if (s.status == LPStatus::kInfeasible) return std::nullopt;
    if (s.status != LPStatus::kOptimal) throw InternalError("face LP unbounded");
    return s.primal;
  };
  // A nonzero vector orthogonal to every row of `a` (columns = dim), or
  // nullopt when the rows span everything.
  auto orthogonal = [](std::vector<std::vector<Rational>> a, std::size_t dim)
      -> std::optional<std::vector<Rational>> {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < a.size(); ++col) {
      std::size_t p = r;
      while (p < a.size() && sgn(a[p][col]) == 0) ++p;
      if (p == a.size()) continue;
      std::swap(a[p], a[r]);
      const Rational inv = 1 / a[r][col];
      for (auto& v : a[r]) v *= inv;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == r || sgn(a[i][col]) == 0) continue;
        const Rational f = a[i][col];
        for (std::size_t j = 0; j < dim; ++j) a[i][j] -= f * a[r][j];
      }
      pivots.push_back(col);
      ++r;
    }
    for (std::size_t free = 0; free < dim; ++free) {
      if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
      std::vector<Rational> v(dim, Rational(0));
      v[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
      return v;
    }
    return std::nullopt;
  };
  std::vector<std::size_t> facets;
  for (std::size_t k : sections) {
    const auto with_k = try_add(hull, k);
    if (!with_k) continue;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(with_k->pivots.begin(), with_k->pivots.end(), j) ==
          with_k->pivots.end()) {
        free_cols.push_back(j);
      }
    }
    oracle::Inequalities q = on_hull;
    q.add_equation(all.g[k], all.h[k]);
    const auto p0 = optimize(q, std::vector<Rational>(n, Rational(0)));
    if (!p0) continue;
    const std::size_t dim = free_cols.size();
    std::vector<std::vector<Rational>> found_dirs;
    bool facet = true;
    while (found_dirs.size() < dim) {
      const auto cprime = orthogonal(found_dirs, dim);
      if (!cprime) throw InternalError("direction search exhausted");
      std::vector<Rational> c(n, Rational(0));
      for (std::size_t i = 0; i < dim; ++i) c[free_cols[i]] = (*cprime)[i];
      const Rational base_value = dot(c, *p0);
      std::optional<std::vector<Rational>> next;
      for (int sign : {1, -1}) {
        std::vector<Rational> obj = c;
        if (sign < 0) for (auto& v : obj) v = -v;
        auto pt = optimize(q, obj);
        if (pt && dot(c, *pt) != base_value) {
          next = std::move(pt);
          break;
        }
      }
      if (!next) {
        facet = false;
        break;
      }
      std::vector<Rational> alpha(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        alpha[i] = (*next)[free_cols[i]] - (*p0)[free_cols[i]];
      }
      found_dirs.push_back(std::move(alpha));
    }
    if (facet) facets.push_back(k);
  }

  std::set<std::vector<Rational>> found;
  long long nodes = 0;
  auto dfs = [&](auto&& self, const Echelon& e, std::size_t from) -> void {
    if (++nodes > opts.node_budget) {
      throw BudgetExceeded("vertex enumeration node budget", opts.node_budget);
    }
    if (e.rows.size() == n) {
      std::vector<Rational> x(n);
      for (std::size_t r = 0; r < n; ++r) x[e.pivots[r]] = e.rows[r][n];
      for (std::size_t k = 0; k < all.g.size(); ++k) {
        if (dot(all.g[k], x) > all.h[k]) return;
      }
      if (dot(w, x) == opt) found.insert(std::move(x));
      return;
    }
    const std::size_t missing = n - e.rows.size();
    for (std::size_t c = from; c + missing <= facets.size(); ++c) {
      if (auto next = try_add(e, facets[c])) self(self, *next, c + 1);
    }
  };
  dfs(dfs, hull, 0);
  return {found.begin(), found.end()};
}

// For a vertex x: compares |x| and 2|x| against r(cl(x)). The verdict
// follows the 2|x| = r(cl(x)) reading, i.e. cl(x) is tight for x; the literal
// |x| = r(cl(x)) comparison is reported in the notes.
inline Certificate verify_tight_closure(const Matroid& m, const LineSet& lines,
                                        const std::vector<Rational>& x,
                                        long long budget = kDefaultFlatBudget) {
  if (x.size() != lines.size()) throw DimensionMismatch("x vs lines");
  const std::size_t n = lines.size();
  // Vertex test: the active constraints must have full column rank.
  std::vector<std::vector<Rational>> active;
  for (const Flat& f : enumerate_flats(m, budget)) {
    std::vector<Rational> a(n);
    Rational lhs = 0;
    for (std::size_t l = 0; l < n; ++l) {
      a[l] = degree(f.elements, lines[l]);
      lhs += a[l] * x[l];
    }
    if (lhs > f.rank) throw InvalidArgument("x is not a fractional matching");
    if (lhs == f.rank) active.push_back(std::move(a));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(x[j]) < 0) throw InvalidArgument("x is not a fractional matching");
    if (sgn(x[j]) == 0) {
      std::vector<Rational> e(n, Rational(0));
      e[j] = 1;
      active.push_back(std::move(e));
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < active.size(); ++col) {
    std::size_t piv = rank;
    while (piv < active.size() && sgn(active[piv][col]) == 0) ++piv;
    if (piv == active.size()) continue;
    std::swap(active[piv], active[rank]);
    for (std::size_t i = rank + 1; i < active.size(); ++i) {
      if (sgn(active[i][col]) == 0) continue;
      const Rational f = active[i][col] / active[rank][col];
      for (std::size_t j = col; j < n; ++j) active[i][j] -= f * active[rank][j];
    }
    ++rank;
  }
  if (rank < n) throw InvalidArgument("x is not a vertex of the polytope");

  Certificate c{"tight-closure", {}, {}};
  const Flat cl = closure_of_matching(m, lines, x);
  const Rational size = sum(x);
  c.notes["|x|"] = to_string(size);
  c.notes["r(cl(x))"] = std::to_string(cl.rank);
  c.notes["literal"] = size == cl.rank ? "holds" : "fails";
  c.notes["doubled"] = 2 * size == cl.rank ? "holds" : "fails";
  if (2 * size != cl.rank) {
    c.fail("closure is not tight", {{"|x|", to_string(size)},
                                    {"r(cl(x))", std::to_string(cl.rank)}});
  }
  return c;
}

// T* against the intersection of cl(x) over optimal vertices at w = 1,
// the sandwich S* <= S <= T <= T* over every minimum cover, and
// S* = cl(union of T* meet l over lines l not inside T*).
inline Certificate verify_dominant(const Matroid& m, const LineSet& lines,
                                   const Cover& cover,
                                   long long budget = kDefaultFlatBudget) {
  Certificate c{"dominant-valid", {}, {}};
  const std::vector<Rational> w(lines.size(), Rational(1));
  const Rational nu = *brute_force_optimum(m, lines, w, false);
  c.notes["nu"] = to_string(nu);

  if (!is_cover(cover, lines) || 2 * nu != m.rank(cover.s) + m.rank(cover.t)) {
    return c.fail("not a minimum cover");
  }
  ElementSet meet_all = m.ground();
  for (const auto& x : enumerate_optimal_vertices(m, lines, w)) {
    meet_all = meet_all & closure_of_matching(m, lines, x).elements;
  }
  c.notes["intersection"] = meet_all.to_string();
  if (meet_all != cover.t) {
    return c.fail("T* differs from the intersection of closures",
                  {{"T*", cover.t.to_string()}, {"intersection", meet_all.to_string()}});
  }
  const std::vector<Flat> flats = enumerate_flats(m, budget);
  long covers = 0;
  for (const Flat& s : flats) {
    for (const Flat& t : flats) {
      if (!s.elements.subset_of(t.elements)) continue;
      if (2 * nu != s.rank + t.rank) continue;
      if (!is_cover(Cover{s.elements, t.elements}, lines)) continue;
      ++covers;
      if (!cover.s.subset_of(s.elements) || !t.elements.subset_of(cover.t)) {
        return c.fail("sandwich violated", {{"S", s.elements.to_string()},
                                            {"T", t.elements.to_string()}});
      }
    }
  }
  c.notes["minimum covers"] = std::to_string(covers);
  ElementSet u;
  for (const auto& l : lines) {
    if (!l.subset_of(cover.t)) u |= cover.t & l;
  }
  if (m.closure(u).elements != cover.s) {
    return c.fail("S* identity fails", {{"S*", cover.s.to_string()},
                                        {"cl(...)", m.closure(u).elements.to_string()}});
  }
  return c;
}

// Both directions of lifting between M * F and M: star-feasible implies
// base-feasible, and base-feasible with every chain flat tight implies
// star-feasible.
inline Certificate verify_lift(const Matroid& m, const Chain& chain,
                               const LineSet& lines,
                               const std::vector<Rational>& x,
                               long long budget = kDefaultFlatBudget) {
  Certificate c{"lift", {}, {}};
  const bool base_ok = verify_matching(m, lines, x, budget).pass();
  const bool star_ok = verify_matching(star(m, chain), lines, x, budget).pass();
  bool tight = true;
  for (ElementSet f : chain.flats()) {
    Rational ax = 0;
    for (std::size_t l = 0; l < lines.size(); ++l) ax += degree(f, lines[l]) * x[l];
    tight = tight && ax == m.rank(f);
  }
  c.notes["base-feasible"] = base_ok ? "yes" : "no";
  c.notes["star-feasible"] = star_ok ? "yes" : "no";
  c.notes["chain-tight"] = tight ? "yes" : "no";
  if (star_ok && !base_ok) c.fail("star-feasible but not base-feasible");
  if (base_ok && tight && !star_ok) c.fail("tight and base-feasible but not star-feasible");
  return c;
}

}  // namespace fracmat
