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
#include <string>
#include <utility>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/formal_sum.hpp"
#include "fracmat/lp.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

// One row a(F).x <= r(F) per distinct nonzero degree vector, keeping the
// representative flat of minimum rank.
struct ConstraintSystem {
  struct Row {
    DegreeVector degrees;
    ElementSet flat;
    int rank = 0;
  };
  std::vector<Row> rows;
  std::size_t num_lines = 0;

  LinearProgram as_lp(const std::vector<Rational>& weights) const {
    if (weights.size() != num_lines) {
      throw DimensionMismatch("weights do not match the line count");
    }
    LinearProgram lp;
    lp.objective = weights;
    for (const auto& row : rows) {
      lp.rows.emplace_back(row.degrees.begin(), row.degrees.end());
      lp.rhs.emplace_back(row.rank);
    }
    return lp;
  }
};

// Flats must be ordered by rank, as enumerate_flats returns them.
inline ConstraintSystem build_constraints(const std::vector<Flat>& flats,
                                          const LineSet& lines) {
  ConstraintSystem sys;
  sys.num_lines = lines.size();
  if (lines.empty()) return sys;
  std::map<DegreeVector, std::size_t> index;
  // The first flat seen for a degree vector has minimum rank.
  for (const Flat& f : flats) {
    DegreeVector a = degree_vector(f.elements, lines);
    if (std::all_of(a.begin(), a.end(), [](int d) { return d == 0; })) continue;
    if (index.contains(a)) continue;
    index.emplace(a, sys.rows.size());
    sys.rows.push_back({std::move(a), f.elements, f.rank});
  }
  return sys;
}

inline ConstraintSystem build_constraints(const Matroid& m,
                                          const LineSet& lines,
                                          long long budget = kDefaultFlatBudget) {
  if (lines.empty()) return ConstraintSystem{{}, 0};
  return build_constraints(enumerate_flats(m, budget), lines);
}

struct MaxSizeResult {
  std::vector<Rational> x;
  Rational nu;
  ConstraintSystem system;
  LPSolution lp;
};

inline std::vector<Rational> ones(std::size_t n) {
  return std::vector<Rational>(n, Rational(1));
}

// Basic optimal solution of max |x| over the fractional matching polytope.
inline MaxSizeResult max_size_matching(ConstraintSystem system) {
  MaxSizeResult res;
  res.system = std::move(system);
  const std::size_t n = res.system.num_lines;
  res.x.assign(n, Rational(0));
  res.nu = 0;
  if (n == 0) return res;
  res.lp = solve(res.system.as_lp(ones(n)));
  if (res.lp.status != LPStatus::kOptimal) {
    throw InternalError("max-size LP is not optimal: " +
                        to_string(res.lp.status));
  }
  res.x = res.lp.primal;
  res.nu = res.lp.objective_value;
  return res;
}

inline MaxSizeResult max_size_matching(const Matroid& m, const LineSet& lines,
                                       long long budget = kDefaultFlatBudget) {
  MaxSizeResult res;
  res.system = build_constraints(m, lines, budget);
  res.x.assign(lines.size(), Rational(0));
  res.nu = 0;
  if (lines.empty()) return res;
  res.lp = solve(res.system.as_lp(ones(lines.size())));
  if (res.lp.status != LPStatus::kOptimal) {
    throw InternalError("max-size LP is not optimal: " +
                        to_string(res.lp.status));
  }
  res.x = res.lp.primal;
  res.nu = res.lp.objective_value;
  return res;
}

inline bool is_perfect(const Matroid& m, const std::vector<Rational>& x) {
  return 2 * sum(x) == m.rank();
}

// Replaces crossing flats S, T of the support by S meet T and S join T until
// the support is a chain. Each step moves min(y_S, y_T) of weight and is
// chosen to maximize the increase of sum_F y_F r(F)^2. Empty-set terms are
// dropped since they contribute nothing to r(y) or a(y).
inline FormalSum uncross(const Matroid& m, const LineSet& lines, FormalSum y) {
  for (const auto& [f, c] : y.terms()) {
    if (sgn(c) < 0) throw InvalidArgument("uncross: negative coefficient");
  }
  if (y.coeff(ElementSet{}) != 0) y.add(ElementSet{}, -y.coeff(ElementSet{}));
  const long long rE = m.rank();
  const long long cap =
      static_cast<long long>(y.size() * y.size()) * rE * rE;
  const std::vector<Rational> before = degree_of(y, lines);

  long long steps = 0;
  for (;;) {
    const auto supp = y.support();
    struct Choice {
      ElementSet s, t, meet, join;
      Rational eps, gain;
    };
    std::optional<Choice> best;
    for (std::size_t i = 0; i < supp.size(); ++i) {
      for (std::size_t j = i + 1; j < supp.size(); ++j) {
        ElementSet s = supp[i], t = supp[j];
        if (s.subset_of(t) || t.subset_of(s)) continue;
        if (lex_less(t, s)) std::swap(s, t);
        const Flat mt{s & t, m.rank(s & t)};
        const Flat jn = m.closure(s | t);
        const long long rs = m.rank(s), rt = m.rank(t);
        Rational eps = std::min(y.coeff(s), y.coeff(t));
        Rational gain = eps * (static_cast<long>(mt.rank * mt.rank) +
                               static_cast<long>(jn.rank * jn.rank) -
                               static_cast<long>(rs * rs + rt * rt));
        const bool better =
            !best || gain > best->gain ||
            (gain == best->gain &&
             (lex_less(s, best->s) || (s == best->s && lex_less(t, best->t))));
        if (better) {
          best = Choice{s, t, mt.elements, jn.elements, std::move(eps),
                        std::move(gain)};
        }
      }
    }
    if (!best) break;
    if (++steps > std::max(cap, 1LL)) {
      throw InternalError("uncross did not terminate within " +
                          std::to_string(cap) + " replacements");
    }
    y.add(best->s, -best->eps);
    y.add(best->t, -best->eps);
    if (!best->meet.empty()) y.add(best->meet, best->eps);
    y.add(best->join, best->eps);
  }
  const std::vector<Rational> after = degree_of(y, lines);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (after[l] < before[l]) {
      throw InternalError("uncross lowered a(y) on line " + std::to_string(l));
    }
  }
  return y;
}

// 1/2 (S + T) with S a subset of T.
struct Cover {
  ElementSet s;
  ElementSet t;

  friend bool operator==(const Cover&, const Cover&) = default;
};

inline bool is_cover(const Cover& c, const LineSet& lines) {
  if (!c.s.subset_of(c.t)) return false;
  for (const auto& l : lines) {
    if (degree(c.s, l) + degree(c.t, l) < 2) return false;
  }
  return true;
}

inline Rational cover_value(const Matroid& m, const Cover& c) {
  return ratio(m.rank(c.s) + m.rank(c.t), 2);
}

namespace detail {

struct ChainDual {
  FormalSum y;                      // chain supported, basic
  std::vector<ElementSet> chain;    // increasing
  LinearProgram chain_lp;           // rows = chain flats
  LPSolution restricted;
  Rational value;
};

// Optimal dual -> uncrossed chain -> basic optimum over the chain rows.
inline ChainDual chain_dual(const Matroid& m, const LineSet& lines,
                            const std::vector<Rational>& w,
                            const ConstraintSystem& sys) {
  ChainDual out;
  const LPSolution full = solve(sys.as_lp(w));
  if (full.status != LPStatus::kOptimal) {
    throw InternalError("matching LP is not optimal: " +
                        to_string(full.status));
  }
  FormalSum y;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    y.add(sys.rows[i].flat, full.dual[i]);
  }
  y = uncross(m, lines, std::move(y));
  if (!y.chain_supported()) throw InternalError("uncross left a non-chain");
  if (rank_of(m, y) != full.objective_value) {
    throw InternalError("uncross changed the dual objective");
  }
  out.chain = y.support();
  out.chain_lp.objective = w;
  for (ElementSet f : out.chain) {
    DegreeVector a = degree_vector(f, lines);
    out.chain_lp.rows.emplace_back(a.begin(), a.end());
    out.chain_lp.rhs.emplace_back(m.rank(f));
  }
  std::vector<int> all(out.chain.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  out.restricted = solve_restricted_dual(out.chain_lp, all);
  if (out.restricted.status != LPStatus::kOptimal ||
      out.restricted.objective_value != full.objective_value) {
    throw InternalError("chain-restricted dual lost optimality");
  }
  for (std::size_t i = 0; i < out.chain.size(); ++i) {
    out.y.add(out.chain[i], out.restricted.dual[i]);
  }
  out.value = full.objective_value;
  return out;
}

}  // namespace detail

// Minimum cover from the uncrossed, chain-restricted basic dual at w = 1.
// The dual is half-integral; T is the largest chain flat whose tail weight
// reaches 1/2 and S the largest whose tail weight reaches 1.
inline Cover minimum_cover(const Matroid& m, const LineSet& lines,
                           long long budget = kDefaultFlatBudget) {
  const ElementSet bottom = m.closure(ElementSet{}).elements;
  if (lines.empty()) return Cover{bottom, bottom};
  const ConstraintSystem sys = build_constraints(m, lines, budget);
  const detail::ChainDual cd =
      detail::chain_dual(m, lines, ones(lines.size()), sys);

  Cover c{bottom, bottom};
  bool have_t = false, have_s = false;
  Rational tail = 0;
  for (auto it = cd.chain.rbegin(); it != cd.chain.rend(); ++it) {
    const Rational& coeff = cd.y.coeff(*it);
    if (!is_half_integer(coeff)) {
      throw InternalError("w=1 chain dual is not half-integral");
    }
    tail += coeff;
    if (!have_t && tail >= ratio(1, 2)) {
      c.t = *it;
      have_t = true;
    }
    if (!have_s && tail >= 1) {
      c.s = *it;
      have_s = true;
    }
  }
  if (!is_cover(c, lines) || cover_value(m, c) != cd.value) {
    throw InternalError("rounded chain dual is not a minimum cover");
  }
  return c;
}

struct DominantCoverResult {
  Cover cover;
  Rational nu;
  std::vector<Cover> minimum_covers;
};

namespace detail {

// Per-flat bitmasks over the lines: which lines a flat meets, contains.
struct LineMasks {
  std::vector<std::uint64_t> meets;
  std::vector<std::uint64_t> contains;
};

inline LineMasks line_masks(ElementSet f, const LineSet& lines) {
  const std::size_t words = (lines.size() + 63) / 64;
  LineMasks lm{std::vector<std::uint64_t>(words),
               std::vector<std::uint64_t>(words)};
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const int d = degree(f, lines[l]);
    if (d >= 1) lm.meets[l / 64] |= std::uint64_t{1} << (l % 64);
    if (d == 2) lm.contains[l / 64] |= std::uint64_t{1} << (l % 64);
  }
  return lm;
}

}  // namespace detail

// S* = cl( union over lines l not inside T* of (T* meet l) ).
inline ElementSet dominant_s_from_t(const Matroid& m, const LineSet& lines,
                                    ElementSet t_star) {
  ElementSet u;
  for (const auto& l : lines) {
    if (!l.subset_of(t_star)) u |= (t_star & l);
  }
  return m.closure(u).elements;
}

// Enumerates every minimum cover among the given flats of m (all of them,
// ordered by rank) and folds them with (S meet S', T join T').
inline DominantCoverResult dominant_cover(const Matroid& m,
                                          const LineSet& lines,
                                          const std::vector<Flat>& flats,
                                          const Rational& nu) {
  DominantCoverResult res;
  res.nu = nu;
  const Rational twice = 2 * res.nu;
  if (!is_integer(twice)) throw InternalError("2 nu* is not integral");
  const long target = twice.get_num().get_si();

  std::vector<detail::LineMasks> masks;
  masks.reserve(flats.size());
  for (const Flat& f : flats) masks.push_back(detail::line_masks(f.elements, lines));
  const std::size_t words = (lines.size() + 63) / 64;
  const std::uint64_t last_word =
      lines.size() % 64 == 0 ? ~std::uint64_t{0}
                             : (std::uint64_t{1} << (lines.size() % 64)) - 1;

  for (std::size_t i = 0; i < flats.size(); ++i) {
    for (std::size_t j = i; j < flats.size(); ++j) {
      if (flats[i].rank + flats[j].rank != target) continue;
      if (!flats[i].elements.subset_of(flats[j].elements)) continue;
      // With S inside T, the pair covers l iff l meets S or l lies in T.
      bool covers = true;
      for (std::size_t k = 0; k < words && covers; ++k) {
        const std::uint64_t need = k + 1 == words ? last_word : ~std::uint64_t{0};
        covers = ((masks[i].meets[k] | masks[j].contains[k]) & need) == need;
      }
      if (covers) res.minimum_covers.push_back({flats[i].elements, flats[j].elements});
    }
  }
  if (res.minimum_covers.empty()) {
    throw InternalError("no minimum cover found among flat pairs");
  }
  Cover fold = res.minimum_covers.front();
  for (const Cover& c : res.minimum_covers) {
    fold.s = fold.s & c.s;
    fold.t = m.closure(fold.t | c.t).elements;
  }
  if (!is_cover(fold, lines) || cover_value(m, fold) != res.nu) {
    throw InternalError("folded cover is not a minimum cover");
  }
  if (dominant_s_from_t(m, lines, fold.t) != fold.s) {
    throw InternalError("dominant cover violates the S* = cl(...) identity");
  }
  res.cover = fold;
  return res;
}

inline DominantCoverResult dominant_cover(const Matroid& m,
                                          const LineSet& lines,
                                          long long budget = kDefaultFlatBudget) {
  std::vector<Flat> flats = enumerate_flats(m, budget);
  const Rational nu = max_size_matching(build_constraints(flats, lines)).nu;
  return dominant_cover(m, lines, flats, nu);
}

// Smallest flat containing every line in the support of x.
inline Flat closure_of_matching(const Matroid& m, const LineSet& lines,
                                const std::vector<Rational>& x) {
  if (x.size() != lines.size()) throw DimensionMismatch("x vs lines");
  ElementSet u;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (sgn(x[l]) > 0) u |= lines[l];
  }
  return m.closure(u);
}

// Solves D x = b for square nonsingular D with entries in {0,1,2} and
// column sums at most 2. Rows are nodes and columns edges, half-edges or
// double loops. A row with a single incident column fixes that column
// (integral for entry 1, half-integral for entry 2); once none is left,
// the remainder is a disjoint union of cycles, which must be odd.
inline std::vector<Rational> solve_chain_system(
    const std::vector<std::vector<int>>& d, const std::vector<Rational>& b) {
  const std::size_t n = d.size();
  if (b.size() != n) throw DimensionMismatch("chain system: b length");
  for (const auto& row : d) {
    if (row.size() != n) throw DimensionMismatch("chain system: not square");
    for (int v : row) {
      if (v < 0 || v > 2) throw InvalidArgument("chain system: entry not in {0,1,2}");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += d[i][j];
    if (s > 2) throw InvalidArgument("chain system: column sum exceeds 2");
  }
  for (const auto& q : b) {
    if (!is_integer(q)) throw InvalidArgument("chain system: b not integral");
  }

  std::vector<bool> row_alive(n, true), col_alive(n, true);
  std::vector<Rational> rhs = b, x(n, Rational(0));
  auto incident = [&](std::size_t i) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_alive[j] && d[i][j] != 0) cols.push_back(j);
    }
    return cols;
  };
  auto fix = [&](std::size_t j, const Rational& value) {
    x[j] = value;
    col_alive[j] = false;
    for (std::size_t r = 0; r < n; ++r) {
      if (row_alive[r] && d[r][j] != 0) rhs[r] -= d[r][j] * value;
    }
  };

  for (std::size_t left = n; left > 0;) {
    bool peeled = false;
    for (std::size_t i = 0; i < n && !peeled; ++i) {
      if (!row_alive[i]) continue;
      const auto cols = incident(i);
      if (cols.empty()) throw SingularMatrix("chain system is singular");
      if (cols.size() != 1) continue;
      const std::size_t j = cols.front();
      row_alive[i] = false;
      fix(j, rhs[i] / d[i][j]);
      --left;
      peeled = true;
    }
    if (peeled) continue;

    // Every live row has degree >= 2 here, which forces a 2-regular graph
    // whose columns are plain edges.
    for (std::size_t start = 0; start < n; ++start) {
      if (!row_alive[start]) continue;
      std::vector<std::size_t> nodes, edges;
      std::size_t v = start;
      std::optional<std::size_t> came;
      for (;;) {
        const auto cols = incident(v);
        if (cols.size() != 2) throw SingularMatrix("chain system is singular");
        const std::size_t e = (came && cols[0] == *came) ? cols[1] : cols[0];
        nodes.push_back(v);
        edges.push_back(e);
        std::optional<std::size_t> next;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != v && row_alive[r] && d[r][e] != 0) next = r;
        }
        if (!next || d[v][e] != 1) {
          throw SingularMatrix("chain system is singular");
        }
        came = e;
        v = *next;
        if (v == start) break;
        if (nodes.size() > n) throw SingularMatrix("chain system is singular");
      }
      const std::size_t len = nodes.size();
      if (len % 2 == 0) throw SingularMatrix("chain system is singular");
      // edges[i] joins nodes[i] and nodes[i+1].
      std::vector<Rational> values(len);
      for (std::size_t i = 0; i < len; ++i) {
        Rational s = 0;
        for (std::size_t t = 0; t < len; ++t) {
          const Rational& bv = rhs[nodes[(i + 1 + t) % len]];
          if (t % 2 == 0) s += bv; else s -= bv;
        }
        values[i] = s / 2;
      }
      for (std::size_t v2 : nodes) row_alive[v2] = false;
      for (std::size_t i = 0; i < len; ++i) {
        x[edges[i]] = values[i];
        col_alive[edges[i]] = false;
      }
      left -= len;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += d[i][j] * x[j];
    if (s != b[i]) throw InternalError("chain system solution check failed");
  }
  return x;
}

// Chain-supported optimal dual with coefficients in (1/2)Z for integral
// w >= 0. The basic dual from the LP is recomputed through the column-sum-2
// system D = U A' and the two routes must agree.
inline FormalSum half_integer_dual(const Matroid& m, const LineSet& lines,
                                   const std::vector<Rational>& w,
                                   long long budget = kDefaultFlatBudget) {
  if (w.size() != lines.size()) throw DimensionMismatch("w vs lines");
  for (const auto& q : w) {
    if (!is_integer(q) || sgn(q) < 0) {
      throw InvalidArgument("half_integer_dual needs integral w >= 0");
    }
  }
  if (std::all_of(w.begin(), w.end(), [](const Rational& q) { return sgn(q) == 0; })) {
    return FormalSum{};
  }
  const ConstraintSystem sys = build_constraints(m, lines, budget);
  const detail::ChainDual cd = detail::chain_dual(m, lines, w, sys);
  for (const auto& [f, c] : cd.y.terms()) {
    if (!is_half_integer(c)) {
      throw InternalError("chain dual coefficient " + to_string(c) +
                          " is not half-integral");
    }
  }

  // Rows with nonbasic slack carry the dual; basic structurals are tight.
  const int n = int(lines.size());
  std::vector<bool> slack_basic(cd.chain.size(), false);
  std::vector<int> cols;
  for (int v : cd.restricted.basis) {
    if (v >= n) slack_basic[v - n] = true; else cols.push_back(v);
  }
  std::sort(cols.begin(), cols.end());
  std::vector<int> rows;
  for (std::size_t i = 0; i < cd.chain.size(); ++i) {
    if (!slack_basic[i]) rows.push_back(int(i));
  }
  if (rows.size() != cols.size()) throw InternalError("basis is not square");
  const std::size_t k = rows.size();
  // D = U A': consecutive differences of chain rows.
  std::vector<std::vector<int>> dmat(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const int cur = degree(cd.chain[rows[i]], lines[cols[j]]);
      const int prev = i == 0 ? 0 : degree(cd.chain[rows[i - 1]], lines[cols[j]]);
      dmat[i][j] = cur - prev;
    }
  }
  // inv(A') = inv(D) U, so y^T = w_C^T inv(D) U.
  std::vector<Rational> wd(k, Rational(0));  // w_C^T inv(D)
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Rational> e(k, Rational(0));
    e[c] = 1;
    const std::vector<Rational> col = solve_chain_system(dmat, e);
    for (std::size_t j = 0; j < k; ++j) {
      if (!is_half_integer(col[j])) {
        throw InternalError("inverse of D is not half-integral");
      }
      wd[c] += w[cols[j]] * col[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Rational yi = wd[i] - (i + 1 < k ? wd[i + 1] : Rational(0));
    if (yi != cd.y.coeff(cd.chain[rows[i]])) {
      throw InternalError("column-sum-2 route disagrees with the LP dual");
    }
  }
  return cd.y;
}

}  // namespace fracmat
