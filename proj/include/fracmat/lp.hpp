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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fracmat/errors.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

// maximize c.x subject to A x <= b, x >= 0.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  void check() const {
    if (rows.size() != rhs.size()) {
      throw DimensionMismatch("LP: row count differs from rhs length");
    }
    for (const auto& r : rows) {
      if (r.size() != objective.size()) {
        throw DimensionMismatch("LP: row length differs from objective");
      }
    }
  }
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

inline std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective_value;
  // Basic variable per row; ids < n are structural, n + i is the slack of
  // row i.
  std::vector<int> basis;
  int pivots = 0;
};

namespace detail {

// Dictionary form x_B(i) = beta_i - sum_j alpha_ij x_N(j),
// z = z0 + sum_j cbar_j x_N(j). Only nonbasic columns are stored, so a pivot
// costs O(rows * structurals).
class Dictionary {
 public:
  Dictionary(const LinearProgram& lp)
      : m_(lp.num_rows()), n_(lp.num_vars()), beta_(lp.rhs),
        alpha_(lp.rows), cbar_(lp.objective) {
    for (std::size_t i = 0; i < m_; ++i) basic_.push_back(int(n_ + i));
    for (std::size_t j = 0; j < n_; ++j) nonbasic_.push_back(int(j));
  }

  LPSolution run(const LinearProgram& lp) {
    LPSolution sol;
    if (!phase_one()) {
      sol.status = LPStatus::kInfeasible;
      sol.pivots = pivots_;
      return sol;
    }
    load_objective(lp.objective);
    if (!optimize()) {
      sol.status = LPStatus::kUnbounded;
      sol.pivots = pivots_;
      return sol;
    }
    sol.status = LPStatus::kOptimal;
    sol.primal.assign(n_, Rational(0));
    sol.dual.assign(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] < int(n_)) sol.primal[basic_[i]] = beta_[i];
    }
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (nonbasic_[j] >= int(n_)) sol.dual[nonbasic_[j] - n_] = -cbar_[j];
    }
    sol.objective_value = z0_;
    sol.basis = basic_;
    sol.pivots = pivots_;
    return sol;
  }

 private:
  static constexpr int kAux = -1;

  void pivot(std::size_t p, std::size_t q) {
    ++pivots_;
    const Rational inv = 1 / alpha_[p][q];
    beta_[p] *= inv;
    for (std::size_t j = 0; j < alpha_[p].size(); ++j) {
      if (j != q) alpha_[p][j] *= inv;
    }
    alpha_[p][q] = inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p || sgn(alpha_[i][q]) == 0) continue;
      const Rational f = alpha_[i][q];
      beta_[i] -= f * beta_[p];
      for (std::size_t j = 0; j < alpha_[i].size(); ++j) {
        if (j != q) alpha_[i][j] -= f * alpha_[p][j];
      }
      alpha_[i][q] = -f * inv;
    }
    if (sgn(cbar_[q]) != 0) {
      const Rational f = cbar_[q];
      z0_ += f * beta_[p];
      for (std::size_t j = 0; j < cbar_.size(); ++j) {
        if (j != q) cbar_[j] -= f * alpha_[p][j];
      }
      cbar_[q] = -f * inv;
    }
    std::swap(basic_[p], nonbasic_[q]);
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::optional<std::size_t> q;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (sgn(cbar_[j]) > 0 && (!q || nonbasic_[j] < nonbasic_[*q])) q = j;
      }
      if (!q) return true;
      std::optional<std::size_t> p;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(alpha_[i][*q]) <= 0) continue;
        Rational ratio = beta_[i] / alpha_[i][*q];
        if (!p || ratio < best || (ratio == best && basic_[i] < basic_[*p])) {
          p = i;
          best = std::move(ratio);
        }
      }
      if (!p) return false;
      pivot(*p, *q);
    }
  }

  // Auxiliary problem max -x0 with x0 added to every row. Returns false
  // when the original problem is infeasible.
  bool phase_one() {
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(beta_[i]) < 0 && (!worst || beta_[i] < beta_[*worst])) worst = i;
    }
    if (!worst) return true;
    const std::size_t q = nonbasic_.size();
    for (auto& row : alpha_) row.push_back(Rational(-1));
    nonbasic_.push_back(aux_id());
    cbar_.assign(nonbasic_.size(), Rational(0));
    cbar_[q] = -1;
    z0_ = 0;
    pivot(*worst, q);
    optimize();
    if (sgn(z0_) < 0) return false;
    // Drive x0 out of the basis if it stayed at level zero.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] != aux_id()) continue;
      std::optional<std::size_t> q2;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (sgn(alpha_[i][j]) != 0 && (!q2 || nonbasic_[j] < nonbasic_[*q2])) {
          q2 = j;
        }
      }
      if (!q2) throw InternalError("simplex: auxiliary row is degenerate");
      pivot(i, *q2);
    }
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (nonbasic_[j] != aux_id()) continue;
      for (auto& row : alpha_) row.erase(row.begin() + j);
      nonbasic_.erase(nonbasic_.begin() + j);
      break;
    }
    return true;
  }

  void load_objective(const std::vector<Rational>& c) {
    cbar_.assign(nonbasic_.size(), Rational(0));
    z0_ = 0;
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (nonbasic_[j] < int(n_)) cbar_[j] = c[nonbasic_[j]];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= int(n_) || sgn(c[basic_[i]]) == 0) continue;
      const Rational& ci = c[basic_[i]];
      z0_ += ci * beta_[i];
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        cbar_[j] -= ci * alpha_[i][j];
      }
    }
  }

  int aux_id() const { return int(n_ + m_); }

  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> beta_;
  std::vector<std::vector<Rational>> alpha_;
  std::vector<Rational> cbar_;
  Rational z0_ = 0;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  int pivots_ = 0;
};

}  // namespace detail

// Exact primal simplex with Bland's rule. When optimal, returns a basic
// primal solution and the complementary basic dual.
inline LPSolution solve(const LinearProgram& lp) {
  lp.check();
  detail::Dictionary dict(lp);
  return dict.run(lp);
}

// Optimal dual supported on the given rows: solves the primal with only
// those rows kept. Status refers to the dual: kInfeasible when the restricted
// primal is unbounded, kUnbounded when it is infeasible.
inline LPSolution solve_restricted_dual(const LinearProgram& lp,
                                        const std::vector<int>& support) {
  lp.check();
  LinearProgram sub;
  sub.objective = lp.objective;
  for (int r : support) {
    if (r < 0 || r >= int(lp.num_rows())) {
      throw InvalidArgument("restricted dual: row index out of range");
    }
    sub.rows.push_back(lp.rows[r]);
    sub.rhs.push_back(lp.rhs[r]);
  }
  LPSolution s = solve(sub);
  if (s.status == LPStatus::kUnbounded) {
    s.status = LPStatus::kInfeasible;
    return s;
  }
  if (s.status == LPStatus::kInfeasible) {
    s.status = LPStatus::kUnbounded;
    return s;
  }
  std::vector<Rational> dual(lp.num_rows(), Rational(0));
  for (std::size_t k = 0; k < support.size(); ++k) dual[support[k]] = s.dual[k];
  s.dual = std::move(dual);
  // Re-index slack ids in the basis to the full row numbering.
  const int n = int(lp.num_vars());
  for (auto& b : s.basis) {
    if (b >= n) b = n + support[b - n];
  }
  return s;
}

}  // namespace fracmat
