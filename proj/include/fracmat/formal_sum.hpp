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

#include <map>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

// Finitely supported rational combination of flats. Zero terms are never
// stored.
class FormalSum {
 public:
  using Terms = std::map<ElementSet, Rational>;

  FormalSum() = default;

  void add(ElementSet flat, const Rational& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(flat, coeff);
    if (!inserted) {
      it->second += coeff;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  // this += t * other
  void add_scaled(const FormalSum& other, const Rational& t) {
    for (const auto& [f, c] : other.terms_) add(f, t * c);
  }

  Rational coeff(ElementSet flat) const {
    auto it = terms_.find(flat);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::vector<ElementSet> support() const {
    std::vector<ElementSet> s;
    for (const auto& [f, c] : terms_) s.push_back(f);
    return s;
  }

  // Support totally ordered by inclusion.
  bool chain_supported() const {
    const ElementSet* prev = nullptr;
    for (const auto& [f, c] : terms_) {
      if (prev != nullptr && !prev->subset_of(f)) return false;
      prev = &f;
    }
    return true;
  }

  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  Terms terms_;
};

// r(y) = sum_F y_F r(F)
inline Rational rank_of(const Matroid& m, const FormalSum& y) {
  Rational r = 0;
  for (const auto& [f, c] : y.terms()) r += c * m.rank(f);
  return r;
}

// a(y) = sum_F y_F a(F)
inline std::vector<Rational> degree_of(const FormalSum& y,
                                       const LineSet& lines) {
  std::vector<Rational> a(lines.size(), Rational(0));
  for (const auto& [f, c] : y.terms()) {
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (int d = degree(f, lines[l]); d != 0) a[l] += c * d;
    }
  }
  return a;
}

}  // namespace fracmat
