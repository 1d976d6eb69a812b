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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

// Serializable description of one of the concrete matroid kinds.
struct MatroidSpec {
  std::string kind;  // uniform | free | graphic | linear_gf | linear_q | partition
  int n = 0;
  int k = 0;
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::uint64_t> p;
  std::vector<std::vector<Rational>> columns;
  std::vector<int> blocks;
  std::vector<int> capacities;

  Matroid build() const {
    if (kind == "uniform") return Matroid::uniform(n, k);
    if (kind == "free") return Matroid::free(n);
    if (kind == "graphic") return Matroid::graphic(vertices, edges);
    if (kind == "linear_gf") {
      if (!p) throw InvalidArgument("linear_gf needs a prime p");
      std::vector<std::vector<std::uint64_t>> cols;
      for (const auto& c : columns) {
        std::vector<std::uint64_t> col;
        for (const auto& q : c) {
          if (!is_integer(q)) throw InvalidArgument("linear_gf entry not an integer");
          mpz_class v = q.get_num() % mpz_class(static_cast<unsigned long>(*p));
          if (v < 0) v += static_cast<unsigned long>(*p);
          col.push_back(v.get_ui());
        }
        cols.push_back(std::move(col));
      }
      return Matroid::linear_gf(*p, std::move(cols));
    }
    if (kind == "linear_q") return Matroid::linear_q(columns);
    if (kind == "partition") return Matroid::partition(blocks, capacities);
    throw InvalidArgument("unknown matroid kind '" + kind + "'");
  }
};

struct Instance {
  MatroidSpec spec;
  LineSet lines;
  std::vector<Rational> weights;
};

struct RandomInstanceConfig {
  int max_elements = 10;
  int max_rank = 6;
  int max_lines = 8;
  int max_weight = 8;
  std::vector<std::string> kinds = {"uniform", "free", "graphic", "linear_gf"};
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Inclusive range; modulo keeps the stream identical across standard
// libraries.
inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline MatroidSpec random_matroid(std::mt19937_64& rng,
                                  const RandomInstanceConfig& cfg,
                                  const std::string& kind) {
  MatroidSpec s;
  s.kind = kind;
  const int max_n = std::max(1, cfg.max_elements);
  const int max_r = std::max(1, cfg.max_rank);
  if (kind == "free") {
    s.n = uniform_int(rng, 1, std::min(max_n, max_r));
  } else if (kind == "uniform") {
    s.n = uniform_int(rng, 1, max_n);
    s.k = uniform_int(rng, 1, std::min(s.n, max_r));
  } else if (kind == "graphic") {
    s.vertices = uniform_int(rng, 2, std::min(max_r + 1, 7));
    const int m = uniform_int(rng, 1, max_n);
    for (int i = 0; i < m; ++i) {
      const int u = uniform_int(rng, 0, s.vertices - 1);
      int v = uniform_int(rng, 0, s.vertices - 2);
      if (v >= u) ++v;
      s.edges.emplace_back(u, v);
    }
  } else if (kind == "linear_gf") {
    s.p = 2;
    const int rows = uniform_int(rng, 1, max_r);
    const int m = uniform_int(rng, 1, max_n);
    for (int i = 0; i < m; ++i) {
      std::vector<Rational> col;
      do {
        col.clear();
        for (int r = 0; r < rows; ++r) col.emplace_back(uniform_int(rng, 0, 1));
      } while (std::all_of(col.begin(), col.end(),
                           [](const Rational& q) { return sgn(q) == 0; }));
      s.columns.push_back(std::move(col));
    }
  } else {
    throw InvalidArgument("random instances do not support kind '" + kind + "'");
  }
  return s;
}

}  // namespace detail

// Instance `index` of the stream for `seed`; independent of every other
// index, so sweeps can be sharded.
inline Instance random_instance(std::uint64_t seed, std::uint64_t index,
                                const RandomInstanceConfig& cfg = {}) {
  std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(index)));
  Instance inst;
  const std::string& kind =
      cfg.kinds[detail::uniform_int(rng, 0, int(cfg.kinds.size()) - 1)];
  inst.spec = detail::random_matroid(rng, cfg, kind);
  const Matroid m = inst.spec.build();
  const int n = m.ground_size();
  const int want = detail::uniform_int(rng, 1, std::max(1, cfg.max_lines));
  for (int attempt = 0; attempt < 50 * want && int(inst.lines.size()) < want;
       ++attempt) {
    const int size = detail::uniform_int(rng, 1, std::min(3, n));
    ElementSet l;
    while (l.size() < size) l.insert(detail::uniform_int(rng, 0, n - 1));
    const int r = m.rank(l);
    if (r >= 1 && r <= 2) inst.lines.push_back(l);
  }
  for (std::size_t i = 0; i < inst.lines.size(); ++i) {
    inst.weights.emplace_back(detail::uniform_int(rng, 0, cfg.max_weight));
  }
  return inst;
}

}  // namespace fracmat
