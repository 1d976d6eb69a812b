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
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/rational.hpp"

namespace fracmat {

inline constexpr long long kDefaultFlatBudget = 20000;

namespace detail {

// Rank oracle for a finite matroid on {0, ..., n-1}. Implementations are
// immutable; the memo table is the only mutable state and is guarded.
class MatroidImpl {
 public:
  explicit MatroidImpl(int n) : n_(n) {
    if (n < 0 || n > kMaxGroundSize) {
      throw InvalidArgument("ground size " + std::to_string(n) +
                            " outside [0, 64]");
    }
  }
  virtual ~MatroidImpl() = default;
  MatroidImpl(const MatroidImpl&) = delete;
  MatroidImpl& operator=(const MatroidImpl&) = delete;

  int ground_size() const { return n_; }
  virtual std::string kind() const = 0;

  int rank(ElementSet x) const {
    if (!memoized()) return compute_rank(x);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = cache_.find(x.bits()); it != cache_.end()) {
        return it->second;
      }
    }
    const int r = compute_rank(x);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(x.bits(), r);
    return r;
  }

 protected:
  virtual int compute_rank(ElementSet x) const = 0;
  virtual bool memoized() const { return true; }

 private:
  int n_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, int> cache_;
};

}  // namespace detail

// A flat together with its rank.
struct Flat {
  ElementSet elements;
  int rank = 0;

  friend bool operator==(const Flat&, const Flat&) = default;
  friend auto operator<=>(const Flat& a, const Flat& b) {
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    return a.elements <=> b.elements;
  }
};

// Shared, immutable handle to a matroid. Copies are cheap and share the
// rank memo.
class Matroid {
 public:
  explicit Matroid(std::shared_ptr<const detail::MatroidImpl> impl)
      : impl_(std::move(impl)) {}

  static Matroid uniform(int n, int k);
  static Matroid free(int n);
  static Matroid graphic(int vertices,
                         std::vector<std::pair<int, int>> edges);
  // Columns over GF(p); every column has the same number of rows.
  static Matroid linear_gf(std::uint64_t p,
                           std::vector<std::vector<std::uint64_t>> columns);
  static Matroid linear_q(std::vector<std::vector<Rational>> columns);
  // Elements are numbered block by block.
  static Matroid partition(std::vector<int> block_sizes,
                           std::vector<int> capacities);
  // M|S, elements of S renumbered in increasing order.
  static Matroid restriction(const Matroid& base, ElementSet subset);
  // M/S on E \ S, renumbered in increasing order.
  static Matroid contraction(const Matroid& base, ElementSet subset);
  static Matroid direct_sum(const std::vector<Matroid>& parts);
  // Adds element n+j parallel to originals[j] for every j.
  static Matroid parallel_extension(const Matroid& base,
                                    std::vector<int> originals);

  int ground_size() const { return impl_->ground_size(); }
  ElementSet ground() const { return ElementSet::full(ground_size()); }
  std::string kind() const { return impl_->kind(); }

  int rank(ElementSet x) const {
    check_subset(x);
    return impl_->rank(x);
  }
  int rank() const { return impl_->rank(ground()); }

  Flat closure(ElementSet x) const {
    const int r = rank(x);
    ElementSet out = x;
    (ground() - x).for_each([&](int e) {
      if (impl_->rank(x | ElementSet::singleton(e)) == r) out.insert(e);
    });
    return Flat{out, r};
  }

  bool is_flat(ElementSet x) const {
    const int r = rank(x);
    bool closed = true;
    (ground() - x).for_each([&](int e) {
      if (closed && impl_->rank(x | ElementSet::singleton(e)) == r) {
        closed = false;
      }
    });
    return closed;
  }

  void check_subset(ElementSet x) const {
    if (!x.subset_of(ground())) {
      throw InvalidArgument("element id out of range in " + x.to_string() +
                            " for ground size " +
                            std::to_string(ground_size()));
    }
  }

 private:
  std::shared_ptr<const detail::MatroidImpl> impl_;
};

namespace detail {

class UniformImpl final : public MatroidImpl {
 public:
  UniformImpl(int n, int k) : MatroidImpl(n), k_(k) {
    if (k < 0 || k > n) throw InvalidArgument("uniform: need 0 <= k <= n");
  }
  std::string kind() const override { return "uniform"; }

 protected:
  int compute_rank(ElementSet x) const override {
    return std::min(x.size(), k_);
  }
  bool memoized() const override { return false; }

 private:
  int k_;
};

class FreeImpl final : public MatroidImpl {
 public:
  using MatroidImpl::MatroidImpl;
  std::string kind() const override { return "free"; }

 protected:
  int compute_rank(ElementSet x) const override { return x.size(); }
  bool memoized() const override { return false; }
};

class GraphicImpl final : public MatroidImpl {
 public:
  GraphicImpl(int vertices, std::vector<std::pair<int, int>> edges)
      : MatroidImpl(static_cast<int>(edges.size())),
        vertices_(vertices),
        edges_(std::move(edges)) {
    if (vertices < 0) throw InvalidArgument("graphic: negative vertex count");
    for (const auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= vertices || v >= vertices) {
        throw InvalidArgument("graphic: edge endpoint out of range");
      }
    }
  }
  std::string kind() const override { return "graphic"; }

 protected:
  // Size of a spanning forest of the edge subset.
  int compute_rank(ElementSet x) const override {
    std::vector<int> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    int r = 0;
    x.for_each([&](int e) {
      const int a = find(edges_[e].first);
      const int b = find(edges_[e].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    });
    return r;
  }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e,
                             std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = r * a % p;
    a = a * a % p;
    e >>= 1U;
  }
  return r;
}

class LinearGFImpl final : public MatroidImpl {
 public:
  LinearGFImpl(std::uint64_t p, std::vector<std::vector<std::uint64_t>> cols)
      : MatroidImpl(static_cast<int>(cols.size())), p_(p), cols_(std::move(cols)) {
    if (!is_prime(p) || p > (std::uint64_t{1} << 31)) {
      throw InvalidArgument("linear_gf: p must be a prime <= 2^31");
    }
    rows_ = cols_.empty() ? 0 : cols_.front().size();
    for (auto& c : cols_) {
      if (c.size() != rows_) {
        throw DimensionMismatch("linear_gf: ragged columns");
      }
      for (auto& v : c) v %= p_;
    }
  }
  std::string kind() const override { return "linear_gf"; }
  std::uint64_t prime() const { return p_; }

 protected:
  int compute_rank(ElementSet x) const override {
    std::vector<std::vector<std::uint64_t>> m;
    x.for_each([&](int e) { m.push_back(cols_[e]); });
    // Rows of m are the selected columns; rank is symmetric.
    int r = 0;
    const std::size_t width = rows_;
    for (std::size_t c = 0; c < width && r < static_cast<int>(m.size()); ++c) {
      std::size_t piv = r;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[piv], m[r]);
      const std::uint64_t inv = pow_mod(m[r][c], p_ - 2, p_);
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        const std::uint64_t f = m[i][c] * inv % p_;
        for (std::size_t j = c; j < width; ++j) {
          m[i][j] = (m[i][j] + (p_ - f) * m[r][j]) % p_;
        }
      }
      ++r;
    }
    return r;
  }

 private:
  std::uint64_t p_;
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint64_t>> cols_;
};

class LinearQImpl final : public MatroidImpl {
 public:
  explicit LinearQImpl(std::vector<std::vector<Rational>> cols)
      : MatroidImpl(static_cast<int>(cols.size())) {
    rows_ = cols.empty() ? 0 : cols.front().size();
    for (auto& c : cols) {
      if (c.size() != rows_) throw DimensionMismatch("linear_q: ragged columns");
      // Clear denominators; scaling a column does not change the matroid.
      mpz_class l = 1;
      for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                      q.get_den_mpz_t());
      std::vector<mpz_class> ic;
      ic.reserve(rows_);
      for (const auto& q : c) ic.push_back(q.get_num() * (l / q.get_den()));
      cols_.push_back(std::move(ic));
    }
  }
  std::string kind() const override { return "linear_q"; }
  const std::vector<std::vector<mpz_class>>& columns() const { return cols_; }

 protected:
  // Bareiss fraction-free elimination.
  int compute_rank(ElementSet x) const override {
    std::vector<std::vector<mpz_class>> m;
    x.for_each([&](int e) { m.push_back(cols_[e]); });
    const std::size_t width = rows_;
    int r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < width && r < static_cast<int>(m.size()); ++c) {
      std::size_t piv = r;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[piv], m[r]);
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        for (std::size_t j = c + 1; j < width; ++j) {
          m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
        }
        m[i][c] = 0;
      }
      prev = m[r][c];
      ++r;
    }
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<mpz_class>> cols_;
};

class PartitionImpl final : public MatroidImpl {
 public:
  PartitionImpl(const std::vector<int>& sizes, std::vector<int> caps)
      : MatroidImpl(std::accumulate(sizes.begin(), sizes.end(), 0)),
        caps_(std::move(caps)) {
    if (sizes.size() != caps_.size()) {
      throw DimensionMismatch("partition: blocks and capacities differ");
    }
    int offset = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      if (sizes[b] < 0 || caps_[b] < 0) {
        throw InvalidArgument("partition: negative size or capacity");
      }
      blocks_.push_back(ElementSet::full(offset + sizes[b]) -
                        ElementSet::full(offset));
      offset += sizes[b];
    }
  }
  std::string kind() const override { return "partition"; }

 protected:
  int compute_rank(ElementSet x) const override {
    int r = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      r += std::min((x & blocks_[b]).size(), caps_[b]);
    }
    return r;
  }
  bool memoized() const override { return false; }

 private:
  std::vector<ElementSet> blocks_;
  std::vector<int> caps_;
};

// Maps element i of the new ground set to base element map[i].
inline ElementSet map_set(ElementSet x, const std::vector<int>& map) {
  ElementSet out;
  x.for_each([&](int e) { out.insert(map[e]); });
  return out;
}

class RestrictionImpl final : public MatroidImpl {
 public:
  RestrictionImpl(Matroid base, ElementSet subset)
      : MatroidImpl(subset.size()), base_(std::move(base)),
        map_(subset.elements()) {
    base_.check_subset(subset);
  }
  std::string kind() const override { return "restriction"; }

 protected:
  int compute_rank(ElementSet x) const override {
    return base_.rank(map_set(x, map_));
  }

 private:
  Matroid base_;
  std::vector<int> map_;
};

class ContractionImpl final : public MatroidImpl {
 public:
  ContractionImpl(Matroid base, ElementSet subset)
      : MatroidImpl(base.ground_size() - subset.size()),
        base_(std::move(base)),
        contracted_(subset),
        map_((base_.ground() - subset).elements()) {
    base_.check_subset(subset);
    contracted_rank_ = base_.rank(subset);
  }
  std::string kind() const override { return "contraction"; }

 protected:
  int compute_rank(ElementSet x) const override {
    return base_.rank(map_set(x, map_) | contracted_) - contracted_rank_;
  }

 private:
  Matroid base_;
  ElementSet contracted_;
  std::vector<int> map_;
  int contracted_rank_ = 0;
};

inline int total_ground(const std::vector<Matroid>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.ground_size();
  return n;
}

class DirectSumImpl final : public MatroidImpl {
 public:
  explicit DirectSumImpl(std::vector<Matroid> parts)
      : MatroidImpl(total_ground(parts)), parts_(std::move(parts)) {}
  std::string kind() const override { return "direct_sum"; }

 protected:
  int compute_rank(ElementSet x) const override {
    int r = 0;
    int offset = 0;
    for (const auto& p : parts_) {
      if (p.ground_size() == 0) continue;
      const std::uint64_t bits =
          (x.bits() >> offset) & ElementSet::full(p.ground_size()).bits();
      r += p.rank(ElementSet(bits));
      offset += p.ground_size();
    }
    return r;
  }

 private:
  std::vector<Matroid> parts_;
};

class ParallelExtensionImpl final : public MatroidImpl {
 public:
  ParallelExtensionImpl(Matroid base, std::vector<int> originals)
      : MatroidImpl(base.ground_size() + static_cast<int>(originals.size())),
        base_(std::move(base)) {
    const int n = base_.ground_size();
    for (int e = 0; e < n; ++e) map_.push_back(e);
    for (int o : originals) {
      if (o < 0 || o >= n) {
        throw InvalidArgument("parallel_extension: original out of range");
      }
      map_.push_back(o);
    }
  }
  std::string kind() const override { return "parallel_extension"; }

 protected:
  int compute_rank(ElementSet x) const override {
    return base_.rank(map_set(x, map_));
  }

 private:
  Matroid base_;
  std::vector<int> map_;
};

}  // namespace detail

inline Matroid Matroid::uniform(int n, int k) {
  return Matroid(std::make_shared<detail::UniformImpl>(n, k));
}
inline Matroid Matroid::free(int n) {
  return Matroid(std::make_shared<detail::FreeImpl>(n));
}
inline Matroid Matroid::graphic(int vertices,
                                std::vector<std::pair<int, int>> edges) {
  return Matroid(
      std::make_shared<detail::GraphicImpl>(vertices, std::move(edges)));
}
inline Matroid Matroid::linear_gf(
    std::uint64_t p, std::vector<std::vector<std::uint64_t>> columns) {
  return Matroid(
      std::make_shared<detail::LinearGFImpl>(p, std::move(columns)));
}
inline Matroid Matroid::linear_q(std::vector<std::vector<Rational>> columns) {
  return Matroid(std::make_shared<detail::LinearQImpl>(std::move(columns)));
}
inline Matroid Matroid::partition(std::vector<int> block_sizes,
                                  std::vector<int> capacities) {
  return Matroid(std::make_shared<detail::PartitionImpl>(
      block_sizes, std::move(capacities)));
}
inline Matroid Matroid::restriction(const Matroid& base, ElementSet subset) {
  return Matroid(std::make_shared<detail::RestrictionImpl>(base, subset));
}
inline Matroid Matroid::contraction(const Matroid& base, ElementSet subset) {
  return Matroid(std::make_shared<detail::ContractionImpl>(base, subset));
}
inline Matroid Matroid::direct_sum(const std::vector<Matroid>& parts) {
  return Matroid(std::make_shared<detail::DirectSumImpl>(parts));
}
inline Matroid Matroid::parallel_extension(const Matroid& base,
                                           std::vector<int> originals) {
  return Matroid(std::make_shared<detail::ParallelExtensionImpl>(
      base, std::move(originals)));
}

// Every flat exactly once, ordered by (rank, elements). Breadth-first over
// the lattice: close the empty set, then close F + e for every flat F.
inline std::vector<Flat> enumerate_flats(const Matroid& m,
                                         long long budget = kDefaultFlatBudget) {
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Flat> flats;
  std::deque<Flat> queue;
  const long long work_cap = budget * (m.ground_size() + 1);
  long long work = 0;

  Flat bottom = m.closure(ElementSet{});
  seen.insert(bottom.elements);
  queue.push_back(bottom);
  while (!queue.empty()) {
    Flat f = queue.front();
    queue.pop_front();
    flats.push_back(f);
    if (static_cast<long long>(flats.size()) > budget) {
      throw BudgetExceeded("flat enumeration exceeded its budget", budget);
    }
    ElementSet covered = f.elements;
    for (int e = 0; e < m.ground_size(); ++e) {
      if (covered.contains(e)) continue;
      if (++work > work_cap) {
        throw BudgetExceeded("flat enumeration exceeded its work cap",
                             work_cap);
      }
      Flat g = m.closure(f.elements | ElementSet::singleton(e));
      // Every element of g \ f yields the same cover g.
      covered |= g.elements;
      if (seen.insert(g.elements).second) queue.push_back(g);
    }
  }
  std::sort(flats.begin(), flats.end());
  return flats;
}

inline Flat join(const Matroid& m, ElementSet s, ElementSet t) {
  if (!m.is_flat(s) || !m.is_flat(t)) throw InvalidArgument("join: not a flat");
  return m.closure(s | t);
}

inline Flat meet(const Matroid& m, ElementSet s, ElementSet t) {
  if (!m.is_flat(s) || !m.is_flat(t)) throw InvalidArgument("meet: not a flat");
  return Flat{s & t, m.rank(s & t)};
}

// 0 if X misses l, 2 if X contains l, 1 otherwise.
inline int degree(ElementSet x, ElementSet line) {
  if (!x.intersects(line)) return 0;
  return line.subset_of(x) ? 2 : 1;
}

using DegreeVector = std::vector<int>;

inline DegreeVector degree_vector(ElementSet x, const LineSet& lines) {
  DegreeVector a(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) a[i] = degree(x, lines[i]);
  return a;
}

// Throws LoopsPresent or NotALine.
inline void validate_instance(const Matroid& m, const LineSet& lines) {
  for (int e = 0; e < m.ground_size(); ++e) {
    if (m.rank(ElementSet::singleton(e)) == 0) throw LoopsPresent(e);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    m.check_subset(lines[i]);
    const int r = m.rank(lines[i]);
    if (r < 1 || r > 2) throw NotALine(static_cast<int>(i), r);
  }
}

// Strictly nested proper nonempty flats F_1 < ... < F_k. The sentinels
// F_0 = {} and F_{k+1} = E are implicit.
class Chain {
 public:
  Chain() = default;

  static Chain of(const Matroid& m, std::vector<ElementSet> flats) {
    std::sort(flats.begin(), flats.end());
    for (std::size_t i = 0; i < flats.size(); ++i) {
      const ElementSet f = flats[i];
      if (f.empty() || f == m.ground()) {
        throw InvalidArgument("chain member " + f.to_string() +
                              " is not a proper nonempty subset");
      }
      if (!m.is_flat(f)) {
        throw InvalidArgument("chain member " + f.to_string() +
                              " is not a flat");
      }
      if (i > 0 && (flats[i - 1] == f || !flats[i - 1].subset_of(f))) {
        throw InvalidArgument("chain members are not strictly nested");
      }
    }
    Chain c;
    c.flats_ = std::move(flats);
    c.ground_ = m.ground();
    return c;
  }

  const std::vector<ElementSet>& flats() const { return flats_; }
  int size() const { return static_cast<int>(flats_.size()); }
  bool empty() const { return flats_.empty(); }

  // F_i for i in [0, k+1].
  ElementSet level(int i) const {
    if (i == 0) return ElementSet{};
    if (i == size() + 1) return ground_;
    return flats_[i - 1];
  }
  // F_{i+1} \ F_i for i in [0, k].
  ElementSet block(int i) const { return level(i + 1) - level(i); }
  int block_count() const { return size() + 1; }

 private:
  std::vector<ElementSet> flats_;
  ElementSet ground_;
};

namespace detail {

class StarImpl final : public MatroidImpl {
 public:
  StarImpl(Matroid base, Chain chain)
      : MatroidImpl(base.ground_size()), base_(std::move(base)),
        chain_(std::move(chain)) {
    for (int i = 0; i <= chain_.size(); ++i) {
      level_rank_.push_back(base_.rank(chain_.level(i)));
    }
  }
  std::string kind() const override { return "star"; }

 protected:
  int compute_rank(ElementSet x) const override {
    int r = 0;
    for (int i = 0; i < chain_.block_count(); ++i) {
      const ElementSet xi = x & chain_.block(i);
      if (xi.empty()) continue;
      r += base_.rank(xi | chain_.level(i)) - level_rank_[i];
    }
    return r;
  }

 private:
  Matroid base_;
  Chain chain_;
  std::vector<int> level_rank_;
};

}  // namespace detail

// M * F: direct sum of the minors (M | F_{i+1}) / F_i on the same ground set.
inline Matroid star(const Matroid& m, const Chain& chain) {
  if (chain.empty()) return m;
  // Revalidate against m; a chain built for another matroid is rejected.
  Chain checked = Chain::of(m, chain.flats());
  return Matroid(std::make_shared<detail::StarImpl>(m, std::move(checked)));
}

// Closure of X in M * F, computed blockwise in M.
inline ElementSet star_closure(const Matroid& m, const Chain& chain,
                               ElementSet x) {
  m.check_subset(x);
  ElementSet out;
  for (int i = 0; i < chain.block_count(); ++i) {
    const ElementSet lo = chain.level(i);
    out |= m.closure((x & chain.level(i + 1)) | lo).elements - lo;
  }
  return out;
}

// Greedy base: scan elements in increasing order.
inline ElementSet greedy_base(const Matroid& m) {
  ElementSet b;
  int r = 0;
  for (int e = 0; e < m.ground_size(); ++e) {
    if (m.rank(b | ElementSet::singleton(e)) > r) {
      b.insert(e);
      ++r;
    }
  }
  return b;
}

}  // namespace fracmat
