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

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fracmat/errors.hpp"

namespace fracmat {

inline constexpr int kMaxGroundSize = 64;

// A subset of a ground set {0, ..., n-1}, n <= 64.
//
// Ordered by (size, bits), so sorting a chain of nested sets puts it in
// increasing order.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<int> elements) {
    for (int e : elements) insert(e);
  }
  explicit ElementSet(const std::vector<int>& elements) {
    for (int e : elements) insert(e);
  }

  static constexpr ElementSet full(int n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1);
  }
  static constexpr ElementSet singleton(int e) {
    return ElementSet(std::uint64_t{1} << e);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1U; }
  constexpr bool subset_of(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(ElementSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  // Largest element + 1, or 0 when empty.
  constexpr int extent() const { return 64 - std::countl_zero(bits_); }

  void insert(int e) {
    if (e < 0 || e >= kMaxGroundSize) {
      throw InvalidArgument("element id " + std::to_string(e) +
                            " outside [0, 64)");
    }
    bits_ |= std::uint64_t{1} << e;
  }
  constexpr void erase(int e) { bits_ &= ~(std::uint64_t{1} << e); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ | b.bits_);
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & ~b.bits_);
  }
  ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
  ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }

  friend constexpr bool operator==(ElementSet, ElementSet) = default;
  friend constexpr std::strong_ordering operator<=>(ElementSet a,
                                                    ElementSet b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int e) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    });
    return s + "}";
  }

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic comparison of the sorted element lists.
inline bool lex_less(ElementSet a, ElementSet b) {
  const auto ea = a.elements();
  const auto eb = b.elements();
  return ea < eb;
}

struct ElementSetHash {
  std::size_t operator()(ElementSet s) const noexcept {
    std::uint64_t x = s.bits() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

using LineSet = std::vector<ElementSet>;

}  // namespace fracmat
