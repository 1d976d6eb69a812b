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

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "fracmat/errors.hpp"

namespace fracmat {

using Rational = mpq_class;

// Parses "a", "-a" or "a/b" into canonical form.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw InvalidArgument("malformed rational '" + s + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// num/den in lowest terms; the two-argument mpq_class constructor does not
// reduce, and unreduced values compare unequal to their reduced form.
inline Rational ratio(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "a/b" with b > 1, or "a" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_half_integer(const Rational& q) {
  return q.get_den() == 1 || q.get_den() == 2;
}

inline Rational dot(const std::vector<Rational>& a,
                    const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& q : v) s += q;
  return s;
}

}  // namespace fracmat
