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

#include <stdexcept>
#include <string>

namespace fracmat {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Flat enumeration or a brute-force oracle exceeded its work cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long long cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  long long cap() const { return cap_; }

 private:
  long long cap_;
};

class LoopsPresent : public Error {
 public:
  explicit LoopsPresent(int element)
      : Error("element " + std::to_string(element) + " is a loop"),
        element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

class NotALine : public Error {
 public:
  NotALine(int line, int rank)
      : Error("line " + std::to_string(line) + " has rank " +
              std::to_string(rank) + ", expected 1 or 2"),
        line_(line),
        rank_(rank) {}
  int line() const { return line_; }
  int rank() const { return rank_; }

 private:
  int line_;
  int rank_;
};

class NoPerfectMatching : public Error {
 public:
  NoPerfectMatching() : Error("no perfect fractional matching") {}
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// An invariant the mathematics guarantees failed; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracmat
