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


// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Informational lines start with "INFO".

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fracmat/fracmat.hpp"

namespace {

using namespace fracmat;

constexpr std::uint64_t kSeed = 1;
constexpr long kSweepCount = 200;
constexpr long kTinyQuota = 50;
constexpr std::size_t kTinyMaxRows = 12;
constexpr std::size_t kTinyMaxLines = 8;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string vec(const std::vector<Rational>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Random instances small enough for vertex enumeration: at most
// kTinyMaxLines lines and kTinyMaxRows rows in the deduplicated system.
struct TinyInstance {
  std::uint64_t index;
  Instance instance;
  Matroid matroid;
};

std::vector<TinyInstance> tiny_instances(std::uint64_t seed, long quota, long& skipped) {
  RandomInstanceConfig cfg;
  cfg.max_elements = 8;
  cfg.max_rank = 5;
  cfg.max_lines = 8;
  std::vector<TinyInstance> out;
  skipped = 0;
  for (std::uint64_t i = 0; static_cast<long>(out.size()) < quota; ++i) {
    Instance in = random_instance(seed, i, cfg);
    const Matroid m = in.spec.build();
    if (in.lines.empty() || in.lines.size() > kTinyMaxLines ||
        build_constraints(m, in.lines).rows.size() > kTinyMaxRows) {
      ++skipped;
      continue;
    }
    out.push_back({i, std::move(in), m});
  }
  return out;
}

void sweep_criteria() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.seed = kSeed;
  cfg.count = kSweepCount;
  const SweepReport rep = run_sweep(cfg);
  const double secs = seconds_since(t0);

  long oracle = 0, pair = 0, half = 0, term = 0, errors = 0, perfect = 0;
  long max_iter = 0;
  std::string first_error;
  for (const auto& e : rep.entries) {
    oracle += e.oracle_equal;
    pair += e.optimal_pair && e.primal_feasible && e.dual_feasible;
    half += e.half_integral;
    term += e.termination_ok;
    perfect += e.perfect_agrees;
    max_iter = std::max(max_iter, e.termination.iterations);
    if (!e.error.empty()) {
      ++errors;
      if (first_error.empty()) first_error = "#" + std::to_string(e.index) + ": " + e.error;
    }
  }
  const long n = static_cast<long>(rep.entries.size());
  auto ratio_text = [n](long k) { return std::to_string(k) + "/" + std::to_string(n); };
  std::ostringstream timing;
  timing.precision(2);
  timing << std::fixed << secs;
  std::printf("INFO sweep seed=%llu count=%ld errors=%ld time=%ss perfect-variant agreement %s\n",
              static_cast<unsigned long long>(kSeed), n, errors, timing.str().c_str(),
              ratio_text(perfect).c_str());
  if (!first_error.empty()) std::printf("INFO first error %s\n", first_error.c_str());

  report(1, "oracle equivalence", n >= 200 && oracle == n && secs < 300,
         ratio_text(oracle) + " instances with solver weight == brute-force optimum, " +
             timing.str() + "s");
  report(2, "duality and slackness", n >= 200 && pair == n,
         ratio_text(pair) + " instances whose (x, y) passes the optimal-pair check");
  report(3, "half-integral dual", n >= 200 && half == n,
         ratio_text(half) + " instances with a chain-supported optimal dual in (1/2)Z");
  report(5, "termination bound", n >= 200 && term == n,
         ratio_text(term) + " traces lexicographically decreasing with psi <= 4r^2 and at most "
                            "8r^3+8 iterations (max iterations " + std::to_string(max_iter) + ")");
}

void vertex_criterion() {
  long skipped = 0;
  const auto tiny = tiny_instances(kSeed, kTinyQuota, skipped);
  long vertices = 0, bad = 0, literal = 0, doubled = 0;
  std::string first_bad;
  for (const auto& t : tiny) {
    const auto vs = enumerate_optimal_vertices(t.matroid, t.instance.lines, t.instance.weights);
    for (const auto& v : vs) {
      ++vertices;
      bool ok = true;
      for (const auto& q : v) ok = ok && is_half_integer(q);
      if (!ok) {
        ++bad;
        if (first_bad.empty()) first_bad = "#" + std::to_string(t.index) + " " + vec(v);
      }
      const Certificate c = verify_tight_closure(t.matroid, t.instance.lines, v);
      literal += c.notes.at("literal") == "holds";
      doubled += c.notes.at("doubled") == "holds";
    }
  }
  std::printf("INFO tight closure over %ld optimal vertices: |x| = r(cl x) holds %ld, "
              "2|x| = r(cl x) holds %ld\n",
              vertices, literal, doubled);
  report(4, "vertex half-integrality",
         static_cast<long>(tiny.size()) >= kTinyQuota && bad == 0 && vertices > 0,
         std::to_string(tiny.size()) + " tiny instances (" + std::to_string(skipped) +
             " over the row limit skipped), " + std::to_string(vertices) +
             " optimal vertices, " + std::to_string(bad) + " outside (1/2)Z" +
             (first_bad.empty() ? "" : ", first " + first_bad));
}

void property_criterion() {
  properties::PropertyConfig cfg;
  cfg.seed = kSeed;
  cfg.checks = 1000;
  const auto reports = properties::run_all(cfg);
  bool ok = !reports.empty();
  std::string detail;
  for (const auto& r : reports) {
    ok = ok && r.pass() && r.checks >= 1000;
    if (!detail.empty()) detail += "; ";
    detail += r.name + " " + std::to_string(r.checks) + " checks " +
              std::to_string(r.violations) + " violations";
    if (!r.pass()) detail += " (" + r.first_violation + ")";
  }
  report(6, "structural lemmas", ok, detail);
}

void dominant_criterion() {
  long skipped = 0;
  const auto tiny = tiny_instances(kSeed + 1, kTinyQuota, skipped);
  long pass = 0, covers = 0;
  std::string first_bad;
  for (const auto& t : tiny) {
    try {
      const DominantCoverResult d = dominant_cover(t.matroid, t.instance.lines);
      const Certificate c = verify_dominant(t.matroid, t.instance.lines, d.cover);
      covers += static_cast<long>(d.minimum_covers.size());
      if (c.pass()) {
        ++pass;
      } else if (first_bad.empty()) {
        first_bad = "#" + std::to_string(t.index) + ": " + c.violation->what;
      }
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = "#" + std::to_string(t.index) + ": " + e.what();
    }
  }
  const long n = static_cast<long>(tiny.size());
  report(7, "dominant cover", n >= kTinyQuota && pass == n,
         std::to_string(pass) + "/" + std::to_string(n) +
             " tiny instances: sandwich over " + std::to_string(covers) +
             " minimum covers, S* identity, T* = intersection of cl(x) over optimal vertices" +
             (first_bad.empty() ? "" : "; first failure " + first_bad));
}

void triangle_criterion() {
  const Matroid m = Matroid::free(3);
  const LineSet lines{{0, 1}, {1, 2}, {0, 2}};
  const std::vector<Rational> w(3, Rational(1));
  const ElementSet e = m.ground();
  const std::vector<Rational> halves(3, ratio(1, 2));

  const Rational nu = max_size_matching(m, lines).nu;
  const auto oracle = brute_force_optimum(m, lines, w, false);
  const auto vs = enumerate_optimal_vertices(m, lines, w);
  const bool has_halves = std::find(vs.begin(), vs.end(), halves) != vs.end();
  const Cover dom = dominant_cover(m, lines).cover;
  const Rational perfect = solve_max_weight_perfect(m, lines, w).weight;

  const bool nu_ok = nu == ratio(3, 2) && oracle && *oracle == nu;
  const bool dom_ok = dom.s == e && dom.t == e;
  const bool perfect_ok = perfect == ratio(3, 2);
  std::string detail = "nu* = " + to_string(nu) + (nu_ok ? " ok" : " wrong") +
                       "; (1/2,1/2,1/2) among " + std::to_string(vs.size()) +
                       " optimal vertices " + (has_halves ? "ok" : "missing") +
                       "; perfect objective " + to_string(perfect) + (perfect_ok ? " ok" : " wrong") +
                       "; dominant cover (S*,T*) = (" + dom.s.to_string() + "," +
                       dom.t.to_string() + ")" +
                       (dom_ok ? " ok" : ", expected (E,E) = ({0,1,2},{0,1,2})");
  if (!dom_ok) {
    detail += " [(E,E) has value (r(E)+r(E))/2 = " + to_string(cover_value(m, Cover{e, e})) +
              " != nu*, and the S* identity with T* = E gives S* = cl({}) = {}]";
  }
  report(8, "worked triangle", nu_ok && has_halves && dom_ok && perfect_ok, detail);
}

void guarded(const std::function<void()>& run, int id, const std::string& name) {
  try {
    run();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(sweep_criteria, 1, "oracle sweep (criteria 1, 2, 3, 5)");
  guarded(vertex_criterion, 4, "vertex half-integrality");
  guarded(property_criterion, 6, "structural lemmas");
  guarded(dominant_criterion, 7, "dominant cover");
  guarded(triangle_criterion, 8, "worked triangle");
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
