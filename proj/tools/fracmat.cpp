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

// fracmat: command-line front end for the fractional matroid matching
// solver. Reads instances as JSON, writes results, certificates and reports
// as JSON.
//
// Exit codes: 0 success, 1 usage / parse / internal error or a failed
// verification, 2 no perfect fractional matching.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracmat/fracmat.hpp"

namespace {

using fracmat::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPerfect = 2;

// --budget wins over FRACMAT_BUDGET, which wins over the library default.
long long resolve_budget(std::optional<long long> flag) {
  if (flag) {
    if (*flag <= 0) throw fracmat::InvalidArgument("--budget must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("FRACMAT_BUDGET"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v <= 0) {
      throw fracmat::InvalidArgument("FRACMAT_BUDGET must be a positive integer, got '" +
                                     std::string(env) + "'");
    }
    return v;
  }
  return fracmat::kDefaultFlatBudget;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fracmat::io::ParseError(path + ": cannot open for writing");
  out << text;
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

struct SolveArgs {
  std::string instance;
  bool perfect = false;
  bool max_size = false;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budget;
  std::string trace;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const fracmat::Instance in = fracmat::io::instance_from_json(fracmat::io::read_file(a.instance));
  const fracmat::Matroid m = in.spec.build();
  const long long budget = resolve_budget(a.budget);
  const fracmat::SolverOptions opts{budget};

  fracmat::io::ResultFile res;
  std::vector<fracmat::Rational> w = in.weights;
  if (a.max_size) {
    res.variant = fracmat::io::Variant::kMaxSize;
    w = fracmat::ones(in.lines.size());
    const fracmat::MaxSizeResult ms = fracmat::max_size_matching(m, in.lines, budget);
    res.x = ms.x;
    res.dual = fracmat::half_integer_dual(m, in.lines, w, budget);
  } else {
    fracmat::WeightedResult r;
    if (a.perfect) {
      res.variant = fracmat::io::Variant::kPerfect;
      r = fracmat::solve_max_weight_perfect(m, in.lines, w, opts);
    } else {
      r = fracmat::solve_max_weight(m, in.lines, w, opts);
    }
    res.x = std::move(r.x);
    res.dual = std::move(r.dual);
    res.trace = std::move(r.trace);
  }
  res.x.resize(in.lines.size(), fracmat::Rational(0));
  res.objective = fracmat::dot(w, res.x);

  const bool perfect = a.perfect;
  res.certificates.push_back(fracmat::verify_matching(m, in.lines, res.x, budget, perfect));
  res.certificates.push_back(fracmat::verify_dual(m, in.lines, w, res.dual, perfect));
  res.certificates.push_back(
      fracmat::verify_optimal_pair(m, in.lines, w, res.x, res.dual, res.objective));

  if (!a.trace.empty()) write_text(a.trace, fracmat::io::trace_jsonl(res.trace));
  write_text(a.out, pretty(fracmat::io::to_json(res)));

  for (const auto& c : res.certificates) {
    if (!c.pass()) {
      std::cerr << "fracmat: certificate " << c.kind << " failed: " << c.violation->what << "\n";
      return kExitError;
    }
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string instance;
  std::string result;
  std::optional<long long> budget;
};

int cmd_verify(const VerifyArgs& a) {
  const fracmat::Instance in = fracmat::io::instance_from_json(fracmat::io::read_file(a.instance));
  const fracmat::Matroid m = in.spec.build();
  const long long budget = resolve_budget(a.budget);
  const fracmat::io::ResultFile res =
      fracmat::io::result_from_json(fracmat::io::read_file(a.result), in.lines.size());

  const bool perfect = res.variant == fracmat::io::Variant::kPerfect;
  const std::vector<fracmat::Rational> w = res.variant == fracmat::io::Variant::kMaxSize
                                               ? fracmat::ones(in.lines.size())
                                               : in.weights;
  std::vector<fracmat::Certificate> certs;
  certs.push_back(fracmat::verify_matching(m, in.lines, res.x, budget, perfect));
  certs.push_back(fracmat::verify_dual(m, in.lines, w, res.dual, perfect));
  certs.push_back(fracmat::verify_optimal_pair(m, in.lines, w, res.x, res.dual, res.objective));

  bool all = true;
  Json list = Json::array();
  for (const auto& c : certs) {
    all = all && c.pass();
    list.push_back(fracmat::io::to_json(c));
  }
  Json report;
  report["verdict"] = all ? "pass" : "fail";
  report["certificates"] = list;
  std::cout << pretty(report);
  return all ? kExitOk : kExitError;
}

struct InspectArgs {
  std::string instance;
  bool flats = false;
  bool dominant = false;
  bool constraints = false;
  std::optional<long long> budget;
};

int cmd_inspect(const InspectArgs& a) {
  const fracmat::Instance in = fracmat::io::instance_from_json(fracmat::io::read_file(a.instance));
  const fracmat::Matroid m = in.spec.build();
  const long long budget = resolve_budget(a.budget);
  const bool any = a.flats || a.dominant || a.constraints;

  Json report;
  report["ground"] = m.ground_size();
  report["rank"] = m.rank();
  report["lines"] = in.lines.size();
  if (a.flats || !any) {
    Json list = Json::array();
    for (const auto& f : fracmat::enumerate_flats(m, budget)) {
      list.push_back({{"flat", fracmat::io::to_json(f.elements)}, {"rank", f.rank}});
    }
    report["flats"] = list;
  }
  if (a.constraints) {
    Json rows = Json::array();
    for (const auto& row : fracmat::build_constraints(m, in.lines, budget).rows) {
      rows.push_back({{"flat", fracmat::io::to_json(row.flat)},
                      {"degrees", row.degrees},
                      {"rank", row.rank}});
    }
    report["constraints"] = rows;
  }
  if (a.dominant) {
    const fracmat::DominantCoverResult d = fracmat::dominant_cover(m, in.lines, budget);
    report["dominant_cover"] = {{"S", fracmat::io::to_json(d.cover.s)},
                                {"T", fracmat::io::to_json(d.cover.t)},
                                {"nu", fracmat::to_string(d.nu)},
                                {"minimum_covers", d.minimum_covers.size()}};
  }
  std::cout << pretty(report);
  return kExitOk;
}

struct SweepArgs {
  std::uint64_t seed = 1;
  long count = 200;
  int max_elements = 10;
  int max_lines = 8;
  std::string report;
};

int cmd_sweep(const SweepArgs& a) {
  fracmat::SweepConfig cfg;
  cfg.seed = a.seed;
  cfg.count = a.count;
  cfg.instances.max_elements = a.max_elements;
  cfg.instances.max_lines = a.max_lines;
  const fracmat::SweepReport rep = fracmat::run_sweep(cfg);
  const Json full = fracmat::io::to_json(rep);
  if (!a.report.empty()) write_text(a.report, pretty(full));
  Json summary;
  summary["seed"] = a.seed;
  summary["count"] = a.count;
  summary["passed"] = full["passed"];
  summary["failed"] = full["failed"];
  Json failures = Json::array();
  for (const auto& e : rep.entries) {
    if (!e.pass()) failures.push_back(e.index);
  }
  summary["failures"] = failures;
  std::cout << pretty(summary);
  return rep.all_pass() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracmat: maximum-weight fractional matroid matching"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance and print the result with certificates");
  s->add_option("instance", solve.instance, "Instance JSON file")->required();
  auto* perfect = s->add_flag("--perfect", solve.perfect, "Maximum-weight perfect fractional matching");
  s->add_flag("--max-size", solve.max_size, "Maximum-size fractional matching (weights ignored)")
      ->excludes(perfect);
  s->add_option("--seed", solve.seed, "Accepted for scripting; the solver is deterministic");
  s->add_option("--budget", solve.budget, "Flat-enumeration cap (overrides FRACMAT_BUDGET)");
  s->add_option("--trace", solve.trace, "Write iteration records as JSON lines to this file");
  s->add_option("--out", solve.out, "Write the result here instead of stdout");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Re-verify a result file against its instance");
  v->add_option("instance", verify.instance, "Instance JSON file")->required();
  v->add_option("result", verify.result, "Result JSON file from solve")->required();
  v->add_option("--budget", verify.budget, "Flat-enumeration cap (overrides FRACMAT_BUDGET)");

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "Print flats, the constraint system or the dominant cover");
  i->add_option("instance", inspect.instance, "Instance JSON file")->required();
  i->add_flag("--flats", inspect.flats, "List the flats with their ranks (default)");
  i->add_flag("--dominant-cover", inspect.dominant, "Print the dominant cover");
  i->add_flag("--constraints", inspect.constraints, "Print the deduplicated constraint rows");
  i->add_option("--budget", inspect.budget, "Flat-enumeration cap (overrides FRACMAT_BUDGET)");

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Solve random instances and cross-check every one");
  w->add_option("--seed", sweep.seed, "Instance stream seed")->capture_default_str();
  w->add_option("--count", sweep.count, "Number of instances")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  w->add_option("--max-elements", sweep.max_elements, "Largest ground set")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
  w->add_option("--max-lines", sweep.max_lines, "Most lines per instance")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  w->add_option("--report", sweep.report, "Write the full per-instance report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*v) return cmd_verify(verify);
    if (*i) return cmd_inspect(inspect);
    if (*w) return cmd_sweep(sweep);
  } catch (const fracmat::NoPerfectMatching& e) {
    std::cerr << "fracmat: " << e.what() << "\n";
    return kExitNoPerfect;
  } catch (const fracmat::BudgetExceeded& e) {
    std::cerr << "fracmat: " << e.what() << "; raise it with --budget or FRACMAT_BUDGET\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "fracmat: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
