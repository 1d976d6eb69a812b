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
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracmat/certification.hpp"
#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/formal_sum.hpp"
#include "fracmat/instance.hpp"
#include "fracmat/rational.hpp"
#include "fracmat/weighted_solver.hpp"

namespace fracmat::io {

using Json = nlohmann::ordered_json;

// Malformed or ill-typed input. `where` is "source:line:column" when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void bad(const std::string& field, const std::string& why) {
  throw ParseError("field '" + field + "': " + why);
}

inline const Json& need(const Json& j, const std::string& key) {
  if (!j.is_object()) bad(key, "enclosing value is not an object");
  auto it = j.find(key);
  if (it == j.end()) bad(key, "missing");
  return *it;
}

inline int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) bad(field, "integer out of range");
  return static_cast<int>(v);
}

inline Rational as_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(field, "expected a rational string \"a/b\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InvalidArgument& e) {
    bad(field, e.what());
  }
}

inline ElementSet as_element_set(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of element ids");
  ElementSet s;
  for (const auto& e : j) {
    const int id = as_int(e, field);
    if (id < 0 || id >= kMaxGroundSize) bad(field, "element id out of range");
    s.insert(id);
  }
  return s;
}

}  // namespace detail

// Parses JSON text; syntax errors carry line and column.
inline Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(source + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": malformed JSON");
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(ElementSet s) {
  Json a = Json::array();
  for (int e : s.elements()) a.push_back(e);
  return a;
}

// ---- matroids and instances -------------------------------------------

inline Json to_json(const MatroidSpec& s) {
  Json j;
  j["kind"] = s.kind;
  if (s.kind == "uniform") {
    j["n"] = s.n;
    j["k"] = s.k;
  } else if (s.kind == "free") {
    j["n"] = s.n;
  } else if (s.kind == "graphic") {
    j["vertices"] = s.vertices;
    Json edges = Json::array();
    for (auto [u, v] : s.edges) edges.push_back({u, v});
    j["edges"] = edges;
  } else if (s.kind == "linear_gf" || s.kind == "linear_q") {
    j["kind"] = "linear";
    j["p"] = s.p ? Json(*s.p) : Json(nullptr);
    Json cols = Json::array();
    for (const auto& c : s.columns) {
      Json col = Json::array();
      for (const auto& q : c) col.push_back(to_string(q));
      cols.push_back(col);
    }
    j["columns"] = cols;
  } else if (s.kind == "partition") {
    j["blocks"] = s.blocks;
    j["capacities"] = s.capacities;
  }
  return j;
}

inline MatroidSpec matroid_from_json(const Json& j) {
  MatroidSpec s;
  const Json& kind = detail::need(j, "kind");
  if (!kind.is_string()) detail::bad("kind", "expected a string");
  s.kind = kind.get<std::string>();
  if (s.kind == "uniform") {
    s.n = detail::as_int(detail::need(j, "n"), "n");
    s.k = detail::as_int(detail::need(j, "k"), "k");
  } else if (s.kind == "free") {
    s.n = detail::as_int(detail::need(j, "n"), "n");
  } else if (s.kind == "graphic") {
    s.vertices = detail::as_int(detail::need(j, "vertices"), "vertices");
    const Json& edges = detail::need(j, "edges");
    if (!edges.is_array()) detail::bad("edges", "expected an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2) detail::bad("edges", "expected [u, v]");
      s.edges.emplace_back(detail::as_int(e[0], "edges"), detail::as_int(e[1], "edges"));
    }
  } else if (s.kind == "linear" || s.kind == "linear_gf" || s.kind == "linear_q") {
    auto p = j.find("p");
    if (p != j.end() && !p->is_null()) {
      if (!p->is_number_unsigned()) detail::bad("p", "expected a prime or null");
      s.p = p->get<std::uint64_t>();
    }
    // The field decides the arithmetic: GF(p) when p is given, Q otherwise.
    s.kind = s.p ? "linear_gf" : "linear_q";
    const Json& cols = detail::need(j, "columns");
    if (!cols.is_array()) detail::bad("columns", "expected an array of columns");
    for (const auto& c : cols) {
      if (!c.is_array()) detail::bad("columns", "expected an array of entries");
      std::vector<Rational> col;
      for (const auto& q : c) col.push_back(detail::as_rational(q, "columns"));
      s.columns.push_back(std::move(col));
    }
  } else if (s.kind == "partition") {
    for (const char* key : {"blocks", "capacities"}) {
      const Json& arr = detail::need(j, key);
      if (!arr.is_array()) detail::bad(key, "expected an array");
      auto& dst = std::string(key) == "blocks" ? s.blocks : s.capacities;
      for (const auto& v : arr) dst.push_back(detail::as_int(v, key));
    }
  } else {
    detail::bad("kind", "unknown matroid kind '" + s.kind + "'");
  }
  return s;
}

inline Json to_json(const Instance& in) {
  Json j;
  j["matroid"] = to_json(in.spec);
  Json lines = Json::array();
  for (ElementSet l : in.lines) lines.push_back(to_json(l));
  j["lines"] = lines;
  Json w = Json::array();
  for (const auto& q : in.weights) w.push_back(to_string(q));
  j["weights"] = w;
  return j;
}

// Builds and validates the matroid; weights default to 1.
inline Instance instance_from_json(const Json& j) {
  Instance in;
  in.spec = matroid_from_json(detail::need(j, "matroid"));
  const Json& lines = detail::need(j, "lines");
  if (!lines.is_array()) detail::bad("lines", "expected an array");
  for (const auto& l : lines) in.lines.push_back(detail::as_element_set(l, "lines"));
  if (auto w = j.find("weights"); w != j.end()) {
    if (!w->is_array()) detail::bad("weights", "expected an array");
    if (w->size() != in.lines.size()) {
      throw DimensionMismatch("weights has " + std::to_string(w->size()) +
                              " entries for " + std::to_string(in.lines.size()) +
                              " lines");
    }
    for (const auto& q : *w) in.weights.push_back(detail::as_rational(q, "weights"));
  } else {
    in.weights.assign(in.lines.size(), Rational(1));
  }
  validate_instance(in.spec.build(), in.lines);
  return in;
}

// ---- certificates and traces -----------------------------------------

inline Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind;
  j["verdict"] = c.pass() ? "pass" : "fail";
  if (c.violation) {
    Json v;
    v["what"] = c.violation->what;
    for (const auto& [k, val] : c.violation->data) v[k] = val;
    j["violation"] = v;
  } else {
    j["violation"] = nullptr;
  }
  if (!c.notes.empty()) {
    Json n = Json::object();
    for (const auto& [k, val] : c.notes) n[k] = val;
    j["notes"] = n;
  }
  return j;
}

inline Json eps_json(const std::optional<Rational>& q) {
  return q ? to_json(*q) : Json("inf");
}

inline Json to_json(const IterationRecord& r) {
  Json j;
  j["iter"] = r.iter;
  j["nu"] = to_string(r.nu);
  j["psi"] = r.psi;
  j["eps1"] = eps_json(r.eps1);
  j["eps2"] = eps_json(r.eps2);
  j["eps"] = eps_json(r.eps);
  j["case"] = r.case_taken;
  return j;
}

// One compact JSON object per line.
inline std::string trace_jsonl(const IterationTrace& t) {
  std::string out;
  for (const auto& r : t.records) out += to_json(r).dump() + "\n";
  return out;
}

// ---- results ---------------------------------------------------------

enum class Variant { kMaxWeight, kPerfect, kMaxSize };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kMaxWeight: return "max-weight";
    case Variant::kPerfect: return "perfect";
    case Variant::kMaxSize: return "max-size";
  }
  return "?";
}

inline Variant variant_from_string(const std::string& s) {
  if (s == "max-weight") return Variant::kMaxWeight;
  if (s == "perfect") return Variant::kPerfect;
  if (s == "max-size") return Variant::kMaxSize;
  detail::bad("variant", "unknown variant '" + s + "'");
}

struct ResultFile {
  Variant variant = Variant::kMaxWeight;
  Rational objective;
  std::vector<Rational> x;  // dense; the file stores the nonzero entries
  FormalSum dual;
  std::vector<Certificate> certificates;
  IterationTrace trace;
};

inline Json to_json(const ResultFile& r) {
  Json j;
  j["variant"] = variant_name(r.variant);
  j["objective"] = to_string(r.objective);
  Json m = Json::object();
  for (std::size_t l = 0; l < r.x.size(); ++l) {
    if (sgn(r.x[l]) != 0) m[std::to_string(l)] = to_string(r.x[l]);
  }
  j["matching"] = m;
  Json d = Json::array();
  for (const auto& [f, c] : r.dual.terms()) {
    Json t;
    t["flat"] = to_json(f);
    t["coeff"] = to_string(c);
    d.push_back(t);
  }
  j["dual"] = d;
  Json cs = Json::array();
  for (const auto& c : r.certificates) cs.push_back(to_json(c));
  j["certificates"] = cs;
  Json tr = Json::array();
  for (const auto& rec : r.trace.records) tr.push_back(to_json(rec));
  j["trace"] = tr;
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const Json& kind = detail::need(j, "kind");
  if (!kind.is_string()) detail::bad("kind", "expected a string");
  c.kind = kind.get<std::string>();
  const Json& v = detail::need(j, "violation");
  if (!v.is_null()) {
    if (!v.is_object()) detail::bad("violation", "expected an object or null");
    Violation out;
    for (const auto& [k, val] : v.items()) {
      if (!val.is_string()) detail::bad("violation", "expected string values");
      if (k == "what") out.what = val.get<std::string>();
      else out.data[k] = val.get<std::string>();
    }
    c.violation = std::move(out);
  }
  const std::string verdict = detail::need(j, "verdict").is_string()
                                  ? detail::need(j, "verdict").get<std::string>()
                                  : std::string();
  if (verdict != (c.pass() ? "pass" : "fail")) {
    detail::bad("verdict", "does not match the violation field");
  }
  if (auto n = j.find("notes"); n != j.end()) {
    if (!n->is_object()) detail::bad("notes", "expected an object");
    for (const auto& [k, val] : n->items()) {
      if (!val.is_string()) detail::bad("notes", "expected string values");
      c.notes[k] = val.get<std::string>();
    }
  }
  return c;
}

inline std::optional<Rational> eps_from_json(const Json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::nullopt;
  return detail::as_rational(j, field);
}

inline IterationRecord record_from_json(const Json& j) {
  IterationRecord r;
  r.iter = detail::as_int(detail::need(j, "iter"), "iter");
  r.nu = detail::as_rational(detail::need(j, "nu"), "nu");
  const Json& psi = detail::need(j, "psi");
  if (!psi.is_number_integer()) detail::bad("psi", "expected an integer");
  r.psi = psi.get<long>();
  r.eps1 = eps_from_json(detail::need(j, "eps1"), "eps1");
  r.eps2 = eps_from_json(detail::need(j, "eps2"), "eps2");
  r.eps = eps_from_json(detail::need(j, "eps"), "eps");
  r.case_taken = detail::as_int(detail::need(j, "case"), "case");
  return r;
}

// Reads a result file. Certificates and trace are optional and kept for
// round-tripping; verify recomputes certificates and never trusts them.
inline ResultFile result_from_json(const Json& j, std::size_t num_lines) {
  ResultFile r;
  if (auto v = j.find("variant"); v != j.end()) {
    if (!v->is_string()) detail::bad("variant", "expected a string");
    r.variant = variant_from_string(v->get<std::string>());
  }
  r.objective = detail::as_rational(detail::need(j, "objective"), "objective");
  r.x.assign(num_lines, Rational(0));
  const Json& m = detail::need(j, "matching");
  if (!m.is_object()) detail::bad("matching", "expected an object");
  for (const auto& [key, val] : m.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      detail::bad("matching", "key '" + key + "' is not a line index");
    }
    if (idx >= num_lines) detail::bad("matching", "line index " + key + " out of range");
    r.x[idx] = detail::as_rational(val, "matching");
  }
  const Json& d = detail::need(j, "dual");
  if (!d.is_array()) detail::bad("dual", "expected an array");
  for (const auto& t : d) {
    r.dual.add(detail::as_element_set(detail::need(t, "flat"), "dual.flat"),
               detail::as_rational(detail::need(t, "coeff"), "dual.coeff"));
  }
  if (auto cs = j.find("certificates"); cs != j.end()) {
    if (!cs->is_array()) detail::bad("certificates", "expected an array");
    for (const auto& c : *cs) r.certificates.push_back(certificate_from_json(c));
  }
  if (auto tr = j.find("trace"); tr != j.end()) {
    if (!tr->is_array()) detail::bad("trace", "expected an array");
    for (const auto& rec : *tr) r.trace.records.push_back(record_from_json(rec));
  }
  return r;
}

}  // namespace fracmat::io
