// Copyright 2026 The Ambiset Authors
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

#include "ambiset/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace ambiset::io {

namespace {

[[noreturn]] void schema(const std::string& message) {
  fail(ErrorCode::kSchemaViolation, message);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where + " is missing \"" + key + "\"");
  return *it;
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) schema(where + " must be a number");
  return j.get<double>();
}

std::vector<double> as_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_double(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_vector(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

template <typename T, typename Map>
const T& lookup(const Map& map, const std::string& name, const char* what) {
  auto it = map.find(name);
  if (it == map.end()) schema(std::string("unknown ") + what + " \"" + name + "\"");
  return it->second;
}

SetSequence parse_sequence(const Json& j, const SpacePtr& space,
                           const std::string& name) {
  const Json& terms = member(j, "terms", "sequence " + name);
  if (!terms.is_array() || terms.empty()) {
    schema("sequence " + name + " needs a nonempty \"terms\" array");
  }
  std::vector<AmbiguitySet> sets;
  for (const auto& t : terms) sets.push_back(parse_set(t, space));
  AmbiguitySet limit = parse_set(member(j, "limit", "sequence " + name), space);
  return {space, std::move(sets), std::move(limit), name};
}

bool reserved(const std::string& key) {
  return key == "space" || key == "measures" || key == "sets" ||
         key == "functions" || key == "sequences" || key == "options";
}

}  // namespace

const DiscreteMeasure& ProblemFile::measure(const std::string& name) const {
  return lookup<DiscreteMeasure>(measures, name, "measure");
}
const AmbiguitySet& ProblemFile::set(const std::string& name) const {
  return lookup<AmbiguitySet>(sets, name, "set");
}
const TestFunction& ProblemFile::function(const std::string& name) const {
  return lookup<TestFunction>(functions, name, "function");
}
const SetSequence& ProblemFile::sequence(const std::string& name) const {
  return lookup<SetSequence>(sequences, name, "sequence");
}

std::vector<std::vector<double>> raw_distances(const Json& j) {
  if (j.contains("dist")) return as_matrix(j["dist"], "space.dist");
  return parse_space(j).matrix();
}

FiniteMetricSpace parse_space(const Json& j, ValidationMode mode, double tolerance) {
  if (!j.is_object()) schema("space must be an object");
  if (j.contains("dist")) {
    std::vector<std::string> labels;
    if (j.contains("points")) {
      if (!j["points"].is_array()) schema("space.points must be an array");
      for (const auto& p : j["points"]) {
        labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
      }
    }
    return validate_space(as_matrix(j["dist"], "space.dist"), mode, tolerance,
                          std::move(labels));
  }
  if (j.contains("coords")) {
    const double q = j.contains("q") ? as_double(j["q"], "space.q") : 2.0;
    return from_points(as_matrix(j["coords"], "space.coords"), q);
  }
  schema("space needs \"dist\" or \"coords\"");
}

DiscreteMeasure parse_measure(const Json& j, const SpacePtr& space) {
  const auto w = as_vector(member(j, "weights", "measure"), "measure.weights");
  if (w.size() != space->size()) {
    fail(ErrorCode::kDimensionMismatch,
         "measure has " + std::to_string(w.size()) + " weights for " +
             std::to_string(space->size()) + " points");
  }
  return DiscreteMeasure(space, w);
}

AmbiguitySet parse_set(const Json& j, const SpacePtr& space) {
  const Json& gens = member(j, "generators", "set");
  if (!gens.is_array()) schema("set.generators must be an array");
  std::vector<DiscreteMeasure> measures;
  for (const auto& g : gens) {
    const auto w = g.is_object() ? as_vector(member(g, "weights", "generator"), "generator")
                                 : as_vector(g, "generator");
    if (w.size() != space->size()) {
      fail(ErrorCode::kDimensionMismatch, "generator length does not match the space");
    }
    measures.emplace_back(space, w);
  }
  bool convexify = true;
  if (j.contains("convexify")) {
    if (!j["convexify"].is_boolean()) schema("set.convexify must be a boolean");
    convexify = j["convexify"].get<bool>();
  }
  return AmbiguitySet(space, std::move(measures), convexify);
}

TestFunction parse_function(const Json& j, const SpacePtr& space) {
  auto v = as_vector(member(j, "values", "function"), "function.values");
  if (v.size() != space->size()) {
    fail(ErrorCode::kDimensionMismatch, "function length does not match the space");
  }
  return TestFunction(space, std::move(v));
}

ProblemFile parse_problem(const Json& j, ValidationMode mode, double tolerance) {
  if (!j.is_object()) schema("input must be a JSON object");
  ProblemFile out;
  out.space = share(parse_space(member(j, "space", "input"), mode, tolerance));

  auto section = [&](const char* key, auto&& add) {
    if (!j.contains(key)) return;
    if (!j[key].is_object()) schema(std::string(key) + " must be an object");
    for (const auto& [name, value] : j[key].items()) add(name, value);
  };
  section("measures", [&](const std::string& n, const Json& v) {
    out.measures.emplace(n, parse_measure(v, out.space));
  });
  section("sets", [&](const std::string& n, const Json& v) {
    out.sets.emplace(n, parse_set(v, out.space));
  });
  section("functions", [&](const std::string& n, const Json& v) {
    out.functions.emplace(n, parse_function(v, out.space));
  });
  section("sequences", [&](const std::string& n, const Json& v) {
    out.sequences.emplace(n, parse_sequence(v, out.space, n));
  });

  for (const auto& [name, value] : j.items()) {
    if (reserved(name) || !value.is_object()) continue;
    if (value.contains("weights")) {
      out.measures.emplace(name, parse_measure(value, out.space));
    } else if (value.contains("generators")) {
      out.sets.emplace(name, parse_set(value, out.space));
    } else if (value.contains("values")) {
      out.functions.emplace(name, parse_function(value, out.space));
    } else if (value.contains("terms")) {
      out.sequences.emplace(name, parse_sequence(value, out.space, name));
    }
  }

  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) schema("options must be an object");
    if (o.contains("p")) out.p = as_double(o["p"], "options.p");
    if (o.contains("tolerance")) out.tolerance = as_double(o["tolerance"], "options.tolerance");
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) schema("options.seed must be a nonnegative integer");
      out.seed = o["seed"].get<std::uint64_t>();
    }
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFileNotFound, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    schema(path.string() + " is not valid JSON: " + e.what());
  }
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

Json numbers(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json numbers(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(numbers(m.row(i)));
  return out;
}

Json numbers(const std::vector<std::vector<double>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(numbers(row));
  return out;
}

Json to_json(const FiniteMetricSpace& space) {
  return {{"points", space.labels()}, {"dist", numbers(space.matrix())}};
}

Json to_json(const SpaceViolation& v) {
  Json out{{"status", "FAIL"},
           {"error", std::string(error_name(v.code))},
           {"i", v.i},
           {"j", v.j},
           {"message", v.message}};
  if (v.k) out["k"] = *v.k;
  return out;
}

Json to_json(const DirectedDistanceReport& r) {
  return {{"value", number(r.value)},
          {"witness_generator", r.witness_generator},
          {"source_mixture", numbers(r.source_mixture)},
          {"witness_mixture", numbers(r.witness_mixture)},
          {"bound_gap", number(r.bound_gap)}};
}

Json to_json(const GeneralizedDistanceReport& r) {
  Json out{{"p", number(r.p)},
           {"value", number(r.value)},
           {"forward", to_json(r.forward)},
           {"backward", to_json(r.backward)}};
  if (r.dual_value) out["dual_value"] = number(*r.dual_value);
  return out;
}

Json to_json(const LipschitzGap& g) {
  return {{"value", number(g.value)},
          {"generator", g.generator},
          {"witness", numbers(g.witness.values())}};
}

Json to_json(const MembershipResult& m) {
  return {{"member", m.member},
          {"gap", number(m.gap)},
          {"dual_gap", number(m.dual_gap)},
          {"mixture", numbers(m.mixture)}};
}

Json to_json(const MetrizationReport& r) {
  return {{"p", number(r.p)},
          {"omega0", r.omega0},
          {"K", numbers(r.k_grid)},
          {"distance_trace", numbers(r.distance_trace)},
          {"weak_gap_trace", numbers(r.weak_gap_trace)},
          {"growth_gap_trace", numbers(r.growth_gap_trace)},
          {"tail_trace", numbers(r.tail_trace)},
          {"tail_proxy", number(r.tail_proxy)},
          {"verdict_i", r.verdict_i},
          {"verdict_ii", r.verdict_ii},
          {"verdict_iii", r.verdict_iii},
          {"agreement", r.agreement},
          {"rule", r.rule}};
}

Json to_json(const PEquivalence& r) {
  return {{"agree", r.agree},
          {"converged_p", r.converged_p},
          {"converged_q", r.converged_q},
          {"tail_condition", r.tail_condition},
          {"tail_proxy", number(r.tail_proxy)},
          {"trace_p", numbers(r.trace_p)},
          {"trace_q", numbers(r.trace_q)}};
}

Json to_json(const CounterexampleResult& r) {
  return {{"w1", number(r.w1)}, {"dual", number(r.dual)}};
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "table") return Format::kTable;
  if (name == "csv") return Format::kCsv;
  return std::nullopt;
}

namespace {

void flatten(const Json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, path.empty() ? key : path + "." + key, rows);
    }
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(path, "");
    for (std::size_t k = 0; k < j.size(); ++k) {
      flatten(j[k], path + "[" + std::to_string(k) + "]", rows);
    }
  } else if (j.is_string()) {
    rows.emplace_back(path, j.get<std::string>());
  } else {
    rows.emplace_back(path, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render(const Json& report, Format format) {
  if (format == Format::kJson) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream out;
  if (format == Format::kCsv) {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << '\n';
    return out.str();
  }
  std::size_t width = 3;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  out << "key" << std::string(width - 3 + 2, ' ') << "value\n";
  for (const auto& [k, v] : rows) {
    out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return out.str();
}

namespace {

enum class Kind { kNumber, kCount, kBool, kString, kNumbers, kMatrix, kObject };

struct Field {
  const char* key;
  Kind kind;
  bool required = true;
  const char* object = nullptr;  // schema name for kObject
};

const std::map<std::string_view, std::vector<Field>>& schemas() {
  static const std::map<std::string_view, std::vector<Field>> table{
      {"validate",
       {{"status", Kind::kString},
        {"points", Kind::kCount, false},
        {"diameter", Kind::kNumber, false},
        {"error", Kind::kString, false},
        {"i", Kind::kCount, false},
        {"j", Kind::kCount, false},
        {"k", Kind::kCount, false},
        {"message", Kind::kString, false}}},
      {"classical",
       {{"p", Kind::kNumber},
        {"value", Kind::kNumber},
        {"plan", Kind::kMatrix, false},
        {"dual", Kind::kObject, false, "kr"}}},
      {"kr", {{"value", Kind::kNumber}, {"witness", Kind::kNumbers}}},
      {"directed",
       {{"value", Kind::kNumber},
        {"witness_generator", Kind::kCount},
        {"source_mixture", Kind::kNumbers},
        {"witness_mixture", Kind::kNumbers},
        {"bound_gap", Kind::kNumber}}},
      {"dist",
       {{"p", Kind::kNumber},
        {"value", Kind::kNumber},
        {"forward", Kind::kObject, true, "directed"},
        {"backward", Kind::kObject, true, "directed"},
        {"dual_value", Kind::kNumber, false}}},
      {"gap",
       {{"value", Kind::kNumber},
        {"generator", Kind::kCount},
        {"witness", Kind::kNumbers}}},
      {"dual",
       {{"value", Kind::kNumber},
        {"forward", Kind::kObject, true, "gap"},
        {"backward", Kind::kObject, true, "gap"}}},
      {"member",
       {{"member", Kind::kBool},
        {"gap", Kind::kNumber},
        {"dual_gap", Kind::kNumber},
        {"mixture", Kind::kNumbers}}},
      {"hull-eq",
       {{"equal", Kind::kBool},
        {"residual_forward", Kind::kNumbers},
        {"residual_backward", Kind::kNumbers}}},
      {"converge",
       {{"family", Kind::kString},
        {"n", Kind::kCount},
        {"seed", Kind::kCount},
        {"p", Kind::kNumber},
        {"omega0", Kind::kCount},
        {"K", Kind::kNumbers},
        {"distance_trace", Kind::kNumbers},
        {"weak_gap_trace", Kind::kNumbers},
        {"growth_gap_trace", Kind::kNumbers},
        {"tail_trace", Kind::kMatrix},
        {"tail_proxy", Kind::kNumber},
        {"verdict_i", Kind::kBool},
        {"verdict_ii", Kind::kBool},
        {"verdict_iii", Kind::kBool},
        {"agreement", Kind::kBool},
        {"rule", Kind::kString},
        {"p_equivalence", Kind::kObject, false, "p_equivalence"}}},
      {"p_equivalence",
       {{"q", Kind::kNumber, false},
        {"agree", Kind::kBool},
        {"converged_p", Kind::kBool},
        {"converged_q", Kind::kBool},
        {"tail_condition", Kind::kBool},
        {"tail_proxy", Kind::kNumber},
        {"trace_p", Kind::kNumbers},
        {"trace_q", Kind::kNumbers}}},
      {"tail",
       {{"p", Kind::kNumber},
        {"omega0", Kind::kCount},
        {"K", Kind::kNumbers},
        {"tail", Kind::kMatrix}}},
      {"counterexample", {{"w1", Kind::kNumber}, {"dual", Kind::kNumber}}},
  };
  return table;
}

bool is_number(const Json& j) { return j.is_number() || j.is_null(); }

bool is_numbers(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), is_number);
}

void check(const Json& j, std::string_view kind, const std::string& where) {
  const auto& table = schemas();
  auto it = table.find(kind);
  if (it == table.end()) schema("no report schema named " + std::string(kind));
  if (!j.is_object()) schema(where + " must be an object");
  for (const Field& f : it->second) {
    const std::string path = where.empty() ? f.key : where + "." + f.key;
    auto found = j.find(f.key);
    if (found == j.end()) {
      if (f.required) schema("report is missing " + path);
      continue;
    }
    const Json& v = *found;
    bool ok = false;
    switch (f.kind) {
      case Kind::kNumber:
        ok = is_number(v);
        break;
      case Kind::kCount:
        ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
        break;
      case Kind::kBool:
        ok = v.is_boolean();
        break;
      case Kind::kString:
        ok = v.is_string();
        break;
      case Kind::kNumbers:
        ok = is_numbers(v);
        break;
      case Kind::kMatrix:
        ok = v.is_array() && std::all_of(v.begin(), v.end(), is_numbers);
        break;
      case Kind::kObject:
        check(v, f.object, path);
        ok = true;
        break;
    }
    if (!ok) schema("report field " + path + " has the wrong type");
  }
}

}  // namespace

void validate_report(const Json& report, std::string_view kind) {
  check(report, kind, "");
}

}  // namespace ambiset::io
