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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ambiset/ambiguity_distance.hpp"
#include "ambiset/convergence_lab.hpp"
#include "ambiset/measures.hpp"
#include "ambiset/transport.hpp"
#include "json.hpp"

namespace ambiset::io {

using Json = nlohmann::json;

/// Named entities and defaults read from one input file.
///
///   {
///     "space": {"points": [...], "dist": [[...]]}  or  {"coords": [[...]], "q": 2},
///     "measures":  {"mu": {"weights": [...]}},
///     "sets":      {"P1": {"generators": [[...]], "convexify": true}},
///     "functions": {"phi": {"values": [...]}},
///     "sequences": {"S": {"terms": [<set>, ...], "limit": <set>}},
///     "options":   {"p": 1, "tolerance": 1e-9, "seed": 42}
///   }
///
/// Other top-level objects are classified by shape (weights, generators,
/// values), so `{"space": ..., "P1": ..., "P2": ...}` works as well.
struct ProblemFile {
  SpacePtr space;
  std::map<std::string, DiscreteMeasure> measures;
  std::map<std::string, AmbiguitySet> sets;
  std::map<std::string, TestFunction> functions;
  std::map<std::string, SetSequence> sequences;
  std::optional<double> p;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;

  const DiscreteMeasure& measure(const std::string& name) const;
  const AmbiguitySet& set(const std::string& name) const;
  const TestFunction& function(const std::string& name) const;
  const SetSequence& sequence(const std::string& name) const;
};

FiniteMetricSpace parse_space(const Json& j,
                              ValidationMode mode = ValidationMode::kStrict,
                              double tolerance = kLenientTolerance);
/// Distance matrix as given, before any metric check.
std::vector<std::vector<double>> raw_distances(const Json& j);

DiscreteMeasure parse_measure(const Json& j, const SpacePtr& space);
AmbiguitySet parse_set(const Json& j, const SpacePtr& space);
TestFunction parse_function(const Json& j, const SpacePtr& space);

ProblemFile parse_problem(const Json& j,
                          ValidationMode mode = ValidationMode::kStrict,
                          double tolerance = kLenientTolerance);

Json read_json_file(const std::filesystem::path& path);

/// Rounds to 12 significant digits; non-finite values become null.
Json number(double v);
double round12(double v);
Json numbers(std::span<const double> v);
Json numbers(const Matrix& m);
Json numbers(const std::vector<std::vector<double>>& m);

Json to_json(const FiniteMetricSpace& space);
Json to_json(const SpaceViolation& v);
Json to_json(const DirectedDistanceReport& r);
Json to_json(const GeneralizedDistanceReport& r);
Json to_json(const LipschitzGap& g);
Json to_json(const MembershipResult& m);
Json to_json(const MetrizationReport& r);
Json to_json(const PEquivalence& r);
Json to_json(const CounterexampleResult& r);

enum class Format { kJson, kTable, kCsv };
std::optional<Format> parse_format(std::string_view name);

/// JSON is pretty-printed; table and CSV flatten nested keys to
/// `a.b[3]`-style paths.
std::string render(const Json& report, Format format);

/// Checks a report against the schema for `kind` (a CLI subcommand name);
/// throws SchemaViolation naming the first offending key.
void validate_report(const Json& report, std::string_view kind);

}  // namespace ambiset::io
