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

#include "ambiset/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ambiset/transport.hpp"

namespace ambiset {

namespace {

constexpr std::size_t kMaxRandomSupport = 6;

DiscreteMeasure two_point(const SpacePtr& space, std::size_t a, std::size_t b,
                          double weight_b) {
  std::vector<double> w(space->size(), 0.0);
  w[a] = 1.0 - weight_b;
  w[b] += weight_b;
  return DiscreteMeasure(space, std::move(w));
}

SpacePtr unit_line(std::size_t points) {
  std::vector<double> coords(points);
  for (std::size_t i = 0; i < points; ++i) coords[i] = static_cast<double>(i);
  return share(line_space(coords));
}

DiscreteMeasure random_measure(const SpacePtr& space, Rng& rng) {
  const std::size_t n = space->size();
  const std::size_t k = 1 + rng.below(std::min(n, kMaxRandomSupport));
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    const double mass = 0.05 + rng.uniform();
    w[rng.below(n)] += mass;
    total += mass;
  }
  for (double& v : w) v /= total;
  return DiscreteMeasure(space, std::move(w));
}

// McShane extension from up to four random anchors; values lie in
// [0, diameter] up to the extension.
std::vector<double> random_lipschitz(const FiniteMetricSpace& space, Rng& rng) {
  const std::size_t n = space.size();
  const double diam = space.diameter();
  const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 4));
  std::vector<std::size_t> anchors(k);
  std::vector<double> values(k);
  for (std::size_t a = 0; a < k; ++a) {
    anchors[a] = rng.below(n);
    values[a] = diam * rng.uniform();
  }
  return lipschitz_extension(space, anchors, values);
}

SetSequence shrinking(const FamilyOptions& o) {
  if (o.grid < 2) fail(ErrorCode::kSchemaViolation, "shrinking needs grid >= 2");
  std::vector<double> coords(o.grid);
  const double step = 2.0 / static_cast<double>(o.grid - 1);
  for (std::size_t i = 0; i < o.grid; ++i) coords[i] = step * static_cast<double>(i);
  coords.back() = 2.0;
  SpacePtr space = share(line_space(coords));
  const std::size_t a = 0;
  const std::size_t b = o.grid - 1;

  std::vector<AmbiguitySet> terms;
  terms.reserve(o.terms);
  for (std::size_t n = 1; n <= o.terms; ++n) {
    const double t = 0.5 / static_cast<double>(n);
    terms.emplace_back(space, std::vector<DiscreteMeasure>{
                                  two_point(space, a, b, t),
                                  two_point(space, b, a, t)});
  }
  AmbiguitySet limit(space, {DiscreteMeasure::dirac(space, a),
                             DiscreteMeasure::dirac(space, b)});
  return {space, std::move(terms), std::move(limit), "shrinking"};
}

SetSequence escaping(const FamilyOptions& o) {
  const std::size_t last = std::max(o.grid > 0 ? o.grid - 1 : 0, o.terms);
  SpacePtr space = unit_line(last + 1);
  std::vector<AmbiguitySet> terms;
  terms.reserve(o.terms);
  for (std::size_t n = 1; n <= o.terms; ++n) {
    terms.emplace_back(space,
                       std::vector<DiscreteMeasure>{DiscreteMeasure::dirac(space, n)});
  }
  AmbiguitySet limit(space, {DiscreteMeasure::dirac(space, 0)});
  return {space, std::move(terms), std::move(limit), "escaping"};
}

SetSequence alternating(const FamilyOptions& o) {
  SpacePtr space = unit_line(std::max<std::size_t>(o.grid, 2));
  std::vector<AmbiguitySet> terms;
  terms.reserve(o.terms);
  for (std::size_t n = 1; n <= o.terms; ++n) {
    terms.emplace_back(space, std::vector<DiscreteMeasure>{
                                  DiscreteMeasure::dirac(space, (n - 1) % 2)});
  }
  AmbiguitySet limit(space, {DiscreteMeasure::dirac(space, 0)});
  return {space, std::move(terms), std::move(limit), "alternating"};
}

SetSequence random_perturbation(const FamilyOptions& o) {
  if (o.generators == 0) fail(ErrorCode::kEmptySet, "no generators requested");
  const std::size_t points = std::max<std::size_t>(o.grid, 2);
  std::vector<double> coords(points);
  for (std::size_t i = 0; i < points; ++i) {
    coords[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  SpacePtr space = share(line_space(coords));
  Rng rng(o.seed);
  std::vector<DiscreteMeasure> gens;
  for (std::size_t j = 0; j < o.generators; ++j) gens.push_back(random_measure(space, rng));
  // Each generator drifts toward its own random mixture of the generators.
  std::vector<DiscreteMeasure> targets;
  for (std::size_t j = 0; j < o.generators; ++j) {
    std::vector<double> lambda(o.generators);
    double total = 0.0;
    for (double& x : lambda) {
      x = 0.05 + rng.uniform();
      total += x;
    }
    for (double& x : lambda) x /= total;
    targets.push_back(mixture(gens, lambda));
  }

  std::vector<AmbiguitySet> terms;
  terms.reserve(o.terms);
  for (std::size_t n = 1; n <= o.terms; ++n) {
    const double s = 1.0 / static_cast<double>(n);
    const double w[2] = {1.0 - s, s};
    std::vector<DiscreteMeasure> moved;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const DiscreteMeasure pair[2] = {gens[j], targets[j]};
      moved.push_back(mixture(pair, w));
    }
    terms.emplace_back(space, std::move(moved));
  }
  AmbiguitySet limit(space, std::move(gens));
  return {space, std::move(terms), std::move(limit), "random_perturbation"};
}

SetSequence drifting(const FamilyOptions& o) {
  std::vector<double> coords{0.0, 1.0};
  for (std::size_t n = 1; n <= o.terms; ++n) {
    const double h = 1.0 / static_cast<double>(n);
    coords.push_back(h);
    coords.push_back(1.0 + h);
  }
  const std::size_t pad = std::max<std::size_t>(o.grid, 2);
  for (std::size_t i = 0; i < pad; ++i) {
    coords.push_back(2.0 * static_cast<double>(i) / static_cast<double>(pad - 1));
  }
  std::sort(coords.begin(), coords.end());
  std::vector<double> unique;
  for (double x : coords) {
    if (unique.empty() || x - unique.back() > 1e-6) {
      unique.push_back(x);
    } else if (x == 1.0 || x == 0.0) {
      unique.back() = x;
    }
  }
  // Exact coordinates for the atoms the terms and the limit use.
  for (std::size_t n = 1; n <= o.terms; ++n) {
    for (double target : {1.0 / static_cast<double>(n), 1.0 + 1.0 / static_cast<double>(n)}) {
      auto it = std::lower_bound(unique.begin(), unique.end(), target - 1e-6);
      *it = target;
    }
  }
  auto index_of = [&](double x) {
    return static_cast<std::size_t>(
        std::lower_bound(unique.begin(), unique.end(), x) - unique.begin());
  };
  SpacePtr space = share(line_space(unique));

  std::vector<AmbiguitySet> terms;
  terms.reserve(o.terms);
  for (std::size_t n = 1; n <= o.terms; ++n) {
    const double h = 1.0 / static_cast<double>(n);
    terms.emplace_back(space, std::vector<DiscreteMeasure>{
                                  DiscreteMeasure::dirac(space, index_of(h)),
                                  DiscreteMeasure::dirac(space, index_of(1.0 + h))});
  }
  AmbiguitySet limit(space, {DiscreteMeasure::dirac(space, index_of(0.0)),
                             DiscreteMeasure::dirac(space, index_of(1.0))});
  return {space, std::move(terms), std::move(limit), "drifting", true};
}

void require_sequence(const SetSequence& seq) {
  for (const auto& term : seq.terms) {
    require_same_space(term.space(), seq.limit.space(), "sequence terms");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kShrinking:
      return "shrinking";
    case Family::kEscaping:
      return "escaping";
    case Family::kAlternating:
      return "alternating";
    case Family::kRandomPerturbation:
      return "random_perturbation";
    case Family::kDrifting:
      return "drifting";
  }
  return "unknown";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families{
      Family::kShrinking, Family::kEscaping, Family::kAlternating,
      Family::kRandomPerturbation, Family::kDrifting};
  return families;
}

SetSequence make_family(Family family, const FamilyOptions& options) {
  if (options.terms == 0) fail(ErrorCode::kSchemaViolation, "sequence needs at least one term");
  switch (family) {
    case Family::kShrinking:
      return shrinking(options);
    case Family::kEscaping:
      return escaping(options);
    case Family::kAlternating:
      return alternating(options);
    case Family::kRandomPerturbation:
      return random_perturbation(options);
    case Family::kDrifting:
      return drifting(options);
  }
  fail(ErrorCode::kSchemaViolation, "unknown family");
}

Rng::Rng(std::uint64_t seed) : state_(seed) {}

double Rng::uniform() {
  // splitmix64 keeps streams identical across standard libraries.
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(k, n - 1);
}

std::vector<TestFunction> default_panel(const SpacePtr& space,
                                        std::uint64_t seed,
                                        std::size_t random_count,
                                        bool indicators) {
  const std::size_t n = space->size();
  std::vector<TestFunction> panel;
  panel.reserve(n + random_count);
  if (indicators) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t one[1] = {i};
      panel.push_back(TestFunction::indicator(space, one));
    }
  }
  Rng rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) {
    panel.emplace_back(space, random_lipschitz(*space, rng));
  }
  return panel;
}

std::vector<TestFunction> growth_panel(const SpacePtr& space, BasePoint omega0,
                                       double p, std::uint64_t seed,
                                       std::size_t random_count) {
  require_exponent(p);
  const auto base = checked_base_point(*space, omega0.index);
  const std::size_t n = space->size();
  std::vector<double> moment(n);
  std::vector<double> envelope(n);
  for (std::size_t i = 0; i < n; ++i) {
    moment[i] = std::pow((*space)(base.index, i), p);
    envelope[i] = 1.0 + moment[i];
  }
  std::vector<TestFunction> panel;
  panel.emplace_back(space, moment);
  panel.emplace_back(space, envelope);
  std::vector<double> negated(n);
  for (std::size_t i = 0; i < n; ++i) negated[i] = -envelope[i];
  panel.emplace_back(space, std::move(negated));
  Rng rng(seed ^ 0x5DEECE66DULL);
  const double diam = space->diameter();
  for (std::size_t r = 0; r < random_count; ++r) {
    std::vector<double> v = random_lipschitz(*space, rng);
    for (std::size_t i = 0; i < n; ++i) {
      const double unit = diam > 0.0 ? std::clamp(2.0 * v[i] / diam - 1.0, -1.0, 1.0) : 0.0;
      v[i] = unit * envelope[i];
    }
    panel.emplace_back(space, std::move(v));
  }
  return panel;
}

std::vector<double> weak_convergence_gap(const SetSequence& seq,
                                         const std::vector<TestFunction>& panel,
                                         Exec exec) {
  if (panel.empty()) fail(ErrorCode::kEmptyPanel, "test-function panel is empty");
  require_sequence(seq);
  for (const auto& phi : panel) {
    require_same_space(phi.space(), seq.limit.space(), "panel");
  }
  std::vector<double> limit_values(panel.size());
  for (std::size_t f = 0; f < panel.size(); ++f) {
    limit_values[f] = sublinear_expectation(seq.limit, panel[f]);
  }
  std::vector<double> gaps(seq.terms.size(), 0.0);
  parallel_for(seq.terms.size(), exec, [&](std::size_t n) {
    double worst = 0.0;
    for (std::size_t f = 0; f < panel.size(); ++f) {
      const double v = sublinear_expectation(seq.terms[n], panel[f]);
      worst = std::max(worst, std::abs(v - limit_values[f]));
    }
    gaps[n] = worst;
  });
  return gaps;
}

std::vector<double> distance_trace(const SetSequence& seq, double p, Exec exec) {
  require_exponent(p);
  require_sequence(seq);
  DistanceOptions inner;
  inner.exec = Exec::kSerial;
  std::vector<double> trace(seq.terms.size(), 0.0);
  parallel_for(seq.terms.size(), exec, [&](std::size_t n) {
    trace[n] = generalized_wasserstein(seq.terms[n], seq.limit, p, false, inner).value;
  });
  return trace;
}

std::vector<std::vector<double>> tail_matrix(const SetSequence& seq,
                                             BasePoint omega0, double p,
                                             const std::vector<double>& k_grid) {
  if (k_grid.empty()) fail(ErrorCode::kSchemaViolation, "K grid is empty");
  for (std::size_t k = 0; k < k_grid.size(); ++k) {
    if (!std::isfinite(k_grid[k])) fail(ErrorCode::kNonFiniteValue, "K grid value is not finite");
    if (k > 0 && !(k_grid[k] > k_grid[k - 1])) {
      fail(ErrorCode::kSchemaViolation, "K grid must be strictly increasing");
    }
  }
  require_sequence(seq);
  checked_base_point(*seq.limit.space(), omega0.index);
  std::vector<std::vector<double>> tail(seq.terms.size(),
                                        std::vector<double>(k_grid.size()));
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    for (std::size_t k = 0; k < k_grid.size(); ++k) {
      tail[n][k] = tail_functional(seq.terms[n], omega0, p, k_grid[k]);
    }
  }
  return tail;
}

std::string describe(const ConvergenceRule& rule) {
  return "last quarter nonincreasing within " + format_double(rule.monotone_slack) +
         " and (final value < " + format_double(rule.abs_threshold) +
         " or last-quarter decay exponent >= " +
         format_double(rule.min_decay_exponent) + "); tail proxy < " +
         format_double(rule.tail_threshold);
}

std::size_t last_quarter(std::size_t n) {
  return std::max<std::size_t>(1, (n + 3) / 4);
}

bool converges_to_zero(const std::vector<double>& trace,
                       const ConvergenceRule& rule) {
  if (trace.empty()) return false;
  const std::size_t n = trace.size();
  const std::size_t first = n - last_quarter(n);
  for (std::size_t k = first + 1; k < n; ++k) {
    if (trace[k] > trace[k - 1] + rule.monotone_slack) return false;
  }
  if (trace.back() < rule.abs_threshold) return true;
  if (n - first < 2 || trace[first] <= 0.0) return false;
  const double exponent = std::log(trace[first] / trace.back()) /
                          std::log(static_cast<double>(n) /
                                   static_cast<double>(first + 1));
  return exponent >= rule.min_decay_exponent;
}

double tail_proxy(const std::vector<std::vector<double>>& tail) {
  if (tail.empty()) return 0.0;
  double worst = 0.0;
  for (std::size_t k = tail.size() - last_quarter(tail.size()); k < tail.size(); ++k) {
    if (!tail[k].empty()) worst = std::max(worst, tail[k].back());
  }
  return worst;
}

std::vector<double> default_k_grid(const FiniteMetricSpace& space,
                                   BasePoint omega0) {
  const double r = space.radius_from(checked_base_point(space, omega0.index).index);
  if (r <= 0.0) return {1.0};
  return {0.25 * r, 0.5 * r, 0.75 * r, 2.0 * r};
}

MetrizationReport metrization_report(const SetSequence& seq, double p,
                                     std::vector<double> k_grid,
                                     BasePoint omega0,
                                     const MetrizationOptions& options) {
  require_exponent(p);
  require_sequence(seq);
  const SpacePtr& space = seq.limit.space();
  MetrizationReport report;
  report.p = p;
  report.omega0 = checked_base_point(*space, omega0.index).index;
  report.rule = describe(options.rule);
  report.tail_trace = tail_matrix(seq, omega0, p, k_grid);
  report.k_grid = std::move(k_grid);
  report.distance_trace = distance_trace(seq, p, options.exec);
  report.weak_gap_trace = weak_convergence_gap(
      seq,
      options.panel ? *options.panel
                    : default_panel(space, options.seed, 64, !seq.continuum),
      options.exec);
  report.growth_gap_trace = weak_convergence_gap(
      seq, growth_panel(space, omega0, p, options.seed), options.exec);
  report.tail_proxy = tail_proxy(report.tail_trace);

  const ConvergenceRule& rule = options.rule;
  report.verdict_i = converges_to_zero(report.distance_trace, rule);
  report.verdict_ii = converges_to_zero(report.growth_gap_trace, rule);
  report.verdict_iii = converges_to_zero(report.weak_gap_trace, rule) &&
                       report.tail_proxy < rule.tail_threshold;
  report.agreement = report.verdict_i == report.verdict_iii;
  return report;
}

PEquivalence p_equivalence_check(const SetSequence& seq, double p, double q,
                                 BasePoint omega0,
                                 const MetrizationOptions& options) {
  require_exponent(p);
  require_exponent(q);
  require_sequence(seq);
  PEquivalence out;
  out.trace_p = distance_trace(seq, p, options.exec);
  out.trace_q = distance_trace(seq, q, options.exec);
  out.converged_p = converges_to_zero(out.trace_p, options.rule);
  out.converged_q = converges_to_zero(out.trace_q, options.rule);
  const std::vector<double> grid = default_k_grid(*seq.limit.space(), omega0);
  out.tail_proxy = tail_proxy(tail_matrix(seq, omega0, std::max(p, q), grid));
  out.tail_condition = out.tail_proxy < options.rule.tail_threshold;
  out.agree = out.tail_condition && out.converged_p == out.converged_q;
  return out;
}

std::vector<SemicontinuityRow> semicontinuity_check(
    const SetSequence& seq,
    const std::vector<std::vector<std::size_t>>& subsets) {
  require_sequence(seq);
  const std::size_t n = seq.limit.space()->size();
  std::vector<SemicontinuityRow> rows;
  rows.reserve(subsets.size());
  const std::size_t first =
      seq.terms.empty() ? 0 : seq.terms.size() - last_quarter(seq.terms.size());
  for (const auto& subset : subsets) {
    for (std::size_t i : subset) {
      if (i >= n) fail(ErrorCode::kInvalidIndex, "subset index " + std::to_string(i) + " out of range");
    }
    SemicontinuityRow row;
    row.subset = subset;
    row.limit_value = upper_probability(seq.limit, subset);
    for (std::size_t k = first; k < seq.terms.size(); ++k) {
      row.limsup_proxy = std::max(row.limsup_proxy, upper_probability(seq.terms[k], subset));
    }
    row.pass = row.limsup_proxy <= row.limit_value + 1e-6;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
  if (n > 20) fail(ErrorCode::kSchemaViolation, "too many points to enumerate subsets");
  std::vector<std::vector<std::size_t>> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

CounterexampleResult dual_gap_counterexample(double distance,
                                             bool convexify_base) {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    fail(ErrorCode::kNonpositiveScale, "distance must be positive");
  }
  SpacePtr space = share(validate_space({{0.0, distance}, {distance, 0.0}}));
  std::vector<DiscreteMeasure> gens{DiscreteMeasure::dirac(space, 0),
                                    DiscreteMeasure::dirac(space, 1)};
  const AmbiguitySet base(space, gens, convexify_base);
  const AmbiguitySet hull(space, gens, true);

  CounterexampleResult out;
  out.w1 = generalized_wasserstein(base, hull, 1.0, false).value;
  out.dual = dual_distance(base, hull);
  const double expected = convexify_base ? 0.0 : 0.5 * distance;
  if (std::abs(out.w1 - expected) > 1e-9 || std::abs(out.dual) > 1e-9) {
    fail(ErrorCode::kNumericalBreakdown,
         "counterexample gave w1 = " + format_double(out.w1) +
             ", dual = " + format_double(out.dual));
  }
  return out;
}

}  // namespace ambiset
