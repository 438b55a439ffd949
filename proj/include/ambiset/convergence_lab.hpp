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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambiset/ambiguity_distance.hpp"
#include "ambiset/measures.hpp"
#include "ambiset/parallel.hpp"

namespace ambiset {

/// A sequence of ambiguity sets and its candidate limit on one fixed space.
struct SetSequence {
  SpacePtr space;
  std::vector<AmbiguitySet> terms;
  AmbiguitySet limit;
  std::string family;
  /// The grid stands in for a continuum, so the default bounded panel keeps
  /// only Lipschitz functions (singleton indicators would not be continuous).
  bool continuum = false;
};

/// Named sequence generators.
///
///  shrinking            line grid with endpoints at distance 2; limit
///                       conv{d_a, d_b}; term n mixes each endpoint with the
///                       other at weight 1/(2n), so W_1 to the limit is 1/n.
///  escaping             unit grid {0..N}; term n = {d_n}, limit {d_0}.
///  alternating          term n = {d_0} for odd n, {d_1} for even n;
///                       limit {d_0}.
///  random_perturbation  seeded random limit hull; term n moves every
///                       generator toward one fixed random measure by 1/n.
///  drifting             point masses d_{1/n}, d_{1+1/n} approaching
///                       conv{d_0, d_1}; every term sits on its own atoms of a
///                       grid on [0, 2] (a continuum model).
enum class Family {
  kShrinking,
  kEscaping,
  kAlternating,
  kRandomPerturbation,
  kDrifting,
};

std::optional<Family> parse_family(std::string_view name);
std::string_view family_name(Family family);
const std::vector<Family>& all_families();

struct FamilyOptions {
  std::size_t terms = 50;
  std::size_t grid = 200;
  std::uint64_t seed = 42;
  std::size_t generators = 3;
};

SetSequence make_family(Family family, const FamilyOptions& options = {});

/// Deterministic uniform doubles in [0, 1) from a 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  std::size_t below(std::size_t n);

 private:
  std::uint64_t state_;
};

/// Singleton indicators (unless `indicators` is false) plus `random_count`
/// random 1-Lipschitz functions.
std::vector<TestFunction> default_panel(const SpacePtr& space,
                                        std::uint64_t seed,
                                        std::size_t random_count = 64,
                                        bool indicators = true);

/// Functions with |phi| <= C (1 + d(omega0, .)^p): d(omega0, .)^p, the
/// envelope 1 + d(omega0, .)^p and its negation, and `random_count` products
/// of the envelope with random Lipschitz functions valued in [-1, 1].
std::vector<TestFunction> growth_panel(const SpacePtr& space, BasePoint omega0,
                                       double p, std::uint64_t seed,
                                       std::size_t random_count = 16);

/// Per term: max over the panel of |E^{P_n}[phi] - E^{P}[phi]|.
std::vector<double> weak_convergence_gap(const SetSequence& seq,
                                         const std::vector<TestFunction>& panel,
                                         Exec exec = Exec::kParallel);

/// Per term: generalized distance W_p(P_n, P).
std::vector<double> distance_trace(const SetSequence& seq, double p,
                                   Exec exec = Exec::kParallel);

/// tail[n][k] = tail_functional(P_n, omega0, p, K_grid[k]).
std::vector<std::vector<double>> tail_matrix(const SetSequence& seq,
                                             BasePoint omega0, double p,
                                             const std::vector<double>& k_grid);

/// Numerical stand-in for "tends to zero" on a finite trace. A trace converges
/// when its last quarter is nonincreasing (within `monotone_slack`) and either
/// its final value is below `abs_threshold`, or the last quarter decays at
/// least like n^(-min_decay_exponent).
struct ConvergenceRule {
  double abs_threshold = 1e-4;
  double monotone_slack = 1e-9;
  double min_decay_exponent = 0.2;
  double tail_threshold = 1e-4;
};

std::string describe(const ConvergenceRule& rule);

/// Number of terms in the "last quarter" of a trace of length `n`.
std::size_t last_quarter(std::size_t n);

bool converges_to_zero(const std::vector<double>& trace,
                       const ConvergenceRule& rule = {});

/// Max over the last quarter of the tail trace at the largest K.
double tail_proxy(const std::vector<std::vector<double>>& tail);

struct MetrizationOptions {
  ConvergenceRule rule;
  std::uint64_t seed = 42;
  /// Bounded panel; defaults to `default_panel(space, seed)`, without
  /// indicators for continuum sequences.
  std::optional<std::vector<TestFunction>> panel;
  Exec exec = Exec::kParallel;
};

struct MetrizationReport {
  double p = 1.0;
  std::size_t omega0 = 0;
  std::vector<double> k_grid;
  std::vector<double> distance_trace;
  std::vector<double> weak_gap_trace;
  std::vector<double> growth_gap_trace;
  std::vector<std::vector<double>> tail_trace;
  double tail_proxy = 0.0;
  bool verdict_i = false;    // W_p(P_n, P) -> 0
  bool verdict_ii = false;   // convergence on the growth panel
  bool verdict_iii = false;  // weak convergence and the tail condition
  bool agreement = false;    // verdict_i == verdict_iii
  std::string rule;
};

/// Default K grid: quarter, half and three quarters of the largest distance
/// from omega0, and twice that distance.
std::vector<double> default_k_grid(const FiniteMetricSpace& space,
                                   BasePoint omega0);

MetrizationReport metrization_report(const SetSequence& seq, double p,
                                     std::vector<double> k_grid,
                                     BasePoint omega0,
                                     const MetrizationOptions& options = {});

struct PEquivalence {
  bool agree = false;
  bool converged_p = false;
  bool converged_q = false;
  bool tail_condition = false;  // tail proxy below threshold at max(p, q)
  double tail_proxy = 0.0;
  std::vector<double> trace_p;
  std::vector<double> trace_q;
};

PEquivalence p_equivalence_check(const SetSequence& seq, double p, double q,
                                 BasePoint omega0,
                                 const MetrizationOptions& options = {});

struct SemicontinuityRow {
  std::vector<std::size_t> subset;
  double limsup_proxy = 0.0;
  double limit_value = 0.0;
  bool pass = false;
};

/// Upper-probability semicontinuity at each subset (every subset of a finite
/// space is closed): limsup over the last quarter must not exceed the limit's
/// upper probability by more than 1e-6.
std::vector<SemicontinuityRow> semicontinuity_check(
    const SetSequence& seq, const std::vector<std::vector<std::size_t>>& subsets);

/// All 2^n subsets of {0..n-1}, in binary-counting order. n <= 20.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n);

struct CounterexampleResult {
  double w1 = 0.0;
  double dual = 0.0;
};

/// Two points at `distance`, P = {d_0, d_1} taken raw and P* its convex hull.
/// Returns W_1(P, P*) and the Lipschitz dual between them, and verifies the
/// closed forms (distance / 2 and 0; both 0 when P is convexified as well).
CounterexampleResult dual_gap_counterexample(double distance = 1.0,
                                             bool convexify_base = false);

}  // namespace ambiset
