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
#include <optional>
#include <vector>

#include "ambiset/measures.hpp"
#include "ambiset/parallel.hpp"

namespace ambiset {

/// Tolerance used when comparing rooted distances (ties, membership).
inline constexpr double kDistanceTolerance = 1e-6;
/// Gap below which a measure counts as a member of a hull.
inline constexpr double kMembershipTolerance = 1e-7;

/// One of the two sup-inf terms of the generalized distance.
///
/// `source_mixture` holds the weights over the source generators of the
/// maximizing source measure (a unit vector whenever the maximum sits at a
/// generator, which is always the case unless the source is convexified and
/// the target is raw). `witness_mixture` holds the weights over the target
/// generators of the closest target measure.
struct DirectedDistanceReport {
  double value = 0.0;
  std::size_t witness_generator = 0;
  std::vector<double> source_mixture;
  std::vector<double> witness_mixture;
  /// Certified gap between the reported value and an upper bound; nonzero
  /// only for the branch-and-bound path.
  double bound_gap = 0.0;
};

struct GeneralizedDistanceReport {
  DirectedDistanceReport forward;
  DirectedDistanceReport backward;
  double value = 0.0;
  double p = 1.0;
  std::optional<double> dual_value;
};

struct DistanceOptions {
  Exec exec = Exec::kParallel;
  /// Absolute tolerance on p-th power costs for the branch-and-bound search.
  double search_tolerance = 1e-10;
  /// Cap on simplex cells explored by the branch-and-bound search.
  std::size_t max_cells = 100000;
};

/// Minimal p-th power cost from `mu` to the convex hull of `target`, as one
/// joint LP over couplings and mixture weights.
struct HullProjection {
  double cost = 0.0;
  std::vector<double> mixture;
};
HullProjection project_to_hull(const DiscreteMeasure& mu,
                               const AmbiguitySet& target, double p);

/// sup over source of inf over target of W_p, honoring each set's convexify
/// flag:
///  * convex target: max over source generators of the joint-LP hull
///    projection (a convex function of the source measure peaks at a vertex);
///  * raw target, raw (or single-generator) source: max-min of pairwise W_p;
///  * raw target, convexified source: max over the source hull of a minimum of
///    convex functions, found by branch and bound over mixture weights.
DirectedDistanceReport directed_distance(const AmbiguitySet& source,
                                         const AmbiguitySet& target, double p,
                                         const DistanceOptions& options = {});

GeneralizedDistanceReport generalized_wasserstein(
    const AmbiguitySet& p1, const AmbiguitySet& p2, double p, bool with_dual,
    const DistanceOptions& options = {});

/// sup { E^source[phi] - E^target[phi] : Lip(phi) <= 1 }, computed as the max
/// over source generators mu of the LP  max t  s.t.  t <= <mu - nu_j, phi>.
/// Depends only on the generators, never on the convexify flags.
struct LipschitzGap {
  double value = 0.0;
  std::size_t generator = 0;
  TestFunction witness;
};
LipschitzGap directed_dual(const AmbiguitySet& source,
                           const AmbiguitySet& target,
                           Exec exec = Exec::kParallel);

/// sup { |E^p1[phi] - E^p2[phi]| : Lip(phi) <= 1 }.
double dual_distance(const AmbiguitySet& p1, const AmbiguitySet& p2,
                     Exec exec = Exec::kParallel);

struct MembershipResult {
  bool member = false;
  double gap = 0.0;        // inf over the hull of W_1(mu_star, nu)
  double dual_gap = 0.0;   // sup_phi E_mu_star[phi] - E^P[phi]
  std::vector<double> mixture;
};

/// Hull membership of `mu_star` in conv(P), whatever P's flag says. Both the
/// transport side and the Lipschitz side are solved; a disagreement beyond
/// kDistanceTolerance raises NumericalBreakdown.
MembershipResult hull_membership(const DiscreteMeasure& mu_star,
                                 const AmbiguitySet& set);

/// Total-variation-style residual: min over w in the simplex of
/// ||mu - sum_j w_j nu_j||_1.
double hull_residual(const DiscreteMeasure& mu, const AmbiguitySet& set);

/// conv(p1) == conv(p2), decided by mixture-feasibility LPs for every
/// generator in both directions.
bool hull_equality(const AmbiguitySet& p1, const AmbiguitySet& p2);

}  // namespace ambiset
