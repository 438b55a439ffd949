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
#include <vector>

#include "ambiset/lp.hpp"
#include "ambiset/measures.hpp"
#include "ambiset/parallel.hpp"

namespace ambiset {

/// Optimal coupling for W_p. `plan` is n x n over the whole space.
struct TransportPlan {
  Matrix plan;
  double cost_exponent = 1.0;
  double value = 0.0;  // W_p, after the 1/p-th root
};

struct WassersteinResult {
  double value;
  TransportPlan plan;
};

/// 1-Lipschitz function attaining the Kantorovich-Rubinstein dual, shifted so
/// that phi(0) = 0.
struct KantorovichPotential {
  TestFunction phi;
};

struct KrDualResult {
  double value;
  KantorovichPotential witness;
};

/// LP values at or below this magnitude are treated as exact zeros before the
/// 1/p-th root is taken.
inline constexpr double kZeroCost = 1e-13;

/// Takes the 1/p-th root of a p-th power cost, flushing rounding dust to 0.
double root_cost(double cost, double p);

/// d(i, j)^p for the given index lists.
Matrix cost_matrix(const FiniteMetricSpace& space,
                   const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols, double p);

/// Minimal transport cost sum d^p pi (before the root), restricted to the
/// supports of the two measures.
double transport_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      double p);

WassersteinResult wasserstein(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, double p);

/// max { E_mu[phi] - E_nu[phi] : Lip(phi) <= 1 }, solved as an LP over the
/// union of the supports and extended to the whole space.
KrDualResult kr_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// W_p between every pair (a[i], b[j]); rows of the result follow `a`.
Matrix pairwise_wasserstein(const std::vector<DiscreteMeasure>& a,
                            const std::vector<DiscreteMeasure>& b, double p,
                            Exec exec = Exec::kParallel);

/// Smallest 1-Lipschitz extension of values given on `anchors`:
/// phi(x) = min_a (values[a] + d(anchor_a, x)).
std::vector<double> lipschitz_extension(const FiniteMetricSpace& space,
                                        const std::vector<std::size_t>& anchors,
                                        const std::vector<double>& values);

/// Sorted union of two ascending index lists.
std::vector<std::size_t> merge_supports(const std::vector<std::size_t>& a,
                                        const std::vector<std::size_t>& b);

}  // namespace ambiset
