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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ambiset/convergence_lab.hpp"
#include "ambiset/ground_space.hpp"
#include "ambiset/measures.hpp"

namespace ambiset::testing {

/// Hand-rolled generators for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  std::size_t below(std::size_t n) { return rng_.below(n); }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + rng_.below(hi - lo + 1);
  }
  bool coin() { return rng_.uniform() < 0.5; }

  /// Random point cloud in the plane (or on a line) under an l_q norm.
  SpacePtr space(std::size_t n) {
    const std::size_t dim = coin() ? 1 : 2;
    const double q = dim == 1 ? 2.0 : (coin() ? 2.0 : 1.0 + 2.0 * uniform());
    std::vector<std::vector<double>> coords;
    while (coords.size() < n) {
      std::vector<double> c(dim);
      for (double& x : c) x = uniform(-3.0, 3.0);
      bool far = true;
      for (const auto& other : coords) {
        double gap = 0.0;
        for (std::size_t k = 0; k < dim; ++k) gap = std::max(gap, std::abs(c[k] - other[k]));
        if (gap < 1e-3) far = false;
      }
      if (far) coords.push_back(std::move(c));
    }
    return share(from_points(coords, q));
  }

  /// Probability vector; roughly half of the draws have zero entries.
  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    const bool sparse = coin();
    double total = 0.0;
    for (double& x : w) {
      x = sparse && coin() ? 0.0 : uniform(0.01, 1.0);
      total += x;
    }
    if (total == 0.0) {
      w[below(n)] = 1.0;
      return w;
    }
    for (double& x : w) x /= total;
    return w;
  }

  DiscreteMeasure measure(const SpacePtr& s) {
    return DiscreteMeasure(s, weights(s->size()));
  }

  std::vector<double> simplex_point(std::size_t k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - uniform());
      total += x;
    }
    for (double& x : w) x /= total;
    return w;
  }

  AmbiguitySet set(const SpacePtr& s, std::size_t generators, bool convexify = true) {
    std::vector<DiscreteMeasure> g;
    for (std::size_t k = 0; k < generators; ++k) g.push_back(measure(s));
    return AmbiguitySet(s, std::move(g), convexify);
  }

  std::vector<double> values(std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  Rng rng_;
};

/// Compensated summation, used as an order-independent reference.
inline double kahan_dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const double y = a[i] * b[i] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace ambiset::testing
