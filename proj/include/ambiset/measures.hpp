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
#include <span>
#include <vector>

#include "ambiset/ground_space.hpp"

namespace ambiset {

/// Inputs whose total mass is farther than this from 1 are rejected; closer
/// ones are renormalized.
inline constexpr double kMassTolerance = 1e-9;

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;
void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* what);

/// Probability vector over the points of a finite metric space.
class DiscreteMeasure {
 public:
  DiscreteMeasure(SpacePtr space, std::vector<double> weights);

  static DiscreteMeasure dirac(SpacePtr space, std::size_t point);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::size_t size() const noexcept { return weights_.size(); }

  /// Indices carrying positive mass, ascending.
  std::vector<std::size_t> support() const;

 private:
  SpacePtr space_;
  std::vector<double> weights_;
};

/// sum_k w[k] * measures[k]; `w` must itself be a probability vector.
DiscreteMeasure mixture(std::span<const DiscreteMeasure> measures,
                        std::span<const double> w);

/// Finitely generated set of measures. With `convexify` set the set stands
/// for the convex hull of its generators, otherwise for the generators alone.
class AmbiguitySet {
 public:
  AmbiguitySet(SpacePtr space, std::vector<DiscreteMeasure> generators,
               bool convexify = true);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<DiscreteMeasure>& generators() const noexcept {
    return generators_;
  }
  const DiscreteMeasure& operator[](std::size_t i) const noexcept {
    return generators_[i];
  }
  std::size_t size() const noexcept { return generators_.size(); }
  bool convexify() const noexcept { return convexify_; }

  AmbiguitySet with_convexify(bool convexify) const;

  /// Ascending union of the generators' supports.
  std::vector<std::size_t> support() const;

 private:
  SpacePtr space_;
  std::vector<DiscreteMeasure> generators_;
  bool convexify_;
};

/// Real-valued function on the points of a space.
class TestFunction {
 public:
  TestFunction(SpacePtr space, std::vector<double> values);

  /// 1 on `subset`, 0 elsewhere.
  static TestFunction indicator(SpacePtr space,
                                std::span<const std::size_t> subset);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

double expectation(const DiscreteMeasure& mu, const TestFunction& phi);

struct SublinearValue {
  double value;
  std::size_t generator;  // lowest index attaining the maximum
};

/// Upper expectation: max over generators of E_mu[phi]. Hull-invariant, so
/// the set's convexify flag is irrelevant here.
SublinearValue sublinear_expectation_witness(const AmbiguitySet& set,
                                             const TestFunction& phi);
double sublinear_expectation(const AmbiguitySet& set, const TestFunction& phi);

double upper_probability(const AmbiguitySet& set,
                         std::span<const std::size_t> subset);
double lower_probability(const AmbiguitySet& set,
                         std::span<const std::size_t> subset);

/// Complement of `subset` within the space of `set`.
std::vector<std::size_t> complement(const FiniteMetricSpace& space,
                                    std::span<const std::size_t> subset);

double lipschitz_constant(const TestFunction& phi);

/// max over generators of sum_i w_i d(omega0, i)^p [d(omega0, i) >= K].
double tail_functional(const AmbiguitySet& set, BasePoint omega0, double p,
                       double threshold);

void require_exponent(double p);

}  // namespace ambiset
