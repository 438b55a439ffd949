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

#include "ambiset/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ambiset {

namespace {

std::vector<char> subset_mask(const FiniteMetricSpace& space,
                              std::span<const std::size_t> subset) {
  std::vector<char> mask(space.size(), 0);
  for (std::size_t i : subset) {
    if (i >= space.size()) {
      fail(ErrorCode::kInvalidIndex, "point " + std::to_string(i) +
                                         " outside space of size " +
                                         std::to_string(space.size()));
    }
    mask[i] = 1;
  }
  return mask;
}

double mass_on(const DiscreteMeasure& mu, const std::vector<char>& mask) {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mask[i]) total += mu[i];
  }
  return total;
}

}  // namespace

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* what) {
  if (!same_space(a, b)) {
    fail(ErrorCode::kSpaceMismatch,
         std::string(what) + " are defined on different spaces");
  }
}

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::kInvalidExponent,
         "exponent must be a finite real >= 1, got " + std::to_string(p));
  }
}

DiscreteMeasure::DiscreteMeasure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) fail(ErrorCode::kSchemaViolation, "measure without a space");
  if (weights_.size() != space_->size()) {
    fail(ErrorCode::kDimensionMismatch,
         "measure has " + std::to_string(weights_.size()) +
             " weights for a space of " + std::to_string(space_->size()) +
             " points");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w)) {
      fail(ErrorCode::kNonFiniteValue, "measure weight is not finite");
    }
    if (w < 0.0) fail(ErrorCode::kInvalidWeights, "negative measure weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    fail(ErrorCode::kInvalidWeights,
         "weights sum to " + std::to_string(total) + ", expected 1");
  }
  if (total != 1.0) {
    for (double& w : weights_) w /= total;
  }
}

DiscreteMeasure DiscreteMeasure::dirac(SpacePtr space, std::size_t point) {
  if (!space || point >= space->size()) {
    fail(ErrorCode::kInvalidIndex, "dirac point " + std::to_string(point) +
                                       " outside the space");
  }
  std::vector<double> w(space->size(), 0.0);
  w[point] = 1.0;
  return DiscreteMeasure(std::move(space), std::move(w));
}

std::vector<std::size_t> DiscreteMeasure::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) out.push_back(i);
  }
  return out;
}

DiscreteMeasure mixture(std::span<const DiscreteMeasure> measures,
                        std::span<const double> w) {
  if (measures.empty() || measures.size() != w.size()) {
    fail(ErrorCode::kDimensionMismatch, "mixture weights do not match measures");
  }
  const SpacePtr& space = measures.front().space();
  std::vector<double> out(space->size(), 0.0);
  for (std::size_t k = 0; k < measures.size(); ++k) {
    require_same_space(space, measures[k].space(), "mixture components");
    if (w[k] < 0.0) fail(ErrorCode::kInvalidWeights, "negative mixture weight");
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += w[k] * measures[k][i];
    }
  }
  return DiscreteMeasure(space, std::move(out));
}

AmbiguitySet::AmbiguitySet(SpacePtr space,
                           std::vector<DiscreteMeasure> generators,
                           bool convexify)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      convexify_(convexify) {
  if (generators_.empty()) {
    fail(ErrorCode::kEmptySet, "ambiguity set needs at least one generator");
  }
  for (const auto& g : generators_) {
    require_same_space(space_, g.space(), "generators");
  }
}

AmbiguitySet AmbiguitySet::with_convexify(bool convexify) const {
  AmbiguitySet copy = *this;
  copy.convexify_ = convexify;
  return copy;
}

std::vector<std::size_t> AmbiguitySet::support() const {
  std::vector<char> mask(space_->size(), 0);
  for (const auto& g : generators_) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] > 0.0) mask[i] = 1;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

TestFunction::TestFunction(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) fail(ErrorCode::kSchemaViolation, "function without a space");
  if (values_.size() != space_->size()) {
    fail(ErrorCode::kDimensionMismatch,
         "function has " + std::to_string(values_.size()) +
             " values for a space of " + std::to_string(space_->size()) +
             " points");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::kNonFiniteValue, "test function value is not finite");
    }
  }
}

TestFunction TestFunction::indicator(SpacePtr space,
                                     std::span<const std::size_t> subset) {
  auto mask = subset_mask(*space, subset);
  std::vector<double> values(mask.begin(), mask.end());
  return TestFunction(std::move(space), std::move(values));
}

double expectation(const DiscreteMeasure& mu, const TestFunction& phi) {
  require_same_space(mu.space(), phi.space(), "measure and test function");
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += mu[i] * phi[i];
  return total;
}

SublinearValue sublinear_expectation_witness(const AmbiguitySet& set,
                                             const TestFunction& phi) {
  require_same_space(set.space(), phi.space(), "set and test function");
  SublinearValue best{expectation(set[0], phi), 0};
  for (std::size_t k = 1; k < set.size(); ++k) {
    const double v = expectation(set[k], phi);
    if (v > best.value) best = {v, k};
  }
  return best;
}

double sublinear_expectation(const AmbiguitySet& set,
                             const TestFunction& phi) {
  return sublinear_expectation_witness(set, phi).value;
}

double upper_probability(const AmbiguitySet& set,
                         std::span<const std::size_t> subset) {
  const auto mask = subset_mask(*set.space(), subset);
  double best = 0.0;
  for (const auto& g : set.generators()) best = std::max(best, mass_on(g, mask));
  return best;
}

double lower_probability(const AmbiguitySet& set,
                         std::span<const std::size_t> subset) {
  const auto mask = subset_mask(*set.space(), subset);
  double best = 1.0;
  for (const auto& g : set.generators()) best = std::min(best, mass_on(g, mask));
  return best;
}

std::vector<std::size_t> complement(const FiniteMetricSpace& space,
                                    std::span<const std::size_t> subset) {
  const auto mask = subset_mask(space, subset);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) out.push_back(i);
  }
  return out;
}

double lipschitz_constant(const TestFunction& phi) {
  const auto& space = *phi.space();
  double best = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      best = std::max(best, std::abs(phi[i] - phi[j]) / space(i, j));
    }
  }
  return best;
}

double tail_functional(const AmbiguitySet& set, BasePoint omega0, double p,
                       double threshold) {
  require_exponent(p);
  const auto& space = *set.space();
  checked_base_point(space, omega0.index);
  if (!(threshold >= 0.0)) {
    fail(ErrorCode::kSchemaViolation, "tail threshold must be >= 0");
  }
  auto radius = space.row(omega0.index);
  double best = 0.0;
  for (const auto& g : set.generators()) {
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] > 0.0 && radius[i] >= threshold) {
        total += g[i] * std::pow(radius[i], p);
      }
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace ambiset
