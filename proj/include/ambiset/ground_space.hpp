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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ambiset/error.hpp"

namespace ambiset {

enum class ValidationMode { kStrict, kLenient };

/// Default relative tolerance for lenient symmetry repair.
inline constexpr double kLenientTolerance = 1e-9;

/// A finite metric space stored as a dense row-major distance matrix.
///
/// Instances are immutable once built; the only ways to obtain one are
/// `validate_space`, `from_points` and `scale`, so every live object satisfies
/// the metric axioms.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return dist_[i * labels_.size() + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * labels_.size(), labels_.size()};
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& flat() const noexcept { return dist_; }

  /// Largest pairwise distance.
  double diameter() const noexcept;

  /// Largest distance from point `from`.
  double radius_from(std::size_t from) const;

  std::vector<std::vector<double>> matrix() const;

  friend bool operator==(const FiniteMetricSpace&,
                         const FiniteMetricSpace&) = default;

 private:
  friend FiniteMetricSpace make_space_unchecked(std::vector<std::string>,
                                                std::vector<double>);
  FiniteMetricSpace() = default;

  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// Distinguished point used by tail functionals.
struct BasePoint {
  std::size_t index = 0;
};

BasePoint checked_base_point(const FiniteMetricSpace& space,
                             std::size_t index);

/// First metric-axiom violation found by `check_space`.
struct SpaceViolation {
  ErrorCode code;
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<std::size_t> k;  // intermediate point for triangle violations
  std::string message;
};

/// Runs every check of `validate_space` without throwing. On success returns
/// the (possibly symmetrized) matrix in `repaired`.
std::optional<SpaceViolation> check_space(
    const std::vector<std::vector<double>>& dist, ValidationMode mode,
    double tolerance, std::vector<double>* repaired = nullptr);

FiniteMetricSpace validate_space(
    const std::vector<std::vector<double>>& dist,
    ValidationMode mode = ValidationMode::kStrict,
    double tolerance = kLenientTolerance,
    std::vector<std::string> labels = {});

/// Space whose distances are the l_q distances between `coords`.
FiniteMetricSpace from_points(const std::vector<std::vector<double>>& coords,
                              double norm_exponent = 2.0,
                              std::vector<std::string> labels = {});

/// Points on the real line; a convenience over `from_points`.
FiniteMetricSpace line_space(std::span<const double> coords);

FiniteMetricSpace scale(const FiniteMetricSpace& space, double lambda);

inline SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

}  // namespace ambiset
