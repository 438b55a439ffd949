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

#include "ambiset/ground_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ambiset {

namespace {

// Slack for the triangle inequality that only absorbs rounding in the sum
// d(i,k) + d(k,j); it is far below any lenient tolerance.
constexpr double kTriangleRounding = 8 * std::numeric_limits<double>::epsilon();

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

std::string describe(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

FiniteMetricSpace make_space_unchecked(std::vector<std::string> labels,
                                       std::vector<double> dist) {
  FiniteMetricSpace space;
  space.labels_ = std::move(labels);
  space.dist_ = std::move(dist);
  return space;
}

double FiniteMetricSpace::diameter() const noexcept {
  double best = 0.0;
  for (double d : dist_) best = std::max(best, d);
  return best;
}

double FiniteMetricSpace::radius_from(std::size_t from) const {
  if (from >= size()) {
    fail(ErrorCode::kInvalidIndex, "base point " + std::to_string(from) +
                                       " outside space of size " +
                                       std::to_string(size()));
  }
  auto r = row(from);
  return *std::max_element(r.begin(), r.end());
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

BasePoint checked_base_point(const FiniteMetricSpace& space,
                             std::size_t index) {
  if (index >= space.size()) {
    fail(ErrorCode::kInvalidIndex, "base point " + std::to_string(index) +
                                       " outside space of size " +
                                       std::to_string(space.size()));
  }
  return BasePoint{index};
}

std::optional<SpaceViolation> check_space(
    const std::vector<std::vector<double>>& dist, ValidationMode mode,
    double tolerance, std::vector<double>* repaired) {
  const std::size_t n = dist.size();
  if (n == 0) {
    return SpaceViolation{ErrorCode::kDimensionMismatch, 0, 0, std::nullopt,
                          "distance matrix is empty"};
  }
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      return SpaceViolation{ErrorCode::kDimensionMismatch, i, 0, std::nullopt,
                            "row " + std::to_string(i) + " has " +
                                std::to_string(dist[i].size()) +
                                " entries, expected " + std::to_string(n)};
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist[i][j];
      if (!std::isfinite(v)) {
        return SpaceViolation{ErrorCode::kNonFiniteValue, i, j, std::nullopt,
                              "entry " + describe(i, j) + " is not finite"};
      }
      if (v < 0.0) {
        return SpaceViolation{ErrorCode::kNegativeDistance, i, j, std::nullopt,
                              "entry " + describe(i, j) + " is negative"};
      }
      d[i * n + j] = v;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (d[i * n + i] != 0.0) {
      return SpaceViolation{ErrorCode::kNonzeroDiagonal, i, i, std::nullopt,
                            "diagonal entry " + describe(i, i) +
                                " is nonzero"};
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = d[i * n + j];
      const double b = d[j * n + i];
      if (a == b) continue;
      const bool repairable = mode == ValidationMode::kLenient &&
                              std::abs(a - b) <= tolerance * std::max(a, b);
      if (!repairable) {
        return SpaceViolation{ErrorCode::kAsymmetricDistance, i, j,
                              std::nullopt,
                              "d" + describe(i, j) + " != d" + describe(j, i)};
      }
      const double mean = 0.5 * (a + b);
      d[i * n + j] = mean;
      d[j * n + i] = mean;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] == 0.0) {
        return SpaceViolation{ErrorCode::kDuplicatePoints, i, j, std::nullopt,
                              "points " + std::to_string(i) + " and " +
                                  std::to_string(j) + " are at distance 0"};
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double direct = d[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double detour = d[i * n + k] + d[k * n + j];
        if (direct > detour * (1.0 + kTriangleRounding)) {
          std::ostringstream os;
          os << "d" << describe(i, j) << " = " << direct << " > d"
             << describe(i, k) << " + d" << describe(k, j) << " = " << detour;
          return SpaceViolation{ErrorCode::kTriangleViolation, i, j, k,
                                os.str()};
        }
      }
    }
  }

  if (repaired != nullptr) *repaired = std::move(d);
  return std::nullopt;
}

FiniteMetricSpace validate_space(const std::vector<std::vector<double>>& dist,
                                 ValidationMode mode, double tolerance,
                                 std::vector<std::string> labels) {
  std::vector<double> flat;
  if (auto violation = check_space(dist, mode, tolerance, &flat)) {
    fail(violation->code, violation->message);
  }
  if (labels.empty()) labels = default_labels(dist.size());
  if (labels.size() != dist.size()) {
    fail(ErrorCode::kDimensionMismatch,
         std::to_string(labels.size()) + " labels for " +
             std::to_string(dist.size()) + " points");
  }
  return make_space_unchecked(std::move(labels), std::move(flat));
}

FiniteMetricSpace from_points(const std::vector<std::vector<double>>& coords,
                              double norm_exponent,
                              std::vector<std::string> labels) {
  if (coords.empty()) {
    fail(ErrorCode::kDimensionMismatch, "no coordinates given");
  }
  if (!(norm_exponent >= 1.0) || !std::isfinite(norm_exponent)) {
    fail(ErrorCode::kInvalidExponent, "norm exponent must be a finite real >= 1");
  }
  const std::size_t n = coords.size();
  const std::size_t dim = coords.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != dim) {
      fail(ErrorCode::kDimensionMismatch,
           "point " + std::to_string(i) + " has dimension " +
               std::to_string(coords[i].size()) + ", expected " +
               std::to_string(dim));
    }
    for (double c : coords[i]) {
      if (!std::isfinite(c)) {
        fail(ErrorCode::kNonFiniteValue,
             "point " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
  }

  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      if (norm_exponent == 1.0) {
        for (std::size_t c = 0; c < dim; ++c) {
          acc += std::abs(coords[i][c] - coords[j][c]);
        }
      } else if (norm_exponent == 2.0) {
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = coords[i][c] - coords[j][c];
          acc += diff * diff;
        }
        acc = std::sqrt(acc);
      } else {
        for (std::size_t c = 0; c < dim; ++c) {
          acc += std::pow(std::abs(coords[i][c] - coords[j][c]), norm_exponent);
        }
        acc = std::pow(acc, 1.0 / norm_exponent);
      }
      if (acc == 0.0) {
        fail(ErrorCode::kDuplicatePoints, "points " + std::to_string(i) +
                                              " and " + std::to_string(j) +
                                              " coincide");
      }
      d[i * n + j] = acc;
      d[j * n + i] = acc;
    }
  }
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) {
    fail(ErrorCode::kDimensionMismatch, std::to_string(labels.size()) +
                                            " labels for " +
                                            std::to_string(n) + " points");
  }
  return make_space_unchecked(std::move(labels), std::move(d));
}

FiniteMetricSpace line_space(std::span<const double> coords) {
  std::vector<std::vector<double>> pts;
  pts.reserve(coords.size());
  for (double c : coords) pts.push_back({c});
  return from_points(pts, 1.0);
}

FiniteMetricSpace scale(const FiniteMetricSpace& space, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::kNonpositiveScale, "scale factor must be positive");
  }
  std::vector<double> d = space.flat();
  for (double& v : d) v *= lambda;
  return make_space_unchecked(space.labels(), std::move(d));
}

}  // namespace ambiset
