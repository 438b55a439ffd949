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
#include <limits>
#include <span>
#include <vector>

#include "ambiset/error.hpp"

namespace ambiset {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultLpTolerance = 1e-9;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
enum class PivotRule { kDantzig, kBland };

const char* to_string(LpStatus status);

struct Constraint {
  std::vector<double> coefficients;
  Relation relation;
  double rhs;
};

/// optimize objective . x  s.t.  rows (<=, =, >=) rhs,  lower <= x <= upper.
/// Bounds default to [0, +inf); either side may be infinite.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_variables,
                         Sense sense = Sense::kMinimize);

  std::size_t num_variables() const noexcept { return objective_.size(); }
  std::size_t num_constraints() const noexcept { return constraints_.size(); }
  Sense sense() const noexcept { return sense_; }

  void set_objective(std::vector<double> coefficients);
  void set_objective_coefficient(std::size_t j, double value);
  std::size_t add_constraint(std::vector<double> coefficients,
                             Relation relation, double rhs);
  void set_bounds(std::size_t j, double lower, double upper);

  const std::vector<double>& objective() const noexcept { return objective_; }
  const std::vector<Constraint>& constraints() const noexcept {
    return constraints_;
  }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

 private:
  Sense sense_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Residuals of a primal/dual pair, all in the units of the original LP.
struct LpCertificate {
  double primal_residual = 0.0;  // worst constraint or bound violation
  double dual_residual = 0.0;    // worst multiplier sign / reduced-cost violation
  double complementarity = 0.0;  // worst |multiplier * slack|
  double duality_gap = 0.0;      // |primal objective - dual objective|
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> primal;
  /// One multiplier per constraint, equal to d(value)/d(rhs) in the LP's own
  /// optimization sense.
  std::vector<double> dual;
  LpCertificate certificate;
  std::size_t iterations = 0;
  PivotRule final_rule = PivotRule::kDantzig;
};

struct LpOptions {
  double tolerance = kDefaultLpTolerance;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
  /// 0 selects a size-dependent cap.
  std::size_t max_iterations = 0;
  PivotRule start_rule = PivotRule::kDantzig;
};

/// Two-phase dense primal simplex. Optimal results are certified (primal
/// feasibility, dual feasibility, complementary slackness, zero duality gap)
/// before they are returned; a failed certificate is retried once under
/// Bland's rule and otherwise raised as NumericalBreakdown.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options);
LpSolution solve_lp(const LinearProgram& lp,
                    double tolerance = kDefaultLpTolerance);

/// Evaluates the certificate residuals for an arbitrary primal/dual pair.
LpCertificate certify(const LinearProgram& lp, std::span<const double> primal,
                      std::span<const double> dual);

struct TransportSolution {
  double value = 0.0;
  Matrix plan;
  std::vector<double> row_potential;
  std::vector<double> col_potential;
  std::size_t iterations = 0;
  /// max(0, -min reduced cost): zero for a certified optimum.
  double reduced_cost_violation = 0.0;
};

/// Tolerance on each marginal's total mass.
inline constexpr double kMarginalTolerance = 1e-12;

/// Exact transportation problem by network simplex on the bipartite flow
/// graph. Potentials satisfy f_i + g_j <= cost_ij with equality on the plan's
/// support, and sum f*row + sum g*col equals the value.
TransportSolution solve_transport(const Matrix& cost,
                                  std::span<const double> row_marginal,
                                  std::span<const double> col_marginal);

/// The same problem through the generic simplex; kept as an independent
/// cross-check of `solve_transport`.
LpSolution solve_transport_lp(const Matrix& cost,
                              std::span<const double> row_marginal,
                              std::span<const double> col_marginal,
                              double tolerance = kDefaultLpTolerance);

}  // namespace ambiset
