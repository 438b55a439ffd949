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

#include "ambiset/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace ambiset {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols()) {
      fail(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
  }
  return out;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_variables, Sense sense)
    : sense_(sense),
      objective_(num_variables, 0.0),
      lower_(num_variables, 0.0),
      upper_(num_variables, kInfinity) {}

void LinearProgram::set_objective(std::vector<double> coefficients) {
  if (coefficients.size() != objective_.size()) {
    fail(ErrorCode::kDimensionMismatch, "objective has " +
                                            std::to_string(coefficients.size()) +
                                            " coefficients, expected " +
                                            std::to_string(objective_.size()));
  }
  objective_ = std::move(coefficients);
}

void LinearProgram::set_objective_coefficient(std::size_t j, double value) {
  if (j >= objective_.size()) fail(ErrorCode::kInvalidIndex, "objective index");
  objective_[j] = value;
}

std::size_t LinearProgram::add_constraint(std::vector<double> coefficients,
                                          Relation relation, double rhs) {
  if (coefficients.size() != objective_.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "constraint has " + std::to_string(coefficients.size()) +
             " coefficients, expected " + std::to_string(objective_.size()));
  }
  constraints_.push_back({std::move(coefficients), relation, rhs});
  return constraints_.size() - 1;
}

void LinearProgram::set_bounds(std::size_t j, double lower, double upper) {
  if (j >= objective_.size()) fail(ErrorCode::kInvalidIndex, "bound index");
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    fail(ErrorCode::kSchemaViolation,
         "invalid bounds for variable " + std::to_string(j));
  }
  lower_[j] = lower;
  upper_[j] = upper;
}

namespace {

// Dense LU with partial pivoting for the final basis; used to recompute the
// basic primal values and the row multipliers from the original data.
class DenseLu {
 public:
  explicit DenseLu(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t m = lu_.rows();
    for (std::size_t i = 0; i < m; ++i) perm_[i] = i;
    double scale = 0.0;
    for (double v : lu_.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
      }
      if (std::abs(lu_(p, k)) <= 1e-14 * std::max(scale, 1.0)) {
        ok_ = false;
        return;
      }
      if (p != k) {
        std::swap_ranges(lu_.row(p).begin(), lu_.row(p).end(),
                         lu_.row(k).begin());
        std::swap(perm_[p], perm_[k]);
      }
      for (std::size_t i = k + 1; i < m; ++i) {
        const double f = lu_(i, k) / lu_(k, k);
        lu_(i, k) = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < m; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  bool ok() const noexcept { return ok_; }

  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t m = lu_.rows();
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = m; i-- > 0;) {
      double s = x[i];
      for (std::size_t j = i + 1; j < m; ++j) s -= lu_(i, j) * x[j];
      x[i] = s / lu_(i, i);
    }
    return x;
  }

  std::vector<double> solve_transposed(std::span<const double> c) const {
    const std::size_t m = lu_.rows();
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) {
      double v = c[i];
      for (std::size_t j = 0; j < i; ++j) v -= lu_(j, i) * s[j];
      s[i] = v / lu_(i, i);
    }
    for (std::size_t i = m; i-- > 0;) {
      double v = s[i];
      for (std::size_t j = i + 1; j < m; ++j) v -= lu_(j, i) * s[j];
      s[i] = v;
    }
    std::vector<double> y(m);
    for (std::size_t k = 0; k < m; ++k) y[perm_[k]] = s[k];
    return y;
  }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool ok_ = true;
};

enum class VarKind { kShifted, kReflected, kFree, kFixed };

struct VarMap {
  VarKind kind = VarKind::kShifted;
  std::size_t col = 0;
  std::size_t neg_col = 0;
  double offset = 0.0;
};

// min cost.y  s.t.  A y = b (b >= 0) with slack, surplus and artificial
// columns appended; the initial basis is an identity.
struct StandardForm {
  std::size_t rows = 0;
  std::size_t structural = 0;
  std::size_t columns = 0;
  Matrix a;
  std::vector<double> b;
  std::vector<double> cost;
  std::vector<double> row_sign;
  std::vector<char> artificial;
  std::vector<std::size_t> initial_basis;
  std::vector<VarMap> vars;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t n = lp.num_variables();
  const double sense = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;

  sf.vars.resize(n);
  std::vector<std::pair<std::size_t, double>> bound_rows;  // (column, rhs)
  for (std::size_t j = 0; j < n; ++j) {
    const double l = lp.lower()[j];
    const double u = lp.upper()[j];
    VarMap& v = sf.vars[j];
    if (std::isfinite(l) && std::isfinite(u) && l == u) {
      v.kind = VarKind::kFixed;
      v.offset = l;
    } else if (std::isfinite(l)) {
      v.kind = VarKind::kShifted;
      v.col = sf.structural++;
      v.offset = l;
      if (std::isfinite(u)) bound_rows.emplace_back(v.col, u - l);
    } else if (std::isfinite(u)) {
      v.kind = VarKind::kReflected;
      v.col = sf.structural++;
      v.offset = u;
    } else {
      v.kind = VarKind::kFree;
      v.col = sf.structural++;
      v.neg_col = sf.structural++;
    }
  }

  const auto& cons = lp.constraints();
  sf.rows = cons.size() + bound_rows.size();
  std::vector<std::vector<double>> rows(sf.rows,
                                        std::vector<double>(sf.structural, 0.0));
  std::vector<double> rhs(sf.rows, 0.0);
  std::vector<Relation> rel(sf.rows, Relation::kLessEqual);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    rhs[i] = cons[i].rhs;
    rel[i] = cons[i].relation;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cons[i].coefficients[j];
      if (c == 0.0) continue;
      const VarMap& v = sf.vars[j];
      switch (v.kind) {
        case VarKind::kShifted:
          rows[i][v.col] += c;
          rhs[i] -= c * v.offset;
          break;
        case VarKind::kReflected:
          rows[i][v.col] -= c;
          rhs[i] -= c * v.offset;
          break;
        case VarKind::kFree:
          rows[i][v.col] += c;
          rows[i][v.neg_col] -= c;
          break;
        case VarKind::kFixed:
          rhs[i] -= c * v.offset;
          break;
      }
    }
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    const std::size_t i = cons.size() + k;
    rows[i][bound_rows[k].first] = 1.0;
    rhs[i] = bound_rows[k].second;
  }

  sf.row_sign.assign(sf.rows, 1.0);
  std::size_t extra = 0;
  for (std::size_t i = 0; i < sf.rows; ++i) {
    if (rhs[i] < 0.0) {
      sf.row_sign[i] = -1.0;
      rhs[i] = -rhs[i];
      for (double& c : rows[i]) c = -c;
      if (rel[i] == Relation::kLessEqual) {
        rel[i] = Relation::kGreaterEqual;
      } else if (rel[i] == Relation::kGreaterEqual) {
        rel[i] = Relation::kLessEqual;
      }
    }
    extra += rel[i] == Relation::kEqual ? 1 : (rel[i] == Relation::kLessEqual ? 1 : 2);
  }

  sf.columns = sf.structural + extra;
  sf.a = Matrix(sf.rows, sf.columns);
  sf.b = rhs;
  sf.cost.assign(sf.columns, 0.0);
  sf.artificial.assign(sf.columns, 0);
  sf.initial_basis.resize(sf.rows);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = sense * lp.objective()[j];
    const VarMap& v = sf.vars[j];
    switch (v.kind) {
      case VarKind::kShifted: sf.cost[v.col] += c; break;
      case VarKind::kReflected: sf.cost[v.col] -= c; break;
      case VarKind::kFree:
        sf.cost[v.col] += c;
        sf.cost[v.neg_col] -= c;
        break;
      case VarKind::kFixed: break;
    }
  }
  std::size_t next = sf.structural;
  for (std::size_t i = 0; i < sf.rows; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), sf.a.row(i).begin());
    if (rel[i] == Relation::kLessEqual) {
      sf.a(i, next) = 1.0;
      sf.initial_basis[i] = next++;
    } else {
      if (rel[i] == Relation::kGreaterEqual) sf.a(i, next++) = -1.0;
      sf.a(i, next) = 1.0;
      sf.artificial[next] = 1;
      sf.initial_basis[i] = next++;
    }
  }
  return sf;
}

enum class RunOutcome { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

class Tableau {
 public:
  Tableau(const StandardForm& sf, const LpOptions& options)
      : sf_(sf),
        options_(options),
        t_(sf.rows + 1, sf.columns + 1),
        basis_(sf.initial_basis),
        rule_(options.start_rule) {
    for (std::size_t i = 0; i < sf.rows; ++i) {
      std::copy(sf.a.row(i).begin(), sf.a.row(i).end(), t_.row(i).begin());
      t_(i, sf.columns) = sf.b[i];
    }
    max_iterations_ = options.max_iterations != 0
                          ? options.max_iterations
                          : 50 * (sf.rows + sf.columns) + 1000;
  }

  RunOutcome run() {
    bool has_artificial = false;
    for (std::size_t i = 0; i < sf_.rows; ++i) {
      if (sf_.artificial[basis_[i]]) has_artificial = true;
    }
    if (has_artificial) {
      std::vector<double> phase1(sf_.columns, 0.0);
      for (std::size_t j = 0; j < sf_.columns; ++j) {
        if (sf_.artificial[j]) phase1[j] = 1.0;
      }
      load_costs(phase1);
      const RunOutcome outcome = iterate(/*allow_artificial=*/true, 1.0);
      if (outcome == RunOutcome::kIterationLimit) return outcome;
      double bscale = 1.0;
      for (double v : sf_.b) bscale = std::max(bscale, std::abs(v));
      if (-t_(sf_.rows, sf_.columns) > options_.tolerance * bscale) {
        return RunOutcome::kInfeasible;
      }
      drive_out_artificials();
    }
    load_costs(sf_.cost);
    double cscale = 1.0;
    for (double v : sf_.cost) cscale = std::max(cscale, std::abs(v));
    return iterate(/*allow_artificial=*/false, cscale);
  }

  const std::vector<std::size_t>& basis() const noexcept { return basis_; }
  double basic_value(std::size_t row) const { return t_(row, sf_.columns); }
  std::size_t iterations() const noexcept { return iterations_; }
  PivotRule rule() const noexcept { return rule_; }

  // Multipliers read off the reduced costs of the initial identity columns.
  std::vector<double> tableau_duals() const {
    std::vector<double> y(sf_.rows);
    for (std::size_t i = 0; i < sf_.rows; ++i) {
      const std::size_t j = sf_.initial_basis[i];
      y[i] = sf_.cost[j] - t_(sf_.rows, j);
    }
    return y;
  }

 private:
  void load_costs(const std::vector<double>& cost) {
    const std::size_t m = sf_.rows;
    const std::size_t w = sf_.columns + 1;
    auto r = t_.row(m);
    for (std::size_t j = 0; j < sf_.columns; ++j) r[j] = cost[j];
    r[sf_.columns] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      auto row = t_.row(i);
      for (std::size_t j = 0; j < w; ++j) r[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m; ++i) r[basis_[i]] = 0.0;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = sf_.columns + 1;
    auto prow = t_.row(pr);
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t i = 0; i <= sf_.rows; ++i) {
      if (i == pr) continue;
      auto row = t_.row(i);
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
      if (i < sf_.rows && row[sf_.columns] < 0.0 &&
          row[sf_.columns] > -1e-12) {
        row[sf_.columns] = 0.0;
      }
    }
    basis_[pr] = pc;
    ++iterations_;
  }

  RunOutcome iterate(bool allow_artificial, double cscale) {
    const std::size_t m = sf_.rows;
    const double dtol = 1e-11 * cscale;
    constexpr double kPivotTol = 1e-10;
    std::size_t degenerate = 0;
    auto r = t_.row(m);
    while (true) {
      if (iterations_ >= max_iterations_) return RunOutcome::kIterationLimit;
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < sf_.columns; ++j) {
        if (!allow_artificial && sf_.artificial[j]) continue;
        if (r[j] >= -dtol) continue;
        if (rule_ == PivotRule::kBland) {
          enter = j;
          break;
        }
        if (!enter || r[j] < r[*enter]) enter = j;
      }
      if (!enter) return RunOutcome::kOptimal;
      const std::size_t q = *enter;

      std::optional<std::size_t> leave;
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double a = t_(i, q);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, sf_.columns) / a;
        if (!leave) {
          leave = i;
          best = ratio;
          continue;
        }
        const double slack = 1e-12 * (1.0 + std::abs(best));
        if (ratio < best - slack) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + slack) {
          const bool better =
              rule_ == PivotRule::kBland
                  ? basis_[i] < basis_[*leave]
                  : a > t_(*leave, q);
          if (better) {
            leave = i;
            best = std::min(best, ratio);
          }
        }
      }
      if (!leave) return RunOutcome::kUnbounded;

      if (best <= 1e-13) {
        if (++degenerate > options_.degenerate_limit) rule_ = PivotRule::kBland;
      } else {
        degenerate = 0;
      }
      pivot(*leave, q);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < sf_.rows; ++i) {
      if (!sf_.artificial[basis_[i]]) continue;
      std::optional<std::size_t> col;
      double best = 1e-9;
      for (std::size_t j = 0; j < sf_.columns; ++j) {
        if (sf_.artificial[j]) continue;
        const double a = std::abs(t_(i, j));
        if (a > best) {
          best = a;
          col = j;
        }
      }
      if (col) {
        t_(i, sf_.columns) = 0.0;
        pivot(i, *col);
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  const StandardForm& sf_;
  const LpOptions& options_;
  Matrix t_;
  std::vector<std::size_t> basis_;
  PivotRule rule_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

struct Attempt {
  RunOutcome outcome;
  LpSolution solution;
};

Attempt attempt(const LinearProgram& lp, const StandardForm& sf,
                const LpOptions& options) {
  Tableau tab(sf, options);
  Attempt out{tab.run(), {}};
  LpSolution& sol = out.solution;
  sol.iterations = tab.iterations();
  sol.final_rule = tab.rule();
  const bool maximize = lp.sense() == Sense::kMaximize;
  switch (out.outcome) {
    case RunOutcome::kInfeasible:
      sol.status = LpStatus::kInfeasible;
      sol.value = std::numeric_limits<double>::quiet_NaN();
      return out;
    case RunOutcome::kUnbounded:
      sol.status = LpStatus::kUnbounded;
      sol.value = maximize ? kInfinity : -kInfinity;
      return out;
    case RunOutcome::kIterationLimit:
      return out;
    case RunOutcome::kOptimal:
      break;
  }

  const std::size_t m = sf.rows;
  const auto& basis = tab.basis();
  std::vector<double> y_std(sf.columns, 0.0);
  std::vector<double> pi;
  bool refreshed = false;
  if (m > 0) {
    Matrix bmat(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) bmat(i, k) = sf.a(i, basis[k]);
    }
    DenseLu lu(std::move(bmat));
    if (lu.ok()) {
      const auto xb = lu.solve(sf.b);
      std::vector<double> cb(m);
      for (std::size_t k = 0; k < m; ++k) cb[k] = sf.cost[basis[k]];
      pi = lu.solve_transposed(cb);
      for (std::size_t k = 0; k < m; ++k) {
        double v = xb[k];
        if (v < 0.0 && v > -1e-10) v = 0.0;
        y_std[basis[k]] = v;
      }
      refreshed = true;
    }
  }
  if (!refreshed) {
    for (std::size_t k = 0; k < m; ++k) {
      y_std[basis[k]] = std::max(0.0, tab.basic_value(k));
    }
    pi = tab.tableau_duals();
  }

  const std::size_t n = lp.num_variables();
  sol.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[j];
    switch (v.kind) {
      case VarKind::kShifted: sol.primal[j] = v.offset + y_std[v.col]; break;
      case VarKind::kReflected: sol.primal[j] = v.offset - y_std[v.col]; break;
      case VarKind::kFree:
        sol.primal[j] = y_std[v.col] - y_std[v.neg_col];
        break;
      case VarKind::kFixed: sol.primal[j] = v.offset; break;
    }
  }
  sol.dual.resize(lp.num_constraints());
  for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
    const double y = pi[i] * sf.row_sign[i];
    sol.dual[i] = maximize ? -y : y;
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective()[j] * sol.primal[j];
  sol.value = value;
  sol.status = LpStatus::kOptimal;
  sol.certificate = certify(lp, sol.primal, sol.dual);
  return out;
}

bool certificate_ok(const LpSolution& sol, double tolerance) {
  const double scale = std::max(1.0, std::abs(sol.value));
  const double limit = 10.0 * tolerance * scale;
  const auto& c = sol.certificate;
  return c.primal_residual <= limit && c.dual_residual <= limit &&
         c.complementarity <= limit && c.duality_gap <= limit;
}

void validate_lp(const LinearProgram& lp, double tolerance) {
  if (!(tolerance > 0.0)) {
    fail(ErrorCode::kSchemaViolation, "LP tolerance must be positive");
  }
  for (double c : lp.objective()) {
    if (!std::isfinite(c)) fail(ErrorCode::kNonFiniteValue, "objective");
  }
  for (const auto& row : lp.constraints()) {
    if (!std::isfinite(row.rhs)) fail(ErrorCode::kNonFiniteValue, "rhs");
    for (double c : row.coefficients) {
      if (!std::isfinite(c)) fail(ErrorCode::kNonFiniteValue, "constraint");
    }
  }
}

}  // namespace

LpCertificate certify(const LinearProgram& lp, std::span<const double> primal,
                      std::span<const double> dual) {
  const std::size_t n = lp.num_variables();
  const auto& cons = lp.constraints();
  if (primal.size() != n || dual.size() != cons.size()) {
    fail(ErrorCode::kDimensionMismatch, "certificate vector sizes");
  }
  const double sense = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  LpCertificate cert;

  std::vector<double> reduced(n);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = sense * lp.objective()[j];
  double dual_objective = 0.0;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto& row = cons[i];
    double activity = 0.0;
    for (std::size_t j = 0; j < n; ++j) activity += row.coefficients[j] * primal[j];
    const double slack = activity - row.rhs;
    double violation = 0.0;
    double sign_violation = 0.0;
    const double y = sense * dual[i];
    switch (row.relation) {
      case Relation::kLessEqual:
        violation = std::max(0.0, slack);
        sign_violation = std::max(0.0, y);
        break;
      case Relation::kGreaterEqual:
        violation = std::max(0.0, -slack);
        sign_violation = std::max(0.0, -y);
        break;
      case Relation::kEqual:
        violation = std::abs(slack);
        break;
    }
    cert.primal_residual = std::max(cert.primal_residual, violation);
    cert.dual_residual = std::max(cert.dual_residual, sign_violation);
    if (row.relation != Relation::kEqual) {
      cert.complementarity = std::max(cert.complementarity, std::abs(y * slack));
    }
    dual_objective += row.rhs * y;
    for (std::size_t j = 0; j < n; ++j) reduced[j] -= y * row.coefficients[j];
  }

  double primal_objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = primal[j];
    const double l = lp.lower()[j];
    const double u = lp.upper()[j];
    primal_objective += sense * lp.objective()[j] * x;
    cert.primal_residual = std::max({cert.primal_residual, std::max(0.0, l - x),
                                     std::max(0.0, x - u)});
    const double d = reduced[j];
    if (d > 0.0) {
      if (std::isfinite(l)) {
        dual_objective += l * d;
        cert.complementarity = std::max(cert.complementarity, d * (x - l));
      } else {
        cert.dual_residual = std::max(cert.dual_residual, d);
      }
    } else if (d < 0.0) {
      if (std::isfinite(u)) {
        dual_objective += u * d;
        cert.complementarity = std::max(cert.complementarity, -d * (u - x));
      } else {
        cert.dual_residual = std::max(cert.dual_residual, -d);
      }
    }
  }
  cert.duality_gap = std::abs(primal_objective - dual_objective);
  return cert;
}

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  validate_lp(lp, options.tolerance);
  const StandardForm sf = to_standard_form(lp);

  Attempt first = attempt(lp, sf, options);
  if (first.outcome == RunOutcome::kInfeasible ||
      first.outcome == RunOutcome::kUnbounded) {
    return std::move(first.solution);
  }
  if (first.outcome == RunOutcome::kOptimal &&
      certificate_ok(first.solution, options.tolerance)) {
    return std::move(first.solution);
  }

  LpOptions bland = options;
  bland.start_rule = PivotRule::kBland;
  Attempt second = attempt(lp, sf, bland);
  if (second.outcome == RunOutcome::kInfeasible ||
      second.outcome == RunOutcome::kUnbounded) {
    return std::move(second.solution);
  }
  if (second.outcome == RunOutcome::kOptimal &&
      certificate_ok(second.solution, options.tolerance)) {
    return std::move(second.solution);
  }
  if (second.outcome == RunOutcome::kIterationLimit) {
    fail(ErrorCode::kNumericalBreakdown,
         "simplex iteration limit reached under Bland's rule");
  }
  const auto& c = second.solution.certificate;
  fail(ErrorCode::kNumericalBreakdown,
       "simplex certificate failed: primal " + std::to_string(c.primal_residual) +
           ", dual " + std::to_string(c.dual_residual) + ", gap " +
           std::to_string(c.duality_gap));
}

LpSolution solve_lp(const LinearProgram& lp, double tolerance) {
  LpOptions options;
  options.tolerance = tolerance;
  return solve_lp(lp, options);
}

}  // namespace ambiset
