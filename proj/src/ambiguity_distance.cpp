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

#include "ambiset/ambiguity_distance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "ambiset/lp.hpp"
#include "ambiset/transport.hpp"

namespace ambiset {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kHullEqualityTolerance = 1e-9;

std::vector<double> unit_vector(std::size_t size, std::size_t at) {
  std::vector<double> v(size, 0.0);
  v[at] = 1.0;
  return v;
}

// Lowest index whose value lies within kTieTolerance of the maximum.
std::size_t argmax_lowest(const std::vector<double>& values) {
  const double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - kTieTolerance) return i;
  }
  return 0;
}

std::vector<double> clean_simplex(std::vector<double> w) {
  double total = 0.0;
  for (double& x : w) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total > 0.0) {
    for (double& x : w) x /= total;
  }
  return w;
}

void require_optimal(const LpSolution& sol, const char* what) {
  if (sol.status != LpStatus::kOptimal) {
    fail(ErrorCode::kNumericalBreakdown,
         std::string(what) + " LP is " + to_string(sol.status));
  }
}

// Branch and bound for sup over conv(source) of min_j W_p^p(mu, nu_j).
// Each W_p^p(mu_w, nu_j) is convex in the mixture weights w, so on a simplex
// cell it never exceeds its largest vertex value; min_j of those maxima bounds
// the objective on the cell from above.
DirectedDistanceReport max_min_over_hull(const AmbiguitySet& source,
                                         const AmbiguitySet& target, double p,
                                         const DistanceOptions& options) {
  const std::size_t ks = source.size();
  const std::size_t kt = target.size();
  using Point = std::vector<double>;
  std::map<Point, std::vector<double>> cache;

  auto evaluate = [&](const Point& w) -> const std::vector<double>& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    const DiscreteMeasure mu = mixture(source.generators(), w);
    std::vector<double> costs(kt);
    for (std::size_t j = 0; j < kt; ++j) {
      costs[j] = transport_cost(mu, target[j], p);
    }
    return cache.emplace(w, std::move(costs)).first->second;
  };

  double best_lb = -1.0;
  Point best_point;
  std::size_t best_target = 0;
  auto consider = [&](const Point& w) {
    const auto& costs = evaluate(w);
    const auto it = std::min_element(costs.begin(), costs.end());
    if (*it > best_lb) {
      best_lb = *it;
      best_point = w;
      best_target = static_cast<std::size_t>(it - costs.begin());
    }
  };

  struct Cell {
    std::vector<Point> vertices;
    double upper;
    std::size_t order;
  };
  auto upper_bound = [&](const std::vector<Point>& vertices) {
    double ub = kInfinity;
    for (std::size_t j = 0; j < kt; ++j) {
      double vmax = 0.0;
      for (const auto& v : vertices) vmax = std::max(vmax, evaluate(v)[j]);
      ub = std::min(ub, vmax);
    }
    return ub;
  };
  auto cmp = [](const Cell& a, const Cell& b) {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.order > b.order;
  };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  std::vector<Point> root(ks);
  for (std::size_t k = 0; k < ks; ++k) {
    root[k] = unit_vector(ks, k);
    consider(root[k]);
  }
  std::size_t order = 0;
  queue.push({root, upper_bound(root), order++});

  double global_ub = queue.top().upper;
  std::size_t explored = 0;
  while (!queue.empty()) {
    Cell cell = queue.top();
    global_ub = cell.upper;
    if (cell.upper <= best_lb + options.search_tolerance) break;
    if (explored++ >= options.max_cells) break;
    queue.pop();

    std::size_t ea = 0;
    std::size_t eb = 1;
    double longest = -1.0;
    for (std::size_t a = 0; a < ks; ++a) {
      for (std::size_t b = a + 1; b < ks; ++b) {
        double len = 0.0;
        for (std::size_t k = 0; k < ks; ++k) {
          len += std::abs(cell.vertices[a][k] - cell.vertices[b][k]);
        }
        if (len > longest) {
          longest = len;
          ea = a;
          eb = b;
        }
      }
    }
    Point mid(ks);
    for (std::size_t k = 0; k < ks; ++k) {
      mid[k] = 0.5 * (cell.vertices[ea][k] + cell.vertices[eb][k]);
    }
    consider(mid);
    Cell left{cell.vertices, 0.0, order++};
    Cell right{cell.vertices, 0.0, order++};
    left.vertices[eb] = mid;
    right.vertices[ea] = mid;
    left.upper = upper_bound(left.vertices);
    right.upper = upper_bound(right.vertices);
    queue.push(std::move(left));
    queue.push(std::move(right));
  }
  if (queue.empty()) global_ub = best_lb;

  DirectedDistanceReport report;
  report.value = root_cost(best_lb, p);
  report.source_mixture = best_point;
  report.witness_generator = argmax_lowest(best_point);
  report.witness_mixture = unit_vector(kt, best_target);
  report.bound_gap =
      std::max(0.0, root_cost(std::max(global_ub, best_lb), p) - report.value);
  return report;
}

}  // namespace

HullProjection project_to_hull(const DiscreteMeasure& mu,
                               const AmbiguitySet& target, double p) {
  require_same_space(mu.space(), target.space(), "measure and set");
  require_exponent(p);
  const std::size_t k = target.size();
  if (k == 1) return {transport_cost(mu, target[0], p), {1.0}};

  const auto& space = *mu.space();
  const std::vector<std::size_t> rows = mu.support();
  const std::vector<std::size_t> cols = target.support();
  const std::size_t nr = rows.size();
  const std::size_t nc = cols.size();
  const std::size_t plan_vars = nr * nc;
  const Matrix cost = cost_matrix(space, rows, cols, p);

  LinearProgram lp(plan_vars + k, Sense::kMinimize);
  std::vector<double> objective(plan_vars + k, 0.0);
  std::copy(cost.data().begin(), cost.data().end(), objective.begin());
  lp.set_objective(std::move(objective));
  for (std::size_t a = 0; a < nr; ++a) {
    std::vector<double> row(plan_vars + k, 0.0);
    for (std::size_t b = 0; b < nc; ++b) row[a * nc + b] = 1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, mu[rows[a]]);
  }
  for (std::size_t b = 0; b < nc; ++b) {
    std::vector<double> row(plan_vars + k, 0.0);
    for (std::size_t a = 0; a < nr; ++a) row[a * nc + b] = 1.0;
    for (std::size_t j = 0; j < k; ++j) row[plan_vars + j] = -target[j][cols[b]];
    lp.add_constraint(std::move(row), Relation::kEqual, 0.0);
  }
  {
    std::vector<double> row(plan_vars + k, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[plan_vars + j] = 1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, 1.0);
  }
  const LpSolution sol = solve_lp(lp);
  require_optimal(sol, "hull projection");
  std::vector<double> w(sol.primal.begin() + static_cast<std::ptrdiff_t>(plan_vars),
                        sol.primal.end());
  return {std::max(0.0, sol.value), clean_simplex(std::move(w))};
}

DirectedDistanceReport directed_distance(const AmbiguitySet& source,
                                         const AmbiguitySet& target, double p,
                                         const DistanceOptions& options) {
  require_same_space(source.space(), target.space(), "sets");
  require_exponent(p);
  const std::size_t ks = source.size();
  const std::size_t kt = target.size();
  const bool convex_target = target.convexify() || kt == 1;
  const bool convex_source = source.convexify() && ks > 1;

  if (!convex_target && convex_source) {
    return max_min_over_hull(source, target, p, options);
  }

  std::vector<double> values(ks);
  std::vector<std::vector<double>> mixtures(ks);
  if (convex_target) {
    parallel_for(ks, options.exec, [&](std::size_t i) {
      HullProjection proj = project_to_hull(source[i], target, p);
      values[i] = root_cost(proj.cost, p);
      mixtures[i] = std::move(proj.mixture);
    });
  } else {
    Matrix costs(ks, kt);
    parallel_for(ks * kt, options.exec, [&](std::size_t idx) {
      const std::size_t i = idx / kt;
      const std::size_t j = idx % kt;
      costs(i, j) = transport_cost(source[i], target[j], p);
    });
    for (std::size_t i = 0; i < ks; ++i) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < kt; ++j) {
        if (costs(i, j) < costs(i, best)) best = j;
      }
      values[i] = root_cost(costs(i, best), p);
      mixtures[i] = unit_vector(kt, best);
    }
  }

  DirectedDistanceReport report;
  report.witness_generator = argmax_lowest(values);
  report.value = values[report.witness_generator];
  report.source_mixture = unit_vector(ks, report.witness_generator);
  report.witness_mixture = std::move(mixtures[report.witness_generator]);
  return report;
}

GeneralizedDistanceReport generalized_wasserstein(
    const AmbiguitySet& p1, const AmbiguitySet& p2, double p, bool with_dual,
    const DistanceOptions& options) {
  GeneralizedDistanceReport report;
  report.p = p;
  report.forward = directed_distance(p1, p2, p, options);
  report.backward = directed_distance(p2, p1, p, options);
  report.value = std::max(report.forward.value, report.backward.value);
  if (with_dual && p == 1.0) {
    report.dual_value = dual_distance(p1, p2, options.exec);
  }
  return report;
}

LipschitzGap directed_dual(const AmbiguitySet& source,
                           const AmbiguitySet& target, Exec exec) {
  require_same_space(source.space(), target.space(), "sets");
  const auto& space = *source.space();
  const std::size_t ks = source.size();
  const std::size_t kt = target.size();
  const std::vector<std::size_t> target_support = target.support();

  std::vector<double> values(ks, 0.0);
  std::vector<std::vector<double>> phis(ks);
  parallel_for(ks, exec, [&](std::size_t i) {
    const DiscreteMeasure& mu = source[i];
    const std::vector<std::size_t> anchors =
        merge_supports(mu.support(), target_support);
    const std::size_t s = anchors.size();
    // Variables: phi on the anchors, then the epigraph variable t.
    LinearProgram lp(s + 1, Sense::kMaximize);
    lp.set_objective_coefficient(s, 1.0);
    lp.set_bounds(0, 0.0, 0.0);
    for (std::size_t a = 1; a < s; ++a) lp.set_bounds(a, -kInfinity, kInfinity);
    lp.set_bounds(s, -kInfinity, kInfinity);
    for (std::size_t j = 0; j < kt; ++j) {
      std::vector<double> row(s + 1, 0.0);
      for (std::size_t a = 0; a < s; ++a) {
        row[a] = -(mu[anchors[a]] - target[j][anchors[a]]);
      }
      row[s] = 1.0;
      lp.add_constraint(std::move(row), Relation::kLessEqual, 0.0);
    }
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        if (a == b) continue;
        std::vector<double> row(s + 1, 0.0);
        row[a] = 1.0;
        row[b] = -1.0;
        lp.add_constraint(std::move(row), Relation::kLessEqual,
                          space(anchors[a], anchors[b]));
      }
    }
    const LpSolution sol = solve_lp(lp);
    require_optimal(sol, "Lipschitz dual");
    values[i] = sol.value <= kZeroCost ? 0.0 : sol.value;
    std::vector<double> on_anchors(sol.primal.begin(),
                                   sol.primal.begin() + static_cast<std::ptrdiff_t>(s));
    phis[i] = lipschitz_extension(space, anchors, on_anchors);
    const double shift = phis[i][0];
    for (double& v : phis[i]) v -= shift;
  });

  const std::size_t best = argmax_lowest(values);
  return {values[best], best, TestFunction(source.space(), std::move(phis[best]))};
}

double dual_distance(const AmbiguitySet& p1, const AmbiguitySet& p2,
                     Exec exec) {
  return std::max(directed_dual(p1, p2, exec).value,
                  directed_dual(p2, p1, exec).value);
}

MembershipResult hull_membership(const DiscreteMeasure& mu_star,
                                 const AmbiguitySet& set) {
  require_same_space(mu_star.space(), set.space(), "measure and set");
  const AmbiguitySet hull = set.with_convexify(true);
  HullProjection proj = project_to_hull(mu_star, hull, 1.0);
  MembershipResult out;
  out.gap = root_cost(proj.cost, 1.0);
  out.mixture = std::move(proj.mixture);
  const AmbiguitySet single(set.space(), {mu_star}, true);
  out.dual_gap = directed_dual(single, hull, Exec::kSerial).value;
  if (std::abs(out.gap - out.dual_gap) > kDistanceTolerance) {
    fail(ErrorCode::kNumericalBreakdown,
         "minimax sides disagree: transport " + std::to_string(out.gap) +
             " vs Lipschitz " + std::to_string(out.dual_gap));
  }
  out.member = out.gap <= kMembershipTolerance;
  return out;
}

double hull_residual(const DiscreteMeasure& mu, const AmbiguitySet& set) {
  require_same_space(mu.space(), set.space(), "measure and set");
  const std::vector<std::size_t> anchors =
      merge_supports(mu.support(), set.support());
  const std::size_t k = set.size();
  const std::size_t s = anchors.size();
  // Variables: w (k), positive residuals (s), negative residuals (s).
  LinearProgram lp(k + 2 * s, Sense::kMinimize);
  for (std::size_t a = 0; a < 2 * s; ++a) lp.set_objective_coefficient(k + a, 1.0);
  for (std::size_t a = 0; a < s; ++a) {
    std::vector<double> row(k + 2 * s, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[j] = set[j][anchors[a]];
    row[k + a] = 1.0;
    row[k + s + a] = -1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, mu[anchors[a]]);
  }
  std::vector<double> row(k + 2 * s, 0.0);
  for (std::size_t j = 0; j < k; ++j) row[j] = 1.0;
  lp.add_constraint(std::move(row), Relation::kEqual, 1.0);
  const LpSolution sol = solve_lp(lp);
  require_optimal(sol, "hull residual");
  return std::max(0.0, sol.value);
}

bool hull_equality(const AmbiguitySet& p1, const AmbiguitySet& p2) {
  require_same_space(p1.space(), p2.space(), "sets");
  for (const auto& mu : p1.generators()) {
    if (hull_residual(mu, p2) > kHullEqualityTolerance) return false;
  }
  for (const auto& nu : p2.generators()) {
    if (hull_residual(nu, p1) > kHullEqualityTolerance) return false;
  }
  return true;
}

}  // namespace ambiset
