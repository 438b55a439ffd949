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

#include "ambiset/transport.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace ambiset {

double root_cost(double cost, double p) {
  if (cost <= kZeroCost) return 0.0;
  if (p == 1.0) return cost;
  if (p == 2.0) return std::sqrt(cost);
  return std::pow(cost, 1.0 / p);
}

Matrix cost_matrix(const FiniteMetricSpace& space,
                   const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols, double p) {
  Matrix c(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double d = space(rows[a], cols[b]);
      c(a, b) = p == 1.0 ? d : (p == 2.0 ? d * d : std::pow(d, p));
    }
  }
  return c;
}

std::vector<std::size_t> merge_supports(const std::vector<std::size_t>& a,
                                        const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<double> lipschitz_extension(const FiniteMetricSpace& space,
                                        const std::vector<std::size_t>& anchors,
                                        const std::vector<double>& values) {
  std::vector<double> phi(space.size(), kInfinity);
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      phi[x] = std::min(phi[x], values[a] + space(anchors[a], x));
    }
  }
  return phi;
}

namespace {

struct RestrictedPlan {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  TransportSolution solution;
};

RestrictedPlan solve_restricted(const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu, double p) {
  require_same_space(mu.space(), nu.space(), "measures");
  require_exponent(p);
  RestrictedPlan out{mu.support(), nu.support(), {}};
  std::vector<double> a(out.rows.size());
  std::vector<double> b(out.cols.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = mu[out.rows[k]];
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = nu[out.cols[k]];
  out.solution =
      solve_transport(cost_matrix(*mu.space(), out.rows, out.cols, p), a, b);
  return out;
}

}  // namespace

double transport_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      double p) {
  return solve_restricted(mu, nu, p).solution.value;
}

WassersteinResult wasserstein(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, double p) {
  const RestrictedPlan r = solve_restricted(mu, nu, p);
  const std::size_t n = mu.size();
  TransportPlan plan{Matrix(n, n, 0.0), p, root_cost(r.solution.value, p)};
  for (std::size_t a = 0; a < r.rows.size(); ++a) {
    for (std::size_t b = 0; b < r.cols.size(); ++b) {
      plan.plan(r.rows[a], r.cols[b]) = r.solution.plan(a, b);
    }
  }
  return {plan.value, std::move(plan)};
}

KrDualResult kr_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_space(mu.space(), nu.space(), "measures");
  const auto& space = *mu.space();
  const std::vector<std::size_t> anchors =
      merge_supports(mu.support(), nu.support());
  const std::size_t s = anchors.size();

  std::vector<double> values(s, 0.0);
  double value = 0.0;
  if (s > 1) {
    LinearProgram lp(s, Sense::kMaximize);
    std::vector<double> objective(s);
    for (std::size_t k = 0; k < s; ++k) {
      objective[k] = mu[anchors[k]] - nu[anchors[k]];
    }
    lp.set_objective(std::move(objective));
    lp.set_bounds(0, 0.0, 0.0);
    for (std::size_t k = 1; k < s; ++k) lp.set_bounds(k, -kInfinity, kInfinity);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        if (a == b) continue;
        std::vector<double> row(s, 0.0);
        row[a] = 1.0;
        row[b] = -1.0;
        lp.add_constraint(std::move(row), Relation::kLessEqual,
                          space(anchors[a], anchors[b]));
      }
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) {
      fail(ErrorCode::kNumericalBreakdown,
           std::string("Kantorovich dual LP is ") + to_string(sol.status));
    }
    values = sol.primal;
    value = sol.value <= kZeroCost ? 0.0 : sol.value;
  }

  std::vector<double> phi = lipschitz_extension(space, anchors, values);
  const double shift = phi[0];
  for (double& v : phi) v -= shift;
  return {value, KantorovichPotential{TestFunction(mu.space(), std::move(phi))}};
}

Matrix pairwise_wasserstein(const std::vector<DiscreteMeasure>& a,
                            const std::vector<DiscreteMeasure>& b, double p,
                            Exec exec) {
  require_exponent(p);
  Matrix out(a.size(), b.size());
  parallel_for(a.size() * b.size(), exec, [&](std::size_t k) {
    const std::size_t i = k / b.size();
    const std::size_t j = k % b.size();
    out(i, j) = root_cost(transport_cost(a[i], b[j], p), p);
  });
  return out;
}

}  // namespace ambiset
