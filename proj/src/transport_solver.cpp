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

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <utility>

#include "ambiset/lp.hpp"

namespace ambiset {

namespace {

constexpr double kPlanCleanup = 1e-12;

void check_marginal(std::span<const double> marginal, const char* name) {
  double total = 0.0;
  for (double v : marginal) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorCode::kMarginalMismatch,
           std::string(name) + " marginal has a negative or non-finite entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kMarginalTolerance) {
    fail(ErrorCode::kMarginalMismatch,
         std::string(name) + " marginal sums to " + std::to_string(total));
  }
}

// Spanning tree of the bipartite graph: nodes [0, rows) are sources,
// [rows, rows + cols) are sinks.
class BasisTree {
 public:
  BasisTree(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), adj_(rows + cols), basic_(rows, cols, 0.0) {}

  void add(std::size_t i, std::size_t j) {
    adj_[i].push_back(rows_ + j);
    adj_[rows_ + j].push_back(i);
    basic_(i, j) = 1.0;
  }

  void remove(std::size_t i, std::size_t j) {
    auto drop = [](std::vector<std::size_t>& v, std::size_t x) {
      v.erase(std::find(v.begin(), v.end(), x));
    };
    drop(adj_[i], rows_ + j);
    drop(adj_[rows_ + j], i);
    basic_(i, j) = 0.0;
  }

  bool is_basic(std::size_t i, std::size_t j) const {
    return basic_(i, j) != 0.0;
  }

  // Potentials with f[0] = 0 and f_i + g_j = cost_ij on tree arcs.
  void potentials(const Matrix& cost, std::vector<double>& f,
                  std::vector<double>& g) const {
    const std::size_t total = rows_ + cols_;
    std::vector<double> pot(total, 0.0);
    std::vector<char> seen(total, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t next : adj_[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        if (node < rows_) {
          pot[next] = cost(node, next - rows_) - pot[node];
        } else {
          pot[next] = cost(next, node - rows_) - pot[node];
        }
        queue.push_back(next);
      }
    }
    f.assign(pot.begin(), pot.begin() + static_cast<std::ptrdiff_t>(rows_));
    g.assign(pot.begin() + static_cast<std::ptrdiff_t>(rows_), pot.end());
  }

  // Flows determined by the tree and the given marginals, by leaf peeling.
  Matrix flows(std::span<const double> supply,
               std::span<const double> demand) const {
    const std::size_t total = rows_ + cols_;
    std::vector<double> remaining(total);
    std::copy(supply.begin(), supply.end(), remaining.begin());
    std::copy(demand.begin(), demand.end(),
              remaining.begin() + static_cast<std::ptrdiff_t>(rows_));
    std::vector<std::size_t> degree(total);
    for (std::size_t v = 0; v < total; ++v) degree[v] = adj_[v].size();
    std::vector<char> done(total, 0);
    std::deque<std::size_t> leaves;
    for (std::size_t v = 0; v < total; ++v) {
      if (degree[v] == 1) leaves.push_back(v);
    }
    Matrix x(rows_, cols_, 0.0);
    while (!leaves.empty()) {
      const std::size_t leaf = leaves.front();
      leaves.pop_front();
      if (done[leaf] || degree[leaf] != 1) continue;
      std::size_t other = total;
      for (std::size_t nb : adj_[leaf]) {
        if (!done[nb]) {
          other = nb;
          break;
        }
      }
      const double amount = remaining[leaf];
      const std::size_t i = leaf < rows_ ? leaf : other;
      const std::size_t j = (leaf < rows_ ? other : leaf) - rows_;
      x(i, j) = amount;
      remaining[other] -= amount;
      remaining[leaf] = 0.0;
      done[leaf] = 1;
      degree[leaf] = 0;
      if (--degree[other] == 1) leaves.push_back(other);
    }
    return x;
  }

  // Tree path from source node `from_row` to sink node `to_col`, as arcs
  // (i, j) in walk order starting at the sink end.
  std::vector<std::pair<std::size_t, std::size_t>> path(
      std::size_t from_row, std::size_t to_col) const {
    const std::size_t total = rows_ + cols_;
    std::vector<std::size_t> parent(total, total);
    std::deque<std::size_t> queue{from_row};
    parent[from_row] = from_row;
    const std::size_t target = rows_ + to_col;
    while (!queue.empty() && parent[target] == total) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t next : adj_[node]) {
        if (parent[next] != total) continue;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t node = target; node != from_row; node = parent[node]) {
      const std::size_t prev = parent[node];
      if (node >= rows_) {
        arcs.emplace_back(prev, node - rows_);
      } else {
        arcs.emplace_back(node, prev - rows_);
      }
    }
    return arcs;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<std::size_t>> adj_;
  Matrix basic_;
};

}  // namespace

TransportSolution solve_transport(const Matrix& cost,
                                  std::span<const double> row_marginal,
                                  std::span<const double> col_marginal) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n == 0 || m == 0 || row_marginal.size() != n ||
      col_marginal.size() != m) {
    fail(ErrorCode::kDimensionMismatch, "cost matrix and marginals disagree");
  }
  double cscale = 1.0;
  for (double c : cost.data()) {
    if (!std::isfinite(c)) fail(ErrorCode::kNonFiniteValue, "transport cost");
    cscale = std::max(cscale, std::abs(c));
  }
  check_marginal(row_marginal, "row");
  check_marginal(col_marginal, "column");

  // Orden's perturbation: every basic solution of the perturbed problem is
  // nondegenerate, so each pivot strictly improves and no cycling occurs.
  const double eps = 1e-11 / static_cast<double>(n + 1);
  std::vector<double> supply(row_marginal.begin(), row_marginal.end());
  std::vector<double> demand(col_marginal.begin(), col_marginal.end());
  for (double& s : supply) s += eps;
  demand[m - 1] += static_cast<double>(n) * eps;

  BasisTree tree(n, m);
  {
    // Northwest corner start.
    std::vector<double> a = supply;
    std::vector<double> b = demand;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      tree.add(i, j);
      if (i == n - 1 && j == m - 1) break;
      const double amount = std::min(a[i], b[j]);
      a[i] -= amount;
      b[j] -= amount;
      if (j == m - 1 || (i < n - 1 && a[i] <= b[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  TransportSolution sol;
  Matrix x = tree.flows(supply, demand);
  std::vector<double> f;
  std::vector<double> g;
  const double dtol = 1e-12 * cscale;
  const std::size_t max_iterations = 20 * n * m + 1000;
  while (true) {
    tree.potentials(cost, f, g);
    std::optional<std::pair<std::size_t, std::size_t>> enter;
    double best = -dtol;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (tree.is_basic(i, j)) continue;
        const double reduced = cost(i, j) - f[i] - g[j];
        if (reduced < best) {
          best = reduced;
          enter = std::make_pair(i, j);
        }
      }
    }
    if (!enter) break;
    if (++sol.iterations > max_iterations) {
      fail(ErrorCode::kNumericalBreakdown,
           "network simplex exceeded its iteration limit");
    }
    const auto [ei, ej] = *enter;
    // The cycle closes entering arc (ei, ej) with the tree path ej -> ei;
    // arcs on that path alternate -, +, -, ... starting at the sink end.
    const auto arcs = tree.path(ei, ej);
    std::optional<std::size_t> leave;
    for (std::size_t k = 0; k < arcs.size(); k += 2) {
      const auto [i, j] = arcs[k];
      if (!leave || x(i, j) < x(arcs[*leave].first, arcs[*leave].second)) {
        leave = k;
      }
    }
    const auto [li, lj] = arcs[*leave];
    tree.remove(li, lj);
    tree.add(ei, ej);
    x = tree.flows(supply, demand);
  }

  // Undo the perturbation on the optimal tree and scrub rounding dust.
  x = tree.flows(row_marginal, col_marginal);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (x(i, j) < kPlanCleanup) x(i, j) = 0.0;
    }
  }
  tree.potentials(cost, f, g);

  double value = 0.0;
  double violation = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      value += cost(i, j) * x(i, j);
      violation = std::max(violation, f[i] + g[j] - cost(i, j));
    }
  }
  sol.value = value;
  sol.plan = std::move(x);
  sol.row_potential = std::move(f);
  sol.col_potential = std::move(g);
  sol.reduced_cost_violation = violation;
  if (violation > 1e-9 * cscale) {
    fail(ErrorCode::kNumericalBreakdown,
         "transport potentials violate dual feasibility by " +
             std::to_string(violation));
  }
  return sol;
}

LpSolution solve_transport_lp(const Matrix& cost,
                              std::span<const double> row_marginal,
                              std::span<const double> col_marginal,
                              double tolerance) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (row_marginal.size() != n || col_marginal.size() != m) {
    fail(ErrorCode::kDimensionMismatch, "cost matrix and marginals disagree");
  }
  check_marginal(row_marginal, "row");
  check_marginal(col_marginal, "column");
  LinearProgram lp(n * m, Sense::kMinimize);
  std::vector<double> objective(cost.data());
  lp.set_objective(std::move(objective));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n * m, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = 1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, row_marginal[i]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i * m + j] = 1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, col_marginal[j]);
  }
  return solve_lp(lp, tolerance);
}

}  // namespace ambiset
