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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <optional>

#include "support.hpp"

namespace ambiset {
namespace {

void expect_certified(const LpSolution& s, double tol = 1e-8) {
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  const double scale = std::max(1.0, std::abs(s.value));
  EXPECT_LE(s.certificate.primal_residual, tol * scale);
  EXPECT_LE(s.certificate.dual_residual, tol * scale);
  EXPECT_LE(s.certificate.complementarity, tol * scale);
  EXPECT_LE(s.certificate.duality_gap, tol * scale);
}

TEST(SolveLp, OneVariableBox) {
  LinearProgram lp(1, Sense::kMaximize);
  lp.set_objective({1.0});
  lp.add_constraint({1.0}, Relation::kLessEqual, 1.0);
  const auto s = solve_lp(lp);
  expect_certified(s);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
  EXPECT_NEAR(s.dual[0], 1.0, 1e-12);
}

TEST(SolveLp, SimplexFace) {
  LinearProgram lp(2, Sense::kMaximize);
  lp.set_objective({1.0, 1.0});
  lp.add_constraint({1.0, 1.0}, Relation::kLessEqual, 1.0);
  const auto s = solve_lp(lp);
  expect_certified(s);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
  EXPECT_NEAR(s.primal[0] + s.primal[1], 1.0, 1e-12);
}

TEST(SolveLp, InfeasibleAndUnbounded) {
  LinearProgram bad(1);
  bad.set_objective({1.0});
  bad.add_constraint({1.0}, Relation::kGreaterEqual, 2.0);
  bad.add_constraint({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp(bad).status, LpStatus::kInfeasible);

  LinearProgram open(2, Sense::kMaximize);
  open.set_objective({1.0, 0.0});
  open.add_constraint({-1.0, 1.0}, Relation::kLessEqual, 1.0);
  const auto s = solve_lp(open);
  EXPECT_EQ(s.status, LpStatus::kUnbounded);
  EXPECT_EQ(s.value, kInfinity);
}

TEST(SolveLp, FreeFixedAndUpperBoundedVariables) {
  // min x - y  s.t.  x + y = 1,  x free,  -2 <= y <= 3,  z fixed at 4.
  LinearProgram lp(3);
  lp.set_objective({1.0, -1.0, 1.0});
  lp.set_bounds(0, -kInfinity, kInfinity);
  lp.set_bounds(1, -2.0, 3.0);
  lp.set_bounds(2, 4.0, 4.0);
  lp.add_constraint({1.0, 1.0, 0.0}, Relation::kEqual, 1.0);
  const auto s = solve_lp(lp);
  expect_certified(s);
  EXPECT_NEAR(s.primal[0], -2.0, 1e-12);
  EXPECT_NEAR(s.primal[1], 3.0, 1e-12);
  EXPECT_NEAR(s.primal[2], 4.0, 1e-12);
  EXPECT_NEAR(s.value, -1.0, 1e-12);
}

TEST(SolveLp, NegativeRightHandSides) {
  // min x + y  s.t.  -x - y <= -2,  x - y >= -1.
  LinearProgram lp(2);
  lp.set_objective({1.0, 1.0});
  lp.add_constraint({-1.0, -1.0}, Relation::kLessEqual, -2.0);
  lp.add_constraint({1.0, -1.0}, Relation::kGreaterEqual, -1.0);
  const auto s = solve_lp(lp);
  expect_certified(s);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(SolveLp, DegenerateCyclingInstance) {
  // Beale's instance cycles under textbook Dantzig pivoting.
  LinearProgram lp(4);
  lp.set_objective({-0.75, 150.0, -0.02, 6.0});
  lp.add_constraint({0.25, -60.0, -0.04, 9.0}, Relation::kLessEqual, 0.0);
  lp.add_constraint({0.5, -90.0, -0.02, 3.0}, Relation::kLessEqual, 0.0);
  lp.add_constraint({0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0);
  for (PivotRule rule : {PivotRule::kDantzig, PivotRule::kBland}) {
    LpOptions o;
    o.start_rule = rule;
    const auto s = solve_lp(lp, o);
    expect_certified(s);
    EXPECT_NEAR(s.value, -0.05, 1e-12);
  }
}

TEST(SolveLp, RedundantEqualities) {
  LinearProgram lp(3);
  lp.set_objective({1.0, 2.0, 3.0});
  lp.add_constraint({1.0, 1.0, 1.0}, Relation::kEqual, 1.0);
  lp.add_constraint({2.0, 2.0, 2.0}, Relation::kEqual, 2.0);
  lp.add_constraint({0.0, 1.0, 1.0}, Relation::kGreaterEqual, 0.5);
  const auto s = solve_lp(lp);
  expect_certified(s);
  EXPECT_NEAR(s.value, 1.5, 1e-12);
}

TEST(SolveLp, DimensionMismatch) {
  LinearProgram lp(2);
  EXPECT_THROW(lp.add_constraint({1.0}, Relation::kLessEqual, 1.0), Error);
  EXPECT_THROW(lp.set_objective({1.0}), Error);
  EXPECT_THROW(lp.set_bounds(0, 2.0, 1.0), Error);
}

// Vertex enumeration over  A x (<=, =, >=) b,  x >= 0.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-10) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

double enumerate_vertices(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& c : lp.constraints()) {
    rows.push_back(c.coefficients);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const std::size_t total = rows.size();
  const double sign = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  double best = kInfinity;
  std::vector<std::size_t> pick(n);
  // Iterate over n-subsets of the hyperplanes.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (std::size_t k : pick) {
        a.push_back(rows[k]);
        b.push_back(rhs[k]);
      }
      const auto x = solve_square(a, b);
      if (!x) return;
      for (double v : *x) {
        if (v < -1e-9) return;
      }
      for (const auto& c : lp.constraints()) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += c.coefficients[j] * (*x)[j];
        if (c.relation == Relation::kLessEqual && lhs > c.rhs + 1e-9) return;
        if (c.relation == Relation::kGreaterEqual && lhs < c.rhs - 1e-9) return;
        if (c.relation == Relation::kEqual && std::abs(lhs - c.rhs) > 1e-9) return;
      }
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.objective()[j] * (*x)[j];
      best = std::min(best, sign * obj);
      return;
    }
    for (std::size_t k = start; k + (n - depth) <= total; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return sign * best;
}

TEST(SolveLp, MatchesVertexEnumeration) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = gen.between(1, 6);
    const std::size_t m = gen.between(1, 6);
    LinearProgram lp(n, gen.coin() ? Sense::kMaximize : Sense::kMinimize);
    lp.set_objective(gen.values(n, -5, 5));
    std::vector<double> x0(n);
    for (double& v : x0) v = gen.coin() ? 0.0 : gen.uniform(0, 2);
    for (std::size_t r = 0; r < m; ++r) {
      auto a = gen.values(n, -3, 3);
      if (gen.below(4) == 0) a[gen.below(n)] = 0.0;
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += a[j] * x0[j];
      const std::size_t kind = gen.below(5);
      if (kind == 0) {
        lp.add_constraint(std::move(a), Relation::kEqual, lhs);
      } else if (kind == 1) {
        lp.add_constraint(std::move(a), Relation::kGreaterEqual, lhs - gen.uniform(0, 1));
      } else {
        lp.add_constraint(std::move(a), Relation::kLessEqual,
                          lhs + (gen.coin() ? 0.0 : gen.uniform(0, 1)));
      }
    }
    double total = 0.0;
    for (double v : x0) total += v;
    lp.add_constraint(std::vector<double>(n, 1.0), Relation::kLessEqual, total + 1.0);

    const auto s = solve_lp(lp);
    expect_certified(s);
    EXPECT_NEAR(s.value, enumerate_vertices(lp), 1e-8) << "trial " << trial;
    LpOptions bland;
    bland.start_rule = PivotRule::kBland;
    EXPECT_NEAR(solve_lp(lp, bland).value, s.value, 1e-8);
  }
}

TEST(SolveLp, DualsAreRightHandSideSensitivities) {
  testing::Gen gen(32);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const std::size_t n = gen.between(2, 5);
    LinearProgram lp(n, Sense::kMaximize);
    lp.set_objective(gen.values(n, 0.1, 3));
    for (std::size_t r = 0; r < 3; ++r) {
      lp.add_constraint(gen.values(n, 0.1, 2), Relation::kLessEqual, gen.uniform(1, 3));
    }
    const auto s = solve_lp(lp);
    expect_certified(s);
    // Only probe nondegenerate optima, where the multiplier is unique.
    const double h = 1e-6;
    bool stable = true;
    std::vector<double> slopes;
    for (std::size_t r = 0; r < 3; ++r) {
      const auto& c = lp.constraints();
      LinearProgram up(n, Sense::kMaximize);
      LinearProgram down(n, Sense::kMaximize);
      up.set_objective(lp.objective());
      down.set_objective(lp.objective());
      for (std::size_t k = 0; k < 3; ++k) {
        up.add_constraint(c[k].coefficients, c[k].relation, c[k].rhs + (k == r ? h : 0.0));
        down.add_constraint(c[k].coefficients, c[k].relation, c[k].rhs - (k == r ? h : 0.0));
      }
      const double right = (solve_lp(up).value - s.value) / h;
      const double left = (s.value - solve_lp(down).value) / h;
      if (std::abs(right - left) > 1e-5) stable = false;
      slopes.push_back(right);
    }
    if (!stable) continue;
    ++checked;
    for (std::size_t r = 0; r < 3; ++r) EXPECT_NEAR(s.dual[r], slopes[r], 1e-4);
  }
  EXPECT_GE(checked, 10);
}

TEST(Certify, FlagsBadPairs) {
  LinearProgram lp(1, Sense::kMaximize);
  lp.set_objective({1.0});
  lp.add_constraint({1.0}, Relation::kLessEqual, 1.0);
  const std::vector<double> x{2.0}, y{1.0};
  EXPECT_NEAR(certify(lp, x, y).primal_residual, 1.0, 1e-12);
  const std::vector<double> x1{1.0}, y0{0.0};
  EXPECT_GT(certify(lp, x1, y0).dual_residual + certify(lp, x1, y0).duality_gap, 0.5);
}

}  // namespace
}  // namespace ambiset
