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

#include <gtest/gtest.h>

#include "ambiset/lp.hpp"
#include "support.hpp"

namespace ambiset {
namespace {

SpacePtr line(std::vector<double> x) { return share(line_space(x)); }

TEST(Measure, NormalizationRules) {
  const auto s = line({0, 1});
  const DiscreteMeasure ok(s, {0.5, 0.5 + 5e-10});
  EXPECT_DOUBLE_EQ(ok[0] + ok[1], 1.0);
  EXPECT_THROW(DiscreteMeasure(s, {0.5, 0.6}), Error);
  EXPECT_THROW(DiscreteMeasure(s, {1.5, -0.5}), Error);
  EXPECT_THROW(DiscreteMeasure(s, {1.0}), Error);
  EXPECT_THROW(DiscreteMeasure(s, {std::nan(""), 1.0}), Error);
  EXPECT_THROW(AmbiguitySet(s, {}), Error);
}

TEST(Expectation, Examples) {
  const auto s = line({0, 1, 2});
  const TestFunction phi(s, {3.0, -1.0, 7.0});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(expectation(DiscreteMeasure::dirac(s, i), phi), phi[i]);
  }
  const auto two = line({0, 1});
  EXPECT_DOUBLE_EQ(expectation(DiscreteMeasure(two, {0.5, 0.5}), TestFunction(two, {0, 1})), 0.5);
  EXPECT_THROW(expectation(DiscreteMeasure::dirac(two, 0), phi), Error);
}

TEST(Expectation, MatchesCompensatedSum) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.space(gen.between(1, 8));
    const auto mu = gen.measure(s);
    const TestFunction phi(s, gen.values(s->size(), -100, 100));
    EXPECT_NEAR(expectation(mu, phi), testing::kahan_dot(mu.weights(), phi.values()), 1e-12);
  }
}

TEST(SublinearExpectation, Examples) {
  const auto s = line({0, 1});
  const TestFunction phi(s, {0, 1});
  const DiscreteMeasure mu(s, {0.3, 0.7});
  EXPECT_DOUBLE_EQ(sublinear_expectation(AmbiguitySet(s, {mu}), phi), 0.7);
  const AmbiguitySet both(s, {DiscreteMeasure::dirac(s, 0), DiscreteMeasure::dirac(s, 1)});
  EXPECT_EQ(sublinear_expectation(both, phi), 1.0);
  EXPECT_EQ(sublinear_expectation(both.with_convexify(false), phi), 1.0);
}

TEST(SublinearExpectation, WitnessTieBreaksLow) {
  const auto s = line({0, 1});
  const AmbiguitySet set(s, {DiscreteMeasure::dirac(s, 0), DiscreteMeasure::dirac(s, 1),
                             DiscreteMeasure::dirac(s, 0)});
  const auto w = sublinear_expectation_witness(set, TestFunction(s, {2, 2}));
  EXPECT_EQ(w.generator, 0u);
}

TEST(SublinearExpectation, HullSamplesNeverExceed) {
  testing::Gen gen(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = gen.space(gen.between(2, 8));
    const auto set = gen.set(s, 4);
    const TestFunction phi(s, gen.values(s->size()));
    double brute = -kInfinity;
    for (const auto& g : set.generators()) brute = std::max(brute, expectation(g, phi));
    const double v = sublinear_expectation(set, phi);
    EXPECT_EQ(v, brute);
    for (int k = 0; k < 10000; ++k) {
      const auto w = gen.simplex_point(set.size());
      EXPECT_LE(expectation(mixture(set.generators(), w), phi), v + 1e-12);
    }
  }
}

TEST(SublinearExpectation, SublinearityProperties) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.space(gen.between(1, 8));
    const auto set = gen.set(s, gen.between(1, 4));
    const auto a = gen.values(s->size());
    auto b = gen.values(s->size());
    const TestFunction phi(s, a);
    const TestFunction psi(s, b);
    std::vector<double> sum(a.size()), bigger(a.size()), scaled(a.size());
    const double lambda = gen.uniform(0.0, 5.0);
    const double c = gen.uniform(-3, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum[i] = a[i] + b[i];
      bigger[i] = a[i] + gen.uniform(0, 1);
      scaled[i] = lambda * a[i];
    }
    const double ephi = sublinear_expectation(set, phi);
    EXPECT_GE(sublinear_expectation(set, TestFunction(s, bigger)), ephi - 1e-12);
    EXPECT_NEAR(sublinear_expectation(set, TestFunction(s, std::vector<double>(a.size(), c))), c, 1e-12);
    EXPECT_LE(sublinear_expectation(set, TestFunction(s, sum)),
              ephi + sublinear_expectation(set, psi) + 1e-12);
    EXPECT_NEAR(sublinear_expectation(set, TestFunction(s, scaled)), lambda * ephi, 1e-11);
  }
}

TEST(Probability, Examples) {
  const auto s = line({0, 1});
  const AmbiguitySet set(s, {DiscreteMeasure::dirac(s, 0), DiscreteMeasure(s, {0.5, 0.5})});
  const std::vector<std::size_t> all{0, 1}, none{}, zero{0};
  EXPECT_EQ(upper_probability(set, all), 1.0);
  EXPECT_EQ(upper_probability(set, none), 0.0);
  EXPECT_EQ(upper_probability(set, zero), 1.0);
  EXPECT_EQ(lower_probability(set, zero), 0.5);
  const std::vector<std::size_t> bad{2};
  EXPECT_THROW(upper_probability(set, bad), Error);
}

TEST(Probability, ConjugacyIsExact) {
  testing::Gen gen(24);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.space(gen.between(1, 8));
    const auto set = gen.set(s, gen.between(1, 4));
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (gen.coin()) a.push_back(i);
    }
    const auto ac = complement(*s, a);
    EXPECT_NEAR(upper_probability(set, a) + lower_probability(set, ac), 1.0, 1e-15);
  }
}

TEST(Lipschitz, Examples) {
  const auto s = line({0, 1, 2});
  EXPECT_EQ(lipschitz_constant(TestFunction(s, {4, 4, 4})), 0.0);
  EXPECT_EQ(lipschitz_constant(TestFunction(s, {0, 1, 2})), 1.0);
  EXPECT_EQ(lipschitz_constant(TestFunction(line({5}), {3})), 0.0);
}

TEST(Lipschitz, MatchesPairwiseBruteForce) {
  testing::Gen gen(25);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.space(gen.between(2, 8));
    const auto v = gen.values(s->size());
    double brute = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        brute = std::max(brute, std::abs(v[j] - v[i]) / (*s)(j, i));
      }
    }
    EXPECT_NEAR(lipschitz_constant(TestFunction(s, v)), brute, 1e-12 * std::max(1.0, brute));
  }
}

TEST(Lipschitz, UnitBallBoundsExpectationGaps) {
  testing::Gen gen(26);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.space(gen.between(2, 8));
    auto v = gen.values(s->size());
    const double lip = lipschitz_constant(TestFunction(s, v));
    if (lip > 0) {
      for (double& x : v) x /= lip;
    }
    const TestFunction phi(s, v);
    ASSERT_LE(lipschitz_constant(phi), 1.0 + 1e-12);
    const auto mu = gen.measure(s);
    const auto nu = gen.measure(s);
    EXPECT_LE(std::abs(expectation(mu, phi) - expectation(nu, phi)), s->diameter() + 1e-12);
  }
}

TEST(Tail, Examples) {
  const auto s = line({0, 1, 2, 3, 4, 5});
  const AmbiguitySet at3(s, {DiscreteMeasure::dirac(s, 3)});
  EXPECT_EQ(tail_functional(at3, BasePoint{0}, 2.0, 6.0), 0.0);
  EXPECT_EQ(tail_functional(at3, BasePoint{0}, 2.0, 0.0), 9.0);
  for (double k : {0.5, 1.0, 2.0, 3.0}) {
    EXPECT_EQ(tail_functional(at3, BasePoint{0}, 1.5, k), std::pow(3.0, 1.5));
  }
  EXPECT_THROW(tail_functional(at3, BasePoint{0}, 0.5, 1.0), Error);
  EXPECT_THROW(tail_functional(at3, BasePoint{9}, 1.0, 1.0), Error);
}

TEST(Tail, NonincreasingInThresholdAndVanishes) {
  testing::Gen gen(27);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.space(gen.between(1, 8));
    const auto set = gen.set(s, gen.between(1, 4));
    const BasePoint w0{gen.below(s->size())};
    const double p = gen.uniform(1.0, 3.0);
    double prev = kInfinity;
    for (double k = 0.0; k <= s->radius_from(w0.index) + 0.5; k += 0.25) {
      const double t = tail_functional(set, w0, p, k);
      EXPECT_LE(t, prev);
      prev = t;
    }
    EXPECT_EQ(tail_functional(set, w0, p, s->radius_from(w0.index) * 1.0001 + 1e-9), 0.0);
  }
}

TEST(Mixture, CombinesWeights) {
  const auto s = line({0, 1});
  const std::vector<DiscreteMeasure> g{DiscreteMeasure::dirac(s, 0), DiscreteMeasure::dirac(s, 1)};
  const std::vector<double> w{0.25, 0.75};
  const auto m = mixture(g, w);
  EXPECT_DOUBLE_EQ(m[0], 0.25);
  EXPECT_DOUBLE_EQ(m[1], 0.75);
  EXPECT_EQ(m.support(), (std::vector<std::size_t>{0, 1}));
}

}  // namespace
}  // namespace ambiset
