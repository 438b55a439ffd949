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

#include "ambiset/convergence_lab.hpp"

#include <gtest/gtest.h>

#include "ambiset/transport.hpp"
#include "support.hpp"

namespace ambiset {
namespace {

FamilyOptions small(std::size_t terms, std::size_t grid) {
  FamilyOptions o;
  o.terms = terms;
  o.grid = grid;
  return o;
}

SetSequence constant_sequence(std::size_t terms) {
  testing::Gen gen(61);
  const auto s = gen.space(5);
  const auto limit = gen.set(s, 3);
  return {s, std::vector<AmbiguitySet>(terms, limit), limit, "constant"};
}

TEST(Families, NamesRoundTrip) {
  for (Family f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_FALSE(parse_family("nope").has_value());
}

TEST(Families, SequencesShareOneSpace) {
  for (Family f : all_families()) {
    const auto seq = make_family(f, small(12, 20));
    EXPECT_EQ(seq.terms.size(), 12u);
    for (const auto& t : seq.terms) EXPECT_EQ(t.space(), seq.space);
    EXPECT_EQ(seq.limit.space(), seq.space);
  }
}

TEST(Families, SeedIsReproducible) {
  FamilyOptions o = small(5, 30);
  const auto a = make_family(Family::kRandomPerturbation, o);
  const auto b = make_family(Family::kRandomPerturbation, o);
  o.seed = 7;
  const auto c = make_family(Family::kRandomPerturbation, o);
  const auto w = [](const SetSequence& s) {
    const auto v = s.limit[0].weights();
    return std::vector<double>(v.begin(), v.end());
  };
  EXPECT_EQ(w(a), w(b));
  EXPECT_NE(w(a), w(c));
}

TEST(WeakGap, ConstantSequenceIsZero) {
  const auto seq = constant_sequence(6);
  for (double g : weak_convergence_gap(seq, default_panel(seq.space, 42))) EXPECT_EQ(g, 0.0);
}

TEST(WeakGap, AlternatingOscillates) {
  const auto seq = make_family(Family::kAlternating, small(8, 2));
  const auto gaps = weak_convergence_gap(seq, default_panel(seq.space, 42));
  for (std::size_t n = 0; n < gaps.size(); ++n) EXPECT_EQ(gaps[n], n % 2 == 0 ? 0.0 : 1.0);
  EXPECT_FALSE(converges_to_zero(gaps));
}

TEST(WeakGap, DriftingBoundedByLipschitzRate) {
  const auto seq = make_family(Family::kDrifting, small(30, 40));
  std::vector<TestFunction> panel = default_panel(seq.space, 42, 64, false);
  const auto gaps = weak_convergence_gap(seq, panel);
  for (std::size_t n = 0; n < gaps.size(); ++n) {
    EXPECT_LE(gaps[n], 1.0 / static_cast<double>(n + 1) + 1e-12);
  }
}

TEST(WeakGap, Errors) {
  const auto seq = constant_sequence(3);
  EXPECT_THROW(weak_convergence_gap(seq, {}), Error);
  const auto other = share(line_space(std::vector<double>{0, 1}));
  const std::vector<TestFunction> panel{TestFunction(other, {0, 1})};
  try {
    weak_convergence_gap(seq, panel);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpaceMismatch);
  }
}

TEST(Panels, RandomFunctionsAreOneLipschitz) {
  testing::Gen gen(62);
  const auto s = gen.space(8);
  const auto panel = default_panel(s, 3, 64);
  EXPECT_EQ(panel.size(), 8u + 64u);
  for (std::size_t k = 8; k < panel.size(); ++k) {
    EXPECT_LE(lipschitz_constant(panel[k]), 1.0 + 1e-12);
  }
  const auto growth = growth_panel(s, BasePoint{2}, 2.0, 3);
  for (const auto& phi : growth) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      EXPECT_LE(std::abs(phi[i]), 1.0 + std::pow((*s)(2, i), 2.0) + 1e-12);
    }
  }
}

TEST(ConvergenceRule, Judgements) {
  std::vector<double> harmonic, constant, growing, tiny;
  for (int n = 1; n <= 40; ++n) {
    harmonic.push_back(1.0 / n);
    constant.push_back(0.3);
    growing.push_back(n);
    tiny.push_back(n < 30 ? 1.0 / n : 0.0);
  }
  EXPECT_TRUE(converges_to_zero(harmonic));
  EXPECT_FALSE(converges_to_zero(constant));
  EXPECT_FALSE(converges_to_zero(growing));
  EXPECT_TRUE(converges_to_zero(tiny));
  EXPECT_TRUE(converges_to_zero(std::vector<double>(5, 0.0)));
  EXPECT_FALSE(converges_to_zero({}));
  EXPECT_EQ(last_quarter(50), 13u);
  EXPECT_EQ(last_quarter(1), 1u);
}

TEST(Metrization, ConstantSequence) {
  const auto seq = constant_sequence(8);
  const auto r = metrization_report(seq, 1.0, default_k_grid(*seq.space, BasePoint{0}),
                                    BasePoint{0});
  EXPECT_EQ(r.distance_trace.size(), 8u);
  EXPECT_EQ(r.weak_gap_trace.size(), 8u);
  EXPECT_EQ(r.tail_trace.size(), 8u);
  for (double v : r.distance_trace) EXPECT_EQ(v, 0.0);
  for (double v : r.weak_gap_trace) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(r.verdict_i);
  EXPECT_TRUE(r.verdict_ii);
  EXPECT_TRUE(r.verdict_iii);
  EXPECT_TRUE(r.agreement);
}

TEST(Metrization, EscapingClosedForms) {
  const auto seq = make_family(Family::kEscaping, small(20, 21));
  for (double p : {1.0, 2.0}) {
    const auto r = metrization_report(seq, p, {10.0}, BasePoint{0});
    for (std::size_t k = 0; k < 20; ++k) {
      const double n = static_cast<double>(k + 1);
      EXPECT_NEAR(r.distance_trace[k], n, 1e-9);
      EXPECT_EQ(r.tail_trace[k][0], n >= 10.0 ? std::pow(n, p) : 0.0);
    }
    EXPECT_FALSE(r.verdict_i);
    EXPECT_FALSE(r.verdict_ii);
    EXPECT_FALSE(r.verdict_iii);
    EXPECT_TRUE(r.agreement);
  }
}

TEST(Metrization, ShrinkingIsExactlyHarmonic) {
  const auto seq = make_family(Family::kShrinking, small(20, 30));
  const auto r = metrization_report(seq, 1.0, default_k_grid(*seq.space, BasePoint{0}),
                                    BasePoint{0});
  for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(r.distance_trace[k], 1.0 / (k + 1), 1e-9);
  EXPECT_TRUE(r.verdict_i);
  EXPECT_TRUE(r.verdict_iii);
  EXPECT_TRUE(r.agreement);
}

TEST(Metrization, ErrorsOnBadGrid) {
  const auto seq = make_family(Family::kEscaping, small(4, 5));
  EXPECT_THROW(metrization_report(seq, 1.0, {}, BasePoint{0}), Error);
  EXPECT_THROW(metrization_report(seq, 1.0, {2.0, 1.0}, BasePoint{0}), Error);
  EXPECT_THROW(metrization_report(seq, 1.0, {1.0}, BasePoint{99}), Error);
}

TEST(Metrization, VerdictsAgreeAcrossFamiliesAndGrowthFollows) {
  for (Family f : all_families()) {
    for (std::uint64_t seed : {1u, 42u}) {
      FamilyOptions o = small(24, 16);
      o.seed = seed;
      const auto seq = make_family(f, o);
      for (double p : {1.0, 2.0}) {
        MetrizationOptions mo;
        mo.seed = seed;
        const auto r = metrization_report(seq, p, default_k_grid(*seq.space, BasePoint{0}),
                                          BasePoint{0}, mo);
        EXPECT_TRUE(r.agreement) << family_name(f) << " p=" << p;
        if (r.verdict_i) EXPECT_TRUE(r.verdict_ii) << family_name(f);
      }
    }
  }
}

TEST(Metrization, SerialAndParallelAgreeBitwise) {
  const auto seq = make_family(Family::kRandomPerturbation, small(16, 12));
  MetrizationOptions serial, parallel;
  serial.exec = Exec::kSerial;
  parallel.exec = Exec::kParallel;
  const auto grid = default_k_grid(*seq.space, BasePoint{0});
  const auto a = metrization_report(seq, 2.0, grid, BasePoint{0}, serial);
  const auto b = metrization_report(seq, 2.0, grid, BasePoint{0}, parallel);
  EXPECT_EQ(a.distance_trace, b.distance_trace);
  EXPECT_EQ(a.weak_gap_trace, b.weak_gap_trace);
  EXPECT_EQ(a.growth_gap_trace, b.growth_gap_trace);
}

TEST(PEquivalence, Examples) {
  const auto constant = constant_sequence(6);
  const auto c = p_equivalence_check(constant, 1.0, 2.0, BasePoint{0});
  EXPECT_TRUE(c.agree);
  for (double v : c.trace_p) EXPECT_EQ(v, 0.0);
  for (double v : c.trace_q) EXPECT_EQ(v, 0.0);

  const auto drifting = make_family(Family::kDrifting, small(20, 30));
  const auto d = p_equivalence_check(drifting, 1.0, 2.0, BasePoint{0});
  EXPECT_TRUE(d.agree);
  for (std::size_t k = 0; k < 20; ++k) {
    EXPECT_NEAR(d.trace_p[k], 1.0 / (k + 1), 1e-9);
    EXPECT_NEAR(d.trace_q[k], 1.0 / (k + 1), 1e-9);
  }

  const auto escaping = make_family(Family::kEscaping, small(20, 21));
  const auto e = p_equivalence_check(escaping, 1.0, 2.0, BasePoint{0});
  EXPECT_TRUE(e.agree);
  EXPECT_FALSE(e.converged_p);
  EXPECT_FALSE(e.converged_q);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(e.trace_q[k], k + 1.0, 1e-9);
}

TEST(PEquivalence, MovingPointMassesAcrossExponents) {
  const auto seq = make_family(Family::kDrifting, small(24, 30));
  const auto base = converges_to_zero(distance_trace(seq, 1.0));
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    EXPECT_EQ(converges_to_zero(distance_trace(seq, p)), base) << p;
  }
  const auto esc = make_family(Family::kEscaping, small(24, 25));
  const auto esc_base = converges_to_zero(distance_trace(esc, 1.0));
  for (double p : {1.5, 2.0, 3.0}) EXPECT_EQ(converges_to_zero(distance_trace(esc, p)), esc_base);
}

TEST(Semicontinuity, Examples) {
  const auto constant = constant_sequence(6);
  for (const auto& row : semicontinuity_check(constant, all_subsets(5))) {
    EXPECT_TRUE(row.pass);
    EXPECT_EQ(row.limsup_proxy, row.limit_value);
  }

  const auto drifting = make_family(Family::kDrifting, small(20, 30));
  const std::vector<std::size_t> origin{0};
  const auto r = semicontinuity_check(drifting, {origin});
  EXPECT_EQ(r[0].limsup_proxy, 0.0);
  EXPECT_EQ(r[0].limit_value, 1.0);
  EXPECT_TRUE(r[0].pass);

  const auto alternating = make_family(Family::kAlternating, small(20, 2));
  const std::vector<std::size_t> one{1};
  const auto bad = semicontinuity_check(alternating, {one});
  EXPECT_EQ(bad[0].limsup_proxy, 1.0);
  EXPECT_EQ(bad[0].limit_value, 0.0);
  EXPECT_FALSE(bad[0].pass);

  const std::vector<std::size_t> out_of_range{7};
  EXPECT_THROW(semicontinuity_check(alternating, {out_of_range}), Error);
}

TEST(Semicontinuity, HoldsWheneverVerdictsConverge) {
  for (Family f : all_families()) {
    const auto seq = make_family(f, small(24, 6));
    const auto r = metrization_report(seq, 1.0, default_k_grid(*seq.space, BasePoint{0}),
                                      BasePoint{0});
    if (!r.verdict_iii || seq.continuum) continue;
    ASSERT_LE(seq.space->size(), 12u);
    const auto subsets = all_subsets(seq.space->size());
    for (const auto& row : semicontinuity_check(seq, subsets)) {
      EXPECT_TRUE(row.pass) << family_name(f);
    }
  }
}

TEST(AllSubsets, Enumerates) {
  const auto s = all_subsets(3);
  ASSERT_EQ(s.size(), 8u);
  EXPECT_TRUE(s[0].empty());
  EXPECT_EQ(s[7], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Counterexample, ClosedForms) {
  const auto base = dual_gap_counterexample();
  EXPECT_NEAR(base.w1, 0.5, 1e-9);
  EXPECT_NEAR(base.dual, 0.0, 1e-9);
  const auto scaled = dual_gap_counterexample(3.0);
  EXPECT_NEAR(scaled.w1, 1.5, 1e-9);
  EXPECT_NEAR(scaled.dual, 0.0, 1e-9);
  const auto convex = dual_gap_counterexample(1.0, true);
  EXPECT_NEAR(convex.w1, 0.0, 1e-9);
  EXPECT_NEAR(convex.dual, 0.0, 1e-9);
}

}  // namespace
}  // namespace ambiset
