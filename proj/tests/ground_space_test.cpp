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

#include <gtest/gtest.h>

#include "support.hpp"

namespace ambiset {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kUsage;
}

TEST(ValidateSpace, SinglePoint) {
  const auto s = validate_space({{0.0}});
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.diameter(), 0.0);
}

TEST(ValidateSpace, TwoPoints) {
  const auto s = validate_space({{0, 1}, {1, 0}});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s(0, 1), 1.0);
}

TEST(ValidateSpace, TriangleViolationNamesTriple) {
  const std::vector<std::vector<double>> d{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}};
  const auto v = check_space(d, ValidationMode::kStrict, kLenientTolerance);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::kTriangleViolation);
  EXPECT_EQ(v->i, 0u);
  EXPECT_EQ(v->j, 2u);
  ASSERT_TRUE(v->k.has_value());
  EXPECT_EQ(*v->k, 1u);
  EXPECT_EQ(code_of([&] { validate_space(d); }), ErrorCode::kTriangleViolation);
}

TEST(ValidateSpace, RejectsBadMatrices) {
  EXPECT_EQ(code_of([] { validate_space({{0, 1}, {2, 0}}); }),
            ErrorCode::kAsymmetricDistance);
  EXPECT_EQ(code_of([] { validate_space({{1, 1}, {1, 0}}); }),
            ErrorCode::kNonzeroDiagonal);
  EXPECT_EQ(code_of([] { validate_space({{0, -1}, {-1, 0}}); }),
            ErrorCode::kNegativeDistance);
  EXPECT_EQ(code_of([] { validate_space({{0, 0}, {0, 0}}); }),
            ErrorCode::kDuplicatePoints);
  EXPECT_EQ(code_of([] { validate_space({{0, 1}}); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { validate_space({}); }), ErrorCode::kDimensionMismatch);
}

TEST(ValidateSpace, LenientRepairsTinyAsymmetry) {
  const std::vector<std::vector<double>> d{{0, 1.0}, {1.0 + 1e-12, 0}};
  EXPECT_EQ(code_of([&] { validate_space(d); }), ErrorCode::kAsymmetricDistance);
  const auto s = validate_space(d, ValidationMode::kLenient);
  EXPECT_EQ(s(0, 1), s(1, 0));
  EXPECT_NEAR(s(0, 1), 1.0, 1e-12);
  EXPECT_EQ(code_of([] {
              validate_space({{0, 1}, {1.1, 0}}, ValidationMode::kLenient);
            }),
            ErrorCode::kAsymmetricDistance);
}

TEST(FromPoints, LineAndPlane) {
  const double line[] = {0, 1, 2};
  EXPECT_EQ(line_space(line)(0, 2), 2.0);
  EXPECT_EQ(from_points({{0, 0}, {3, 4}}, 2.0)(0, 1), 5.0);
  EXPECT_EQ(from_points({{0, 0}, {3, 4}}, 1.0)(0, 1), 7.0);
}

TEST(FromPoints, Errors) {
  EXPECT_EQ(code_of([] { from_points({{0, 0}, {1}}); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { from_points({{1, 2}, {1, 2}}); }), ErrorCode::kDuplicatePoints);
  EXPECT_EQ(code_of([] { from_points({{0}, {1}}, 0.5); }), ErrorCode::kInvalidExponent);
}

TEST(Scale, Basics) {
  const auto s = validate_space({{0, 1}, {1, 0}});
  EXPECT_EQ(scale(s, 1.0), s);
  EXPECT_EQ(scale(s, 3.0)(0, 1), 3.0);
  EXPECT_EQ(code_of([&] { scale(s, 0.0); }), ErrorCode::kNonpositiveScale);
  EXPECT_EQ(code_of([&] { scale(s, -2.0); }), ErrorCode::kNonpositiveScale);
}

TEST(BasePoint, Range) {
  const auto s = validate_space({{0, 1}, {1, 0}});
  EXPECT_EQ(checked_base_point(s, 1).index, 1u);
  EXPECT_EQ(code_of([&] { checked_base_point(s, 2); }), ErrorCode::kInvalidIndex);
}

TEST(SpaceProperties, PointCloudsValidateStrictly) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.space(gen.between(1, 9));
    EXPECT_FALSE(check_space(s->matrix(), ValidationMode::kStrict, kLenientTolerance))
        << "trial " << trial;
  }
}

TEST(SpaceProperties, ScaleRoundTrip) {
  testing::Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = gen.space(gen.between(2, 8));
    const double a = gen.uniform(0.1, 10.0);
    const auto back = scale(scale(*s, a), 1.0 / a);
    for (std::size_t i = 0; i < s->size(); ++i) {
      for (std::size_t j = 0; j < s->size(); ++j) {
        EXPECT_NEAR(back(i, j), (*s)(i, j), 1e-12);
      }
    }
    EXPECT_FALSE(check_space(scale(*s, 0.5).matrix(), ValidationMode::kStrict,
                             kLenientTolerance));
  }
}

TEST(SpaceProperties, ValidationIsIdempotent) {
  testing::Gen gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = gen.space(gen.between(1, 8));
    const auto again = validate_space(s->matrix(), ValidationMode::kStrict,
                                      kLenientTolerance, s->labels());
    EXPECT_EQ(again, *s);
  }
}

}  // namespace
}  // namespace ambiset
