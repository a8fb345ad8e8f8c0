// Copyright 2026 The rffkd Authors.
//
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

#include "rffkd/feature_map.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rffkd/errors.h"
#include "rffkd/rng.h"
#include "rffkd/verify.h"

namespace rffkd {
namespace {

FeatureMapSpec make_spec(Variant v, std::size_t count, std::size_t dim,
                         std::uint64_t seed, double sigma = 1.0) {
  FeatureMapSpec s;
  s.variant = v;
  s.count = count;
  s.input_dim = dim;
  s.seed = seed;
  s.sigma = Bandwidth(sigma);
  return s;
}

Matrix random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                     double scale) {
  const CounterStream s(seed);
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = scale * s.normal(i, j);
  return m;
}

TEST(Variant, ParsesNames) {
  EXPECT_EQ(parse_variant("cossin"), Variant::kCosSin);
  EXPECT_EQ(parse_variant("cosshift"), Variant::kCosShift);
  EXPECT_EQ(variant_name(Variant::kCosShift), "cosshift");
  EXPECT_THROW(parse_variant("sin"), InputError);
}

TEST(FeatureMap, RejectsEmptySpec) {
  EXPECT_THROW(FeatureMap::sample(make_spec(Variant::kCosSin, 0, 3, 1)), InputError);
  EXPECT_THROW(FeatureMap::sample(make_spec(Variant::kCosSin, 4, 0, 1)), InputError);
}

TEST(FeatureMap, OutputDimensions) {
  const FeatureMap a = FeatureMap::sample(make_spec(Variant::kCosSin, 16, 3, 1));
  EXPECT_EQ(a.output_dim(), 32u);
  EXPECT_EQ(a.map_point(Vector::Zero(3)).size(), 32);
  EXPECT_EQ(a.shifts().size(), 0);
  const FeatureMap b = FeatureMap::sample(make_spec(Variant::kCosShift, 16, 3, 1));
  EXPECT_EQ(b.output_dim(), 16u);
  EXPECT_EQ(b.shifts().size(), 16);
  EXPECT_THROW(a.map_point(Vector::Zero(4)), InputError);
  EXPECT_THROW(a.embed(PointSet(Matrix::Zero(2, 4))), InputError);
}

TEST(FeatureMap, DeterministicInSeed) {
  const auto s = make_spec(Variant::kCosShift, 50, 4, 77);
  const FeatureMap a = FeatureMap::sample(s), b = FeatureMap::sample(s);
  EXPECT_EQ(a.omegas(), b.omegas());
  EXPECT_EQ(a.shifts(), b.shifts());
  const FeatureMap c = FeatureMap::sample(make_spec(Variant::kCosShift, 50, 4, 78));
  EXPECT_NE(a.omegas(), c.omegas());
}

TEST(FeatureMap, UnitNormRows) {
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosSin, 64, 6, 3, 0.7));
  const Embedding e = map.embed(PointSet(random_points(10000, 6, 4, 25.0)));
  const double worst = (e.features().rowwise().norm().array() - 1.0).abs().maxCoeff();
  EXPECT_LE(worst, 1e-12);
}

TEST(FeatureMap, EmbedMatchesMapPoint) {
  for (Variant v : {Variant::kCosSin, Variant::kCosShift}) {
    const FeatureMap map = FeatureMap::sample(make_spec(v, 40, 5, 8, 1.5));
    const PointSet pts(random_points(700, 5, 9, 2.0));
    const Embedding e = map.embed(pts);
    ASSERT_EQ(e.size(), 700u);
    for (std::size_t i : {0u, 255u, 256u, 699u}) {
      EXPECT_LE((e.row(i) - map.map_point(pts.point(i))).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(FeatureMap, DistanceMatchesKernelIdentity) {
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosSin, 100, 3, 10));
  const Matrix pts = random_points(50, 3, 11, 1.0);
  for (int i = 0; i + 1 < 50; i += 2) {
    const Vector ex = map.map_point(pts.row(i).transpose());
    const Vector ey = map.map_point(pts.row(i + 1).transpose());
    const ApproxKernelPair p = approx_pair(ex, ey);
    EXPECT_NEAR(p.d_hat, std::sqrt(std::max(0.0, 2.0 - 2.0 * p.k_hat)), 1e-10);
    EXPECT_EQ(p.k_hat, approx_kernel(ex, ey));
    EXPECT_EQ(p.d_hat, approx_distance(ex, ey));
  }
}

TEST(FeatureMap, ClosedFormsMatchEmbedding) {
  const double sigma = 1.3;
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosSin, 80, 4, 12, sigma));
  const Matrix pts = random_points(20, 4, 13, 1.0);
  for (int i = 0; i + 1 < 20; i += 2) {
    const Vector x = pts.row(i).transpose(), y = pts.row(i + 1).transpose();
    const Vector ex = map.map_point(x), ey = map.map_point(y);
    EXPECT_NEAR(map.kernel_from_diff(x - y), ex.dot(ey), 1e-12);
    EXPECT_NEAR(map.distance_sq_from_diff(x - y), (ex - ey).squaredNorm(), 1e-12);
    EXPECT_NEAR(map.project(x - y)[3], map.omegas().row(3).dot(x - y), 1e-12);
  }
  const FeatureMap shift = FeatureMap::sample(make_spec(Variant::kCosShift, 8, 4, 1));
  EXPECT_THROW(shift.kernel_from_diff(Vector::Zero(4)), InputError);
  EXPECT_THROW(shift.distance_sq_from_diff(Vector::Zero(4)), InputError);
}

TEST(FeatureMap, FrequencyVarianceIsInverseBandwidthSquared) {
  // Sample variance of N(0, 1/sigma^2) entries: se of s^2 is sqrt(2/N) s^2.
  const double sigma = 2.0;
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosSin, 5000, 4, 21, sigma));
  const auto w = map.omegas().reshaped();
  const double n = static_cast<double>(w.size());
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / (n - 1.0);
  const double target = 1.0 / (sigma * sigma);
  EXPECT_NEAR(mean, 0.0, 4.0 * std::sqrt(target / n));
  EXPECT_NEAR(var, target, 4.0 * target * std::sqrt(2.0 / n));
}

TEST(FeatureMap, ShiftsUniformOnCircle) {
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosShift, 20000, 1, 22));
  const Vector& b = map.shifts();
  EXPECT_GT(b.minCoeff(), 0.0);
  EXPECT_LE(b.maxCoeff(), 2.0 * std::numbers::pi);
  const double sd = 2.0 * std::numbers::pi / std::sqrt(12.0);
  EXPECT_NEAR(b.mean(), std::numbers::pi, 4.0 * sd / std::sqrt(20000.0));
}

TEST(FeatureMap, BothVariantsUnbiased) {
  for (Variant v : {Variant::kCosSin, Variant::kCosShift}) {
    for (double r : {0.3, 1.0, 2.0}) {
      const VerifyReport rep = check_map_unbiasedness(v, r, 4, 20000, 31);
      EXPECT_TRUE(rep.passed) << rep.check_name << " stat=" << rep.statistic
                              << " bound=" << rep.bound << " se=" << rep.std_err;
    }
  }
}

TEST(FeatureMap, CosShiftSelfInnerProductAveragesOne) {
  // <phi(x), phi(x)> = (2/m) sum cos^2(w.x + b), whose mean is 1.
  const FeatureMap map = FeatureMap::sample(make_spec(Variant::kCosShift, 20000, 3, 40));
  Vector x(3);
  x << 0.4, -1.0, 2.0;
  const Vector e = map.map_point(x);
  EXPECT_NEAR(e.squaredNorm(), 1.0, 4.0 * std::sqrt(0.5 / 20000.0));
}

}  // namespace
}  // namespace rffkd
