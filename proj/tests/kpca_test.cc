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

#include "rffkd/kpca.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rffkd/errors.h"
#include "rffkd/experiments.h"
#include "rffkd/rng.h"

namespace rffkd {
namespace {

Matrix small_points() {
  Matrix m(5, 2);
  m << 0.0, 0.0,
       1.0, 0.5,
       -0.7, 1.2,
       2.0, -1.0,
       0.3, 0.3;
  return m;
}

oracle::LMat to_long(const Eigen::MatrixXd& m) {
  oracle::LMat out = oracle::zeros(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

oracle::LMat oracle_gram(const Matrix& pts, double sigma) {
  const std::size_t n = pts.rows();
  oracle::LMat g = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<long double> x(pts.cols()), y(pts.cols());
      for (Eigen::Index c = 0; c < pts.cols(); ++c) {
        x[c] = pts(i, c);
        y[c] = pts(j, c);
      }
      g[i][j] = oracle::gaussian(x, y, sigma);
    }
  }
  return g;
}

TEST(Gram, MatchesOracle) {
  const Matrix pts = small_points();
  const GramMatrix g = gram_exact(PointSet(pts), Bandwidth(0.8));
  const oracle::LMat ref = oracle_gram(pts, 0.8);
  EXPECT_FALSE(g.centered);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      EXPECT_NEAR(g.g(i, j), static_cast<double>(ref[i][j]), 1e-15);
  EXPECT_THROW(gram_exact(PointSet(Matrix::Zero(1, 2)), Bandwidth(1.0)), InputError);
}

TEST(Gram, CenteringMatchesExplicitProjector) {
  const Matrix pts = small_points();
  const GramMatrix c = center_gram(gram_exact(PointSet(pts), Bandwidth(0.8)));
  const oracle::LMat ref = oracle::double_center(oracle_gram(pts, 0.8));
  EXPECT_TRUE(c.centered);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(c.g.row(i).sum(), 0.0, 1e-14);
    for (int j = 0; j < 5; ++j)
      EXPECT_NEAR(c.g(i, j), static_cast<double>(ref[i][j]), 1e-14);
  }
  EXPECT_THROW(center_gram(c), InputError);
}

TEST(TailEnergy, MatchesJacobiOracle) {
  const Matrix pts = small_points();
  const GramMatrix c = center_gram(gram_exact(PointSet(pts), Bandwidth(0.8)));
  const oracle::LMat ref = oracle::double_center(oracle_gram(pts, 0.8));
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_NEAR(exact_tail_energy(c, k), static_cast<double>(oracle::tail_sum(ref, k)),
                1e-13)
        << "k=" << k;
  }
  EXPECT_THROW(exact_tail_energy(c, 5), InputError);
  // k = 0 gives the trace of the centered Gram.
  EXPECT_NEAR(exact_tail_energy(c, 0), c.g.trace(), 1e-13);
}

TEST(TailEnergy, ClampsRoundoffNegatives) {
  // Duplicate points make the centered Gram singular; the tail is then
  // exactly the sum of positive eigenvalues.
  Matrix pts(4, 1);
  pts << 0.0, 0.0, 1.0, 1.0;
  const GramMatrix c = center_gram(gram_exact(PointSet(pts), Bandwidth(1.0)));
  EXPECT_GE(exact_tail_energy(c, 1), 0.0);
  EXPECT_NEAR(exact_tail_energy(c, 1), 0.0, 1e-12);
}

TEST(ProjectionResidual, MatchesOracle) {
  Eigen::MatrixXd q(6, 4);
  q << 1.0, 0.2, -0.3, 0.5,
       0.1, -1.1, 0.7, 0.0,
       -0.4, 0.3, 1.5, -0.2,
       0.9, 0.9, 0.1, 0.3,
       -1.2, 0.4, -0.6, 1.0,
       0.0, -0.5, 0.2, -0.8;
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(projection_residual(q, k),
                static_cast<double>(oracle::projection_residual(to_long(q), k)), 1e-13)
        << "k=" << k;
  }
  EXPECT_THROW(projection_residual(q, 4), InputError);
}

TEST(ProjectionResidual, CenterColumnsRemovesMeans) {
  Matrix f(3, 2);
  f << 1, 2, 3, 4, 5, 9;
  const Eigen::MatrixXd q = center_columns(f);
  EXPECT_NEAR(q.col(0).sum(), 0.0, 1e-15);
  EXPECT_NEAR(q.col(1).sum(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(q(2, 1), 4.0);
}

TEST(Pipeline, CenteredApproxGramEqualsQQt) {
  const Mixture mix = synth_dataset(100, 5, 3, 17);
  FeatureMapSpec spec;
  spec.count = 60;
  spec.input_dim = 5;
  spec.seed = 4;
  spec.sigma = Bandwidth(2.0);
  const Embedding e = FeatureMap::sample(spec).embed(mix.points);
  const GramMatrix gc = center_gram(gram_from_embedding(e));
  const Eigen::MatrixXd q = center_columns(e.features());
  EXPECT_LE((gc.g - q * q.transpose()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pipeline, ExactFeaturesReproduceTailEnergy) {
  const Mixture mix = synth_dataset(40, 4, 3, 23);
  const GramMatrix c = center_gram(gram_exact(mix.points, Bandwidth(1.5)));
  const Eigen::MatrixXd q = center_columns(exact_feature_matrix(c));
  EXPECT_LE((q * q.transpose() - c.g).cwiseAbs().maxCoeff(), 1e-10);
  for (std::size_t k : {0u, 1u, 5u, 20u, 38u}) {
    EXPECT_NEAR(projection_residual(q, k), exact_tail_energy(c, k), 1e-8) << k;
  }
}

TEST(KpcaExperiment, ReportsAndDeterminism) {
  const Mixture mix = synth_dataset(60, 4, 3, 5);
  KpcaConfig cfg;
  cfg.sigma = Bandwidth(1.5);
  cfg.k = 5;
  cfg.t_list = {20, 80};
  cfg.trials = 3;
  cfg.seed = 99;
  const auto a = kpca_experiment(mix.points, cfg);
  const auto b = kpca_experiment(mix.points, cfg);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].r_approx, b[i].r_approx);
    EXPECT_EQ(a[i].t, cfg.t_list[i]);
    EXPECT_EQ(a[i].k, 5u);
    EXPECT_GT(a[i].r_exact, 0.0);
    EXPECT_FALSE(a[i].degenerate);
    EXPECT_TRUE(std::isfinite(a[i].rel_err_mean));
    EXPECT_LE(a[i].rel_err, a[i].rel_err_mean + 1e-15);
  }
  // A single-t run reproduces the corresponding row of a multi-t run.
  cfg.t_list = {80};
  EXPECT_EQ(kpca_experiment(mix.points, cfg)[0].r_approx, a[1].r_approx);
}

TEST(KpcaExperiment, RejectsBadConfig) {
  const Mixture mix = synth_dataset(20, 3, 2, 1);
  KpcaConfig cfg;
  cfg.k = 5;
  cfg.t_list = {};
  EXPECT_THROW(kpca_experiment(mix.points, cfg), InputError);
  cfg.t_list = {2};
  EXPECT_THROW(kpca_experiment(mix.points, cfg), InputError);
  cfg.t_list = {10};
  cfg.k = 20;
  EXPECT_THROW(kpca_experiment(mix.points, cfg), InputError);
  cfg.k = 5;
  cfg.trials = 0;
  EXPECT_THROW(kpca_experiment(mix.points, cfg), InputError);
}

}  // namespace
}  // namespace rffkd
