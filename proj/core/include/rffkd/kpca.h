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

#ifndef RFFKD_KPCA_H_
#define RFFKD_KPCA_H_

// Exact kernel PCA through the double-centered Gram matrix and approximate
// kernel PCA through the column-centered random-feature matrix Q.
//
// Exact tail energy:   R_k  = sum_{i > k} lambda_i(G_c)
// Approximate residual: Rh_k = |Q - Q V_k V_k^T|_F^2, V_k the top-k right
//                       singular vectors of Q.
//
// With Q centered this way, Q Q^T equals the double-centered Gram matrix of
// the embedded points, which is what makes the two pipelines comparable.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rffkd/feature_map.h"
#include "rffkd/kernel.h"
#include "rffkd/types.h"

namespace rffkd {

struct GramMatrix {
  Eigen::MatrixXd g;
  bool centered = false;
};

// G_ij = K(x_i, x_j). Requires n >= 2.
GramMatrix gram_exact(const PointSet& points, Bandwidth sigma);
// G_ij = <phi(x_i), phi(x_j)>, uncentered.
GramMatrix gram_from_embedding(const Embedding& embedding);

// G - (1/n) 11^T G - (1/n) G 11^T + (1/n^2) 11^T G 11^T. Throws InputError
// if the input is already centered.
GramMatrix center_gram(const GramMatrix& gram);

// Eigenvalues of a symmetric matrix in descending order.
Vector descending_eigenvalues(const Eigen::MatrixXd& symmetric);

// Sum of eigenvalues k+1..n (1-based) of a centered Gram matrix; values
// below 1e-10 * lambda_max are treated as 0. Valid for 0 <= k < n.
double exact_tail_energy(const GramMatrix& centered, std::size_t k);

// Subtracts column means.
Eigen::MatrixXd center_columns(const Matrix& features);

// |Q - Q V_k V_k^T|_F^2 for 0 <= k < min(rows, cols). Computed from the
// projector, never from the singular-value tail.
double projection_residual(const Eigen::MatrixXd& q, std::size_t k);

// Embeds `points`, centers, and returns the projection residual.
double approx_residual(const PointSet& points, const FeatureMap& map,
                       std::size_t k);

// Rows are exact RKHS coordinates U diag(sqrt(lambda)) of each point, from
// the eigendecomposition of a centered Gram matrix.
Eigen::MatrixXd exact_feature_matrix(const GramMatrix& centered);

struct KpcaConfig {
  Bandwidth sigma{1.0};
  std::size_t k = 40;
  std::vector<std::size_t> t_list;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
};

struct PcaReport {
  std::size_t k = 0;
  std::size_t t = 0;
  double sigma = 0.0;
  std::size_t trials = 0;
  double r_exact = 0.0;
  // Mean of Rh_k over trials.
  double r_approx = 0.0;
  // |r_approx / r_exact - 1| for the trial-averaged residual.
  double rel_err = 0.0;
  // Mean over trials of |Rh_k / R_k - 1|.
  double rel_err_mean = 0.0;
  // True when R_k == 0; the ratios are then NaN.
  bool degenerate = false;
};

// One report per entry of t_list, each averaged over `trials` maps whose
// seeds are derived from (seed, t, trial).
std::vector<PcaReport> kpca_experiment(const PointSet& points,
                                       const KpcaConfig& config);

}  // namespace rffkd

#endif  // RFFKD_KPCA_H_
