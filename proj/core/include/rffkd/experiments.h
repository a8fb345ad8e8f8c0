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

#ifndef RFFKD_EXPERIMENTS_H_
#define RFFKD_EXPERIMENTS_H_

// Data generators and the pairwise relative-error experiment.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rffkd/kernel.h"
#include "rffkd/types.h"

namespace rffkd {

struct PairExperimentConfig {
  std::size_t n_pairs = 2000;
  double ball_radius = 500.0;
  double dist_min = 1e-4;
  double dist_max = 1e4;
  Bandwidth sigma{1.0};
  std::vector<std::size_t> t_list{100, 400, 1600};
  std::uint64_t seed = 0;
  // Ambient dimension of the generated points.
  std::size_t dim = 10;
};

struct PointPair {
  Vector x;
  Vector y;
  // Realized distance |x - y|.
  double r = 0.0;
};

// x uniform in the radius-`ball_radius` ball, r log-uniform on
// [dist_min, dist_max], y = x + r u with u uniform on the unit sphere.
// `stream_id` selects an independent pair sequence for the same seed.
std::vector<PointPair> gen_pairs(const PairExperimentConfig& cfg,
                                 std::uint64_t stream_id = 0);

struct PairRecord {
  double r = 0.0;
  double d_exact = 0.0;
  double d_approx = 0.0;
  // d_exact / d_approx.
  double ratio = 0.0;
};

struct PairExperimentReport {
  std::size_t t = 0;
  std::vector<PairRecord> records;
  // max_i |ratio_i - 1|.
  double eps_max = 0.0;
  // Pairs dropped because x == y (or the embedding collapsed them).
  std::size_t excluded = 0;
};

// For each t: a fresh pair set and a fresh cossin map, one report per t in
// t_list order. `sink`, when set, receives each report as soon as it is
// complete (reports are still returned).
std::vector<PairExperimentReport> pairs_experiment(
    const PairExperimentConfig& cfg,
    const std::function<void(const PairExperimentReport&)>& sink = {});

// Mean |ratio - 1| over records with r / sigma in [lo, hi).
double mean_deviation(const PairExperimentReport& report, double sigma,
                      double lo, double hi);

// Points j * side for integer vectors j with |j_k * side| <= half_width in
// every axis, side = sigma sqrt(2 ln(1/eps)). Distinct points therefore
// have K(x, y) <= eps. Throws InputError when d * count exceeds 1e5.
PointSet gen_grid_stress(std::size_t d, double half_width, Bandwidth sigma,
                         double epsilon);

// Number of grid points gen_grid_stress would produce.
std::size_t grid_stress_count(std::size_t d, double half_width, Bandwidth sigma,
                              double epsilon);

struct Mixture {
  PointSet points;
  // clusters x d.
  Matrix centers;
  std::vector<std::size_t> labels;
};

// Equal-weight Gaussian mixture: centers ~ N(0, spread^2 I), point i belongs
// to cluster i mod clusters and is its center plus N(0, I) noise.
Mixture synth_dataset(std::size_t n, std::size_t d, std::size_t clusters,
                      std::uint64_t seed, double spread = 3.0);

}  // namespace rffkd

#endif  // RFFKD_EXPERIMENTS_H_
