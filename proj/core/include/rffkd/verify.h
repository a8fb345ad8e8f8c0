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

#ifndef RFFKD_VERIFY_H_
#define RFFKD_VERIFY_H_

// Statistical checks of the concentration statements behind random Fourier
// feature relative-error bounds. Each check is deterministic in its seed and
// reports a statistic against a bound:
//
//   one-sided: passed iff statistic <= bound + 3 * std_err
//   two-sided: passed iff |statistic - bound| <= 3 * std_err
//
// Checks with no sampling (std_err = 0) reduce to exact comparisons.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rffkd/feature_map.h"
#include "rffkd/kernel.h"

namespace rffkd {

inline constexpr double kStdErrMargin = 3.0;
// Constant standing in for the O(delta) failure probability of the
// small-distance spike lemma.
inline constexpr double kSpikeFailureConstant = 3.0;

enum class Sidedness { kOneSided, kTwoSided };

struct VerifyReport {
  std::string check_name;
  std::size_t samples = 0;
  double statistic = 0.0;
  double bound = 0.0;
  double std_err = 0.0;
  Sidedness sided = Sidedness::kOneSided;
  bool passed = false;
  std::string note;
};

// Applies the pass rule above to `report` and returns it.
VerifyReport decide(VerifyReport report);

// Mean of cos(w |delta|), w ~ N(0,1), against exp(-|delta|^2 / 2).
// Requires samples >= 1e4.
VerifyReport check_unbiasedness(double delta_norm, std::size_t samples,
                                std::uint64_t seed);

// Same expectation, but through full sampled feature maps of either variant:
// mean over `maps` independent maps of <phi(x), phi(y)> with
// |x - y| / sigma = delta_norm.
VerifyReport check_map_unbiasedness(Variant variant, double delta_norm,
                                    std::size_t count, std::size_t maps,
                                    std::uint64_t seed, std::size_t dim = 3);

// `trials` draws of (1/t) sum_{i<t} w_i^2.
std::vector<double> chi_square_draws(std::size_t t, std::size_t trials,
                                     std::uint64_t seed);

// Frequency of (1/t) sum w_i^2 outside [1 - eps, 1 + eps] with t from
// plan_per_pair(eps, delta), or t_override when non-zero; one-sided against
// delta with Bernoulli std_err sqrt(delta (1 - delta) / trials).
VerifyReport check_chi_square(double epsilon, double delta, std::size_t trials,
                              std::uint64_t seed, std::size_t t_override = 0);

// Exact check on `grid` values |delta| = i / grid, i = 1..grid:
//   |delta|^2 - |delta|^4 / 4 <= D_K^2 <= |delta|^2
//   0.86 |delta| <= D_K <= |delta|
// statistic is the worst relative violation (0 when all hold).
VerifyReport check_taylor_sandwich(std::size_t grid);

// For |delta| <= 2 sqrt(eps): (1 - eps) |delta|^2 <= D_K^2 <= |delta|^2.
VerifyReport check_eps_linear(double epsilon, std::size_t grid);

struct LimitRatioTrace {
  std::vector<double> lambdas;  // as given
  std::vector<double> ratios;   // D_Khat(l delta)^2 / D_K(l delta)^2
  double chi = 0.0;             // (1/t) sum_i (w_i . delta / |delta|)^2
};

// Throws InputError if a lambda lies outside (0, 1], delta is zero, or the
// map is not the cossin variant.
LimitRatioTrace limit_ratio_trace(const ScaledDiff& delta, const FeatureMap& map,
                                  const std::vector<double>& lambdas);

// Relative gap |ratio - chi| / chi at the smallest lambda against 1e-4; also
// requires the gap to shrink monotonically as lambda decreases. `lambdas`
// must contain a value <= 1e-4.
VerifyReport check_limit_ratio(const ScaledDiff& delta, const FeatureMap& map,
                               const std::vector<double>& lambdas);

// ln E[exp(s (exp(-|delta|^2/2) - cos(w |delta|)))] against s^2 |delta|^4 / 4.
// Requires 0 <= |delta| <= 1 and 0 <= s < 1 / (2 |delta|^2).
VerifyReport check_mgf_bound(double delta_norm, double s, std::size_t samples,
                             std::uint64_t seed);

// For each trial: a fresh map with t = plan_per_pair(eps, delta) pairs and a
// random delta of norm sqrt(eps) / ln(1/delta); sweep lambda over a log grid
// on [1e-6, 1] and record a failure if any ratio D_Khat^2 / D_K^2 leaves
// [1 - eps, 1 + eps]. One-sided against kSpikeFailureConstant * delta.
VerifyReport check_spike_preservation(double epsilon, double delta,
                                      std::uint64_t seed,
                                      std::size_t trials = 100,
                                      std::size_t dim = 5);

// t = ceil(6 / eps^2 * |delta|^4 / D_K^4 * ln(2 / delta)).
std::size_t tail_bound_pairs(double delta_norm, double epsilon, double delta);

// Frequency over `trials` of |D_Khat - D_K| >= eps D_K at scaled distance
// delta_norm with t pairs.
double tail_violation_frequency(double delta_norm, double epsilon,
                                std::size_t t, std::size_t trials,
                                std::uint64_t seed);

// Requires 0 < |delta| <= 1 and eps in (0, 1).
VerifyReport check_tail_bound(double delta_norm, double epsilon, double delta,
                              std::size_t trials, std::uint64_t seed);

// Two points at |x - y| = distance_over_sigma * sigma in R^dim, embedded by
// `trials` independent maps with t = plan_per_pair(eps, delta); frequency of
// D_K / D_Khat outside [1 - eps, 1 + eps], one-sided against delta.
VerifyReport check_pair_relative_error(double distance_over_sigma,
                                       double epsilon, double delta,
                                       std::size_t trials, std::uint64_t seed,
                                       std::size_t dim = 10);

// Whenever max_i |w_i| |delta| <= 1:
//   chi - |delta|^2/12 * mean(w^4) <= D_Khat^2 / D_K^2 <= chi / (1 - |delta|^2/2)
VerifyReport check_expansion_sandwich(std::size_t t, std::size_t trials,
                                      std::uint64_t seed);

// Max | |phi_hat(x)| - 1 | over n random points; bound 1e-12.
VerifyReport check_unit_norm(std::size_t n, std::size_t t, std::size_t dim,
                             std::uint64_t seed);

// Every check above at its default scale.
std::vector<VerifyReport> run_battery(std::uint64_t seed);

}  // namespace rffkd

#endif  // RFFKD_VERIFY_H_
