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

#ifndef RFFKD_DIMENSION_PLAN_H_
#define RFFKD_DIMENSION_PLAN_H_

// Sufficient pair counts t (output dimension m = 2t) for the relative-error
// guarantee (1 - eps) <= D_K / D_Khat <= (1 + eps).
//
//   per pair:          t = ceil(C / eps^2 * ln(2 / delta))
//   n points:          t = ceil(C / eps^2 * ln(n (n - 1)))
//   diameter M in R^d: t = ceil(C d / eps^2 * ln((d / eps) * max(M, e) / delta))
//
// C defaults to 8, the explicit constant of the chi-square concentration
// bound. The other two regimes are only known up to constants; their plans
// use the same C and say so in formula_note.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace rffkd {

inline constexpr double kDefaultPlanConstant = 8.0;

struct PerPair {};
struct FinitePoints {
  std::size_t n = 0;
};
struct BoundedDiameter {
  std::size_t d = 0;
  // max |x - y| / sigma over the data.
  double diameter = 0.0;
};
using Regime = std::variant<PerPair, FinitePoints, BoundedDiameter>;

std::string regime_name(const Regime& regime);

struct DimensionRequest {
  double epsilon = 0.1;
  double delta = 0.1;
  Regime regime = PerPair{};
  std::optional<double> constant_override;
};

struct DimensionPlan {
  std::size_t pair_count = 0;
  std::size_t output_dim = 0;
  Regime regime;
  // The bound before rounding up.
  double unrounded = 0.0;
  std::string formula_note;
};

DimensionPlan plan_per_pair(const DimensionRequest& req);
DimensionPlan plan_finite_points(const DimensionRequest& req);
DimensionPlan plan_bounded_diameter(const DimensionRequest& req);
// Dispatches on req.regime.
DimensionPlan plan(const DimensionRequest& req);

// Smallest delta for which plan_per_pair yields at most t pairs:
// delta = 2 exp(-t eps^2 / C).
double per_pair_delta_for(std::size_t t, double epsilon,
                          double constant = kDefaultPlanConstant);

}  // namespace rffkd

#endif  // RFFKD_DIMENSION_PLAN_H_
