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

#include "rffkd/dimension_plan.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rffkd/errors.h"

namespace rffkd {
namespace {

double plan_constant(const DimensionRequest& req) {
  if (!req.constant_override) return kDefaultPlanConstant;
  const double c = *req.constant_override;
  if (!std::isfinite(c) || c <= 0.0) {
    throw InputError("constant override must be finite and > 0");
  }
  return c;
}

void check_eps_delta(const DimensionRequest& req) {
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0)) {
    throw InputError("epsilon must lie in (0, 1)");
  }
  if (!(req.delta > 0.0 && req.delta < 1.0)) {
    throw InputError("delta must lie in (0, 1)");
  }
}

DimensionPlan finish(double unrounded, const Regime& regime, std::string note) {
  if (!std::isfinite(unrounded) || unrounded > 1e15) {
    throw InputError("requested plan overflows: " + note);
  }
  DimensionPlan out;
  out.unrounded = unrounded;
  out.pair_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(unrounded)));
  out.output_dim = 2 * out.pair_count;
  out.regime = regime;
  out.formula_note = std::move(note);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string regime_name(const Regime& regime) {
  struct Visitor {
    std::string operator()(const PerPair&) const { return "per-pair"; }
    std::string operator()(const FinitePoints&) const { return "finite"; }
    std::string operator()(const BoundedDiameter&) const { return "diameter"; }
  };
  return std::visit(Visitor{}, regime);
}

DimensionPlan plan_per_pair(const DimensionRequest& req) {
  if (!std::holds_alternative<PerPair>(req.regime)) {
    throw InputError("plan_per_pair requires the per-pair regime");
  }
  check_eps_delta(req);
  const double c = plan_constant(req);
  const double t = c / (req.epsilon * req.epsilon) * std::log(2.0 / req.delta);
  std::string note = "t = ceil(" + fmt(c) + " / eps^2 * ln(2/delta))";
  note += req.constant_override ? "; C overridden"
                                : "; C = 8 from chi-square concentration";
  return finish(t, req.regime, std::move(note));
}

DimensionPlan plan_finite_points(const DimensionRequest& req) {
  const auto* fp = std::get_if<FinitePoints>(&req.regime);
  if (fp == nullptr) {
    throw InputError("plan_finite_points requires the finite-points regime");
  }
  check_eps_delta(req);
  if (fp->n < 2) throw InputError("finite-points regime needs n >= 2");
  const double c = plan_constant(req);
  const double n = static_cast<double>(fp->n);
  const double t = c / (req.epsilon * req.epsilon) * std::log(n * (n - 1.0));
  std::string note = "t = ceil(" + fmt(c) +
                     " / eps^2 * ln(n(n-1))); union bound over n choose 2 "
                     "pairs, failure probability 1/n";
  if (!req.constant_override) note += "; C = 8 extrapolated from per-pair bound";
  return finish(t, req.regime, std::move(note));
}

DimensionPlan plan_bounded_diameter(const DimensionRequest& req) {
  const auto* bd = std::get_if<BoundedDiameter>(&req.regime);
  if (bd == nullptr) {
    throw InputError("plan_bounded_diameter requires the bounded-diameter regime");
  }
  check_eps_delta(req);
  if (bd->d < 1) throw InputError("bounded-diameter regime needs d >= 1");
  if (!(bd->diameter >= 0.0) || !std::isfinite(bd->diameter)) {
    throw InputError("diameter M must be finite and >= 0");
  }
  const double c = plan_constant(req);
  const double d = static_cast<double>(bd->d);
  // M below e falls back to the |delta| <= 1 regime, floored so ln(.) >= 1.
  const double m_eff = std::max(bd->diameter, std::numbers::e);
  const double t = c * d / (req.epsilon * req.epsilon) *
                   std::log((d / req.epsilon) * (m_eff / req.delta));
  std::string note = "t = ceil(" + fmt(c) +
                     " * d / eps^2 * ln((d/eps) * max(M,e) / delta))";
  if (bd->diameter < std::numbers::e) note += "; M clamped to e";
  if (!req.constant_override) {
    note += "; C = 8 extrapolated, theorem is asymptotic";
  }
  return finish(t, req.regime, std::move(note));
}

DimensionPlan plan(const DimensionRequest& req) {
  if (std::holds_alternative<PerPair>(req.regime)) return plan_per_pair(req);
  if (std::holds_alternative<FinitePoints>(req.regime)) {
    return plan_finite_points(req);
  }
  return plan_bounded_diameter(req);
}

double per_pair_delta_for(std::size_t t, double epsilon, double constant) {
  return 2.0 * std::exp(-static_cast<double>(t) * epsilon * epsilon / constant);
}

}  // namespace rffkd
