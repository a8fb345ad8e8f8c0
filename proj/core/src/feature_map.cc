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
#include <string>

#include "rffkd/errors.h"
#include "rffkd/parallel.h"
#include "rffkd/rng.h"

namespace rffkd {
namespace {

constexpr std::uint64_t kOmegaStream = 1;
constexpr std::uint64_t kShiftStream = 2;
constexpr std::size_t kEmbedBlock = 256;

void check_lengths(const VectorRef& ex, const VectorRef& ey) {
  if (ex.size() != ey.size()) {
    throw InputError("embedding row length mismatch: " +
                     std::to_string(ex.size()) + " vs " +
                     std::to_string(ey.size()));
  }
}

}  // namespace

std::string_view variant_name(Variant v) {
  return v == Variant::kCosSin ? "cossin" : "cosshift";
}

Variant parse_variant(std::string_view name) {
  if (name == "cossin") return Variant::kCosSin;
  if (name == "cosshift") return Variant::kCosShift;
  throw InputError("unknown variant '" + std::string(name) +
                   "' (expected cossin or cosshift)");
}

FeatureMap FeatureMap::sample(const FeatureMapSpec& spec) {
  if (spec.count == 0) throw InputError("feature count must be positive");
  if (spec.input_dim == 0) throw InputError("input dimension must be positive");

  const CounterStream root(spec.seed);
  const CounterStream omega_stream = root.child(kOmegaStream);
  const double inv_sigma = 1.0 / spec.sigma.value();

  Matrix omegas(spec.count, spec.input_dim);
  parallel_for(spec.count, [&](std::size_t i) {
    for (std::size_t j = 0; j < spec.input_dim; ++j) {
      omegas(i, j) = omega_stream.normal(i, j) * inv_sigma;
    }
  });

  Vector shifts;
  if (spec.variant == Variant::kCosShift) {
    const CounterStream shift_stream = root.child(kShiftStream);
    shifts.resize(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
      shifts[i] = 2.0 * std::numbers::pi * shift_stream.uniform_left_open(i, 0);
    }
  }
  return FeatureMap(spec, std::move(omegas), std::move(shifts));
}

Vector FeatureMap::project(const VectorRef& diff) const {
  if (static_cast<std::size_t>(diff.size()) != input_dim()) {
    throw InputError("point dimension " + std::to_string(diff.size()) +
                     " does not match map input dimension " +
                     std::to_string(input_dim()));
  }
  return omegas_ * diff;
}

Vector FeatureMap::map_point(const VectorRef& x) const {
  const Vector proj = project(x);
  const std::size_t count = spec_.count;
  Vector out(output_dim());
  if (spec_.variant == Variant::kCosSin) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t i = 0; i < count; ++i) {
      out[2 * i] = std::cos(proj[i]) * scale;
      out[2 * i + 1] = std::sin(proj[i]) * scale;
    }
  } else {
    const double scale = std::sqrt(2.0 / static_cast<double>(count));
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = std::cos(proj[i] + shifts_[i]) * scale;
    }
  }
  return out;
}

Embedding FeatureMap::embed(const PointSet& points) const {
  if (points.dim() != input_dim()) {
    throw InputError("point dimension " + std::to_string(points.dim()) +
                     " does not match map input dimension " +
                     std::to_string(input_dim()));
  }
  const std::size_t n = points.size();
  const std::size_t count = spec_.count;
  const double scale =
      spec_.variant == Variant::kCosSin
          ? 1.0 / std::sqrt(static_cast<double>(count))
          : std::sqrt(2.0 / static_cast<double>(count));
  Matrix features(n, output_dim());
  const std::size_t blocks = (n + kEmbedBlock - 1) / kEmbedBlock;

  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t begin = b * kEmbedBlock;
    const std::size_t rows = std::min(kEmbedBlock, n - begin);
    // (rows x d) * (d x count)
    const Matrix proj =
        points.data().middleRows(begin, rows) * omegas_.transpose();
    for (std::size_t r = 0; r < rows; ++r) {
      auto out = features.row(begin + r);
      if (spec_.variant == Variant::kCosSin) {
        for (std::size_t i = 0; i < count; ++i) {
          out[2 * i] = std::cos(proj(r, i)) * scale;
          out[2 * i + 1] = std::sin(proj(r, i)) * scale;
        }
      } else {
        for (std::size_t i = 0; i < count; ++i) {
          out[i] = std::cos(proj(r, i) + shifts_[i]) * scale;
        }
      }
    }
  });
  return Embedding(std::move(features), spec_);
}

double FeatureMap::kernel_from_diff(const VectorRef& diff) const {
  if (spec_.variant != Variant::kCosSin) {
    throw InputError("kernel_from_diff is defined for the cossin variant only");
  }
  return project(diff).array().cos().mean();
}

double FeatureMap::distance_sq_from_diff(const VectorRef& diff) const {
  if (spec_.variant != Variant::kCosSin) {
    throw InputError(
        "distance_sq_from_diff is defined for the cossin variant only");
  }
  return 4.0 * (0.5 * project(diff).array()).sin().square().mean();
}

double approx_kernel(const VectorRef& ex, const VectorRef& ey) {
  check_lengths(ex, ey);
  return ex.dot(ey);
}

double approx_distance(const VectorRef& ex, const VectorRef& ey) {
  check_lengths(ex, ey);
  return (ex - ey).norm();
}

ApproxKernelPair approx_pair(const VectorRef& ex, const VectorRef& ey) {
  return {approx_kernel(ex, ey), approx_distance(ex, ey)};
}

}  // namespace rffkd
