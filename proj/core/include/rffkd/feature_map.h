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

#ifndef RFFKD_FEATURE_MAP_H_
#define RFFKD_FEATURE_MAP_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rffkd/kernel.h"
#include "rffkd/types.h"

namespace rffkd {

// kCosSin:   phi_hat(x) = [cos(w_i.x); sin(w_i.x)]_{i<t} / sqrt(t), m = 2t.
// kCosShift: phi_tilde(x) = [cos(w_i.x + g_i)]_{i<m} * sqrt(2 / m), with
//            g_i ~ Unif(0, 2 pi]. The sqrt(2) makes E<phi(x), phi(y)> = K(x, y);
//            rows are not unit-norm.
enum class Variant { kCosSin, kCosShift };

std::string_view variant_name(Variant v);
// Accepts "cossin" / "cosshift"; throws InputError otherwise.
Variant parse_variant(std::string_view name);

struct FeatureMapSpec {
  Variant variant = Variant::kCosSin;
  Bandwidth sigma{1.0};
  // Number of frequencies: pair count t for kCosSin, feature count m for
  // kCosShift.
  std::size_t count = 0;
  std::size_t input_dim = 0;
  std::uint64_t seed = 0;

  std::size_t output_dim() const {
    return variant == Variant::kCosSin ? 2 * count : count;
  }
};

class Embedding {
 public:
  Embedding(Matrix features, FeatureMapSpec spec)
      : features_(std::move(features)), spec_(spec) {}

  const Matrix& features() const { return features_; }
  const FeatureMapSpec& spec() const { return spec_; }
  std::size_t size() const { return static_cast<std::size_t>(features_.rows()); }
  auto row(std::size_t i) const { return features_.row(i).transpose(); }

 private:
  Matrix features_;
  FeatureMapSpec spec_;
};

// An immutable realization of phi_hat or phi_tilde. Row i of omegas() is
// w_i ~ N_d(0, sigma^-2 I); entry (i, j) is a pure function of
// (seed, i, j), so the map is reproducible from its FeatureMapSpec alone.
class FeatureMap {
 public:
  // Throws InputError if count == 0 or input_dim == 0.
  static FeatureMap sample(const FeatureMapSpec& spec);

  const FeatureMapSpec& spec() const { return spec_; }
  const Matrix& omegas() const { return omegas_; }
  // Empty for kCosSin.
  const Vector& shifts() const { return shifts_; }
  std::size_t input_dim() const { return spec_.input_dim; }
  std::size_t output_dim() const { return spec_.output_dim(); }

  Vector map_point(const VectorRef& x) const;
  Embedding embed(const PointSet& points) const;

  // w_i . diff for every frequency.
  Vector project(const VectorRef& diff) const;

  // kCosSin only. (1/t) sum_i cos(w_i . (x - y)), the closed form of
  // <phi_hat(x), phi_hat(y)>.
  double kernel_from_diff(const VectorRef& diff) const;
  // kCosSin only. |phi_hat(x) - phi_hat(y)|^2 evaluated as
  // (4/t) sum_i sin^2(w_i . (x - y) / 2), which stays accurate when
  // |x - y| is many orders of magnitude below sigma.
  double distance_sq_from_diff(const VectorRef& diff) const;

 private:
  FeatureMap(FeatureMapSpec spec, Matrix omegas, Vector shifts)
      : spec_(spec), omegas_(std::move(omegas)), shifts_(std::move(shifts)) {}

  FeatureMapSpec spec_;
  Matrix omegas_;
  Vector shifts_;
};

inline FeatureMap sample_map(const FeatureMapSpec& spec) {
  return FeatureMap::sample(spec);
}

struct ApproxKernelPair {
  double k_hat = 0.0;
  double d_hat = 0.0;
};

// <ex, ey>.
double approx_kernel(const VectorRef& ex, const VectorRef& ey);
// |ex - ey|.
double approx_distance(const VectorRef& ex, const VectorRef& ey);
ApproxKernelPair approx_pair(const VectorRef& ex, const VectorRef& ey);

}  // namespace rffkd

#endif  // RFFKD_FEATURE_MAP_H_
