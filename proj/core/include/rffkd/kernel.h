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

#ifndef RFFKD_KERNEL_H_
#define RFFKD_KERNEL_H_

// Exact Gaussian kernel K(x, y) = exp(-|x - y|^2 / (2 sigma^2)) and the
// kernel distance D_K(x, y) = sqrt(K(x,x) + K(y,y) - 2 K(x,y)) it induces.
// Everything downstream is phrased in terms of the scaled difference
// delta = (x - y) / sigma, so the scalar helpers below take |delta| directly.

#include <cstddef>

#include "rffkd/types.h"

namespace rffkd {

class Bandwidth {
 public:
  // Throws InputError unless sigma is finite and > 0.
  explicit Bandwidth(double sigma);

  double value() const { return sigma_; }

 private:
  double sigma_;
};

struct ScaledDiff {
  Vector delta;
  double norm = 0.0;
};

// n x d matrix of finite reals with n >= 1 and d >= 1.
class PointSet {
 public:
  explicit PointSet(Matrix data);

  std::size_t size() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(data_.cols()); }
  const Matrix& data() const { return data_; }
  auto point(std::size_t i) const { return data_.row(i).transpose(); }

 private:
  Matrix data_;
};

// exp(-|delta|^2 / 2).
double kernel_from_norm(double delta_norm);
// D_K^2 = 2 - 2 exp(-|delta|^2/2), evaluated as -2 expm1(-|delta|^2/2) so
// that it keeps full relative precision as |delta| -> 0.
double kernel_distance_sq_from_norm(double delta_norm);
double kernel_distance_from_norm(double delta_norm);

double kernel_exact(const VectorRef& x, const VectorRef& y, Bandwidth sigma);
double kernel_distance_exact(const VectorRef& x, const VectorRef& y,
                             Bandwidth sigma);
double kernel_distance_sq_exact(const VectorRef& x, const VectorRef& y,
                                Bandwidth sigma);
ScaledDiff scaled_diff(const VectorRef& x, const VectorRef& y, Bandwidth sigma);

}  // namespace rffkd

#endif  // RFFKD_KERNEL_H_
