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

#include "rffkd/kernel.h"

#include <cmath>
#include <string>
#include <utility>

#include "rffkd/errors.h"

namespace rffkd {
namespace {

void check_same_dim(const VectorRef& x, const VectorRef& y) {
  if (x.size() != y.size()) {
    throw InputError("dimension mismatch: " + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()));
  }
  if (x.size() == 0) throw InputError("vectors must be non-empty");
}

}  // namespace

Bandwidth::Bandwidth(double sigma) : sigma_(sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw InputError("bandwidth sigma must be finite and > 0, got " +
                     std::to_string(sigma));
  }
}

PointSet::PointSet(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw InputError("point set needs n >= 1 and d >= 1");
  }
  if (!data_.allFinite()) throw InputError("point set has non-finite entries");
}

double kernel_from_norm(double delta_norm) {
  return std::exp(-0.5 * delta_norm * delta_norm);
}

double kernel_distance_sq_from_norm(double delta_norm) {
  return -2.0 * std::expm1(-0.5 * delta_norm * delta_norm);
}

double kernel_distance_from_norm(double delta_norm) {
  return std::sqrt(kernel_distance_sq_from_norm(delta_norm));
}

ScaledDiff scaled_diff(const VectorRef& x, const VectorRef& y,
                       Bandwidth sigma) {
  check_same_dim(x, y);
  ScaledDiff out;
  out.delta = (x - y) / sigma.value();
  out.norm = out.delta.norm();
  return out;
}

double kernel_exact(const VectorRef& x, const VectorRef& y, Bandwidth sigma) {
  check_same_dim(x, y);
  return kernel_from_norm((x - y).norm() / sigma.value());
}

double kernel_distance_sq_exact(const VectorRef& x, const VectorRef& y,
                                Bandwidth sigma) {
  check_same_dim(x, y);
  return kernel_distance_sq_from_norm((x - y).norm() / sigma.value());
}

double kernel_distance_exact(const VectorRef& x, const VectorRef& y,
                             Bandwidth sigma) {
  return std::sqrt(kernel_distance_sq_exact(x, y, sigma));
}

}  // namespace rffkd
