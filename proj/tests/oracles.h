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

// Independent reference computations for the unit tests. Everything here is
// written in long double with textbook algorithms and shares no code with
// the library under test.

#ifndef RFFKD_TESTS_ORACLES_H_
#define RFFKD_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using LMat = std::vector<std::vector<long double>>;

inline LMat zeros(std::size_t r, std::size_t c) {
  return LMat(r, std::vector<long double>(c, 0.0L));
}

inline long double gaussian(const std::vector<long double>& x,
                            const std::vector<long double>& y,
                            long double sigma) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double d = (x[i] - y[i]) / sigma;
    s += d * d;
  }
  return std::exp(-s / 2.0L);
}

// H G H with H = I - 11^T / n, evaluated as explicit matrix products.
inline LMat double_center(const LMat& g) {
  const std::size_t n = g.size();
  LMat h = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h[i][j] = (i == j ? 1.0L : 0.0L) - 1.0L / static_cast<long double>(n);
    }
  }
  auto mul = [n](const LMat& a, const LMat& b) {
    LMat c = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  return mul(mul(h, g), h);
}

// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted descending.
inline std::vector<long double> jacobi_eigenvalues(LMat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0.0L;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-36L) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        const long double t =
            (theta >= 0 ? 1.0L : -1.0L) /
            (std::fabs(theta) + std::sqrt(theta * theta + 1.0L));
        const long double c = 1.0L / std::sqrt(t * t + 1.0L);
        const long double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<long double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// sum_{i > k} max(lambda_i, 0) of a symmetric PSD matrix.
inline long double tail_sum(const LMat& sym, std::size_t k) {
  const auto ev = jacobi_eigenvalues(sym);
  long double s = 0.0L;
  for (std::size_t i = k; i < ev.size(); ++i) s += std::max(ev[i], 0.0L);
  return s;
}

// |Q - Q V_k V_k^T|_F^2 for an n x m matrix: the Gram of the centered
// columns has the squared singular values as eigenvalues, so the residual is
// the sum of the trailing ones.
inline long double projection_residual(const LMat& q, std::size_t k) {
  const std::size_t n = q.size(), m = q[0].size();
  LMat qtq = zeros(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < n; ++i) qtq[a][b] += q[i][a] * q[i][b];
  return tail_sum(qtq, k);
}

}  // namespace oracle

#endif  // RFFKD_TESTS_ORACLES_H_
