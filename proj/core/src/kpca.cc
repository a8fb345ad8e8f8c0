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

#include "rffkd/kpca.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rffkd/errors.h"
#include "rffkd/parallel.h"
#include "rffkd/rng.h"

namespace rffkd {
namespace {

constexpr double kEigenClamp = 1e-10;

// Indices of `values` ordered by descending value, ties by ascending index.
std::vector<Eigen::Index> descending_order(const Vector& values) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values[a] > values[b];
  });
  return order;
}

}  // namespace

GramMatrix gram_exact(const PointSet& points, Bandwidth sigma) {
  const std::size_t n = points.size();
  if (n < 2) throw InputError("gram_exact needs at least 2 points");
  const Matrix& x = points.data();
  const double inv_sigma = 1.0 / sigma.value();
  GramMatrix out;
  out.g.resize(n, n);
  parallel_for(n, [&](std::size_t i) {
    out.g(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double r = (x.row(i) - x.row(j)).norm() * inv_sigma;
      out.g(i, j) = kernel_from_norm(r);
    }
  });
  out.g.triangularView<Eigen::StrictlyUpper>() = out.g.transpose();
  return out;
}

GramMatrix gram_from_embedding(const Embedding& embedding) {
  const Matrix& f = embedding.features();
  GramMatrix out;
  out.g = f * f.transpose();
  return out;
}

GramMatrix center_gram(const GramMatrix& gram) {
  if (gram.centered) throw InputError("Gram matrix is already centered");
  const Eigen::Index n = gram.g.rows();
  if (n != gram.g.cols()) throw InputError("Gram matrix must be square");
  const Eigen::VectorXd row_means = gram.g.rowwise().mean();
  const Eigen::RowVectorXd col_means = gram.g.colwise().mean();
  const double grand_mean = gram.g.mean();
  GramMatrix out;
  out.centered = true;
  out.g = gram.g;
  out.g.colwise() -= row_means;
  out.g.rowwise() -= col_means;
  out.g.array() += grand_mean;
  return out;
}

Vector descending_eigenvalues(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InputError("eigendecomposition did not converge");
  }
  Vector ev = solver.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

double exact_tail_energy(const GramMatrix& centered, std::size_t k) {
  const auto n = static_cast<std::size_t>(centered.g.rows());
  if (k >= n) {
    throw InputError("k = " + std::to_string(k) + " must be below n = " +
                     std::to_string(n));
  }
  const Vector ev = descending_eigenvalues(centered.g);
  const double floor = kEigenClamp * std::max(ev[0], 0.0);
  double tail = 0.0;
  for (std::size_t i = k; i < n; ++i) {
    if (ev[i] > floor) tail += ev[i];
  }
  return tail;
}

Eigen::MatrixXd center_columns(const Matrix& features) {
  Eigen::MatrixXd q = features;
  q.rowwise() -= q.colwise().mean();
  return q;
}

double projection_residual(const Eigen::MatrixXd& q, std::size_t k) {
  const auto limit = static_cast<std::size_t>(std::min(q.rows(), q.cols()));
  if (k >= limit) {
    throw InputError("k = " + std::to_string(k) + " must be below min(n, m) = " +
                     std::to_string(limit));
  }
  if (k == 0) return q.squaredNorm();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const auto order = descending_order(s);
  Eigen::MatrixXd vk(q.cols(), k);
  for (std::size_t i = 0; i < k; ++i) vk.col(i) = svd.matrixV().col(order[i]);
  const Eigen::MatrixXd coords = q * vk;
  return (q - coords * vk.transpose()).squaredNorm();
}

double approx_residual(const PointSet& points, const FeatureMap& map,
                       std::size_t k) {
  const Embedding emb = map.embed(points);
  return projection_residual(center_columns(emb.features()), k);
}

Eigen::MatrixXd exact_feature_matrix(const GramMatrix& centered) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered.g);
  if (solver.info() != Eigen::Success) {
    throw InputError("eigendecomposition did not converge");
  }
  const Vector& ev = solver.eigenvalues();
  const auto order = descending_order(ev);
  const double floor = kEigenClamp * std::max(ev.maxCoeff(), 0.0);
  Eigen::MatrixXd out(centered.g.rows(), centered.g.cols());
  for (Eigen::Index c = 0; c < ev.size(); ++c) {
    const double lambda = ev[order[c]];
    const double scale = lambda > floor ? std::sqrt(lambda) : 0.0;
    out.col(c) = solver.eigenvectors().col(order[c]) * scale;
  }
  return out;
}

std::vector<PcaReport> kpca_experiment(const PointSet& points,
                                       const KpcaConfig& config) {
  if (config.t_list.empty()) throw InputError("t_list must not be empty");
  if (config.trials == 0) throw InputError("trials must be positive");
  const std::size_t n = points.size();
  if (config.k >= n) throw InputError("k must be below the number of points");
  for (std::size_t t : config.t_list) {
    if (t == 0 || config.k >= std::min(n, 2 * t)) {
      throw InputError("k must be below min(n, 2t) for t = " +
                       std::to_string(t));
    }
  }

  const double r_exact =
      exact_tail_energy(center_gram(gram_exact(points, config.sigma)), config.k);

  const std::size_t trials = config.trials;
  const std::size_t items = config.t_list.size() * trials;
  std::vector<double> residuals(items);
  const CounterStream root(config.seed);
  parallel_for(items, [&](std::size_t item) {
    const std::size_t t = config.t_list[item / trials];
    const std::size_t trial = item % trials;
    FeatureMapSpec spec;
    spec.variant = Variant::kCosSin;
    spec.sigma = config.sigma;
    spec.count = t;
    spec.input_dim = points.dim();
    spec.seed = root.child(t).child(trial).key();
    residuals[item] = approx_residual(points, FeatureMap::sample(spec), config.k);
  });

  std::vector<PcaReport> reports;
  reports.reserve(config.t_list.size());
  for (std::size_t ti = 0; ti < config.t_list.size(); ++ti) {
    PcaReport rep;
    rep.k = config.k;
    rep.t = config.t_list[ti];
    rep.sigma = config.sigma.value();
    rep.trials = trials;
    rep.r_exact = r_exact;
    double sum = 0.0;
    double rel_sum = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const double r = residuals[ti * trials + trial];
      sum += r;
      rel_sum += std::abs(r / r_exact - 1.0);
    }
    rep.r_approx = sum / static_cast<double>(trials);
    rep.degenerate = !(r_exact > 0.0);
    if (rep.degenerate) {
      rep.rel_err = std::numeric_limits<double>::quiet_NaN();
      rep.rel_err_mean = std::numeric_limits<double>::quiet_NaN();
    } else {
      rep.rel_err = std::abs(rep.r_approx / r_exact - 1.0);
      rep.rel_err_mean = rel_sum / static_cast<double>(trials);
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace rffkd
