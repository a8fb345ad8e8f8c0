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

#include "rffkd/experiments.h"

#include <cmath>
#include <string>

#include "rffkd/errors.h"
#include "rffkd/feature_map.h"
#include "rffkd/rng.h"

namespace rffkd {
namespace {

constexpr std::uint64_t kPairStream = 21;
constexpr std::uint64_t kMapStream = 22;
constexpr std::uint64_t kCenterStream = 23;
constexpr std::uint64_t kNoiseStream = 24;
constexpr std::size_t kMaxGridEntries = 100000;

Vector unit_direction(const CounterStream& stream, std::uint64_t row,
                      std::size_t dim) {
  Vector u(dim);
  for (std::size_t j = 0; j < dim; ++j) u[j] = stream.normal(row, j);
  const double norm = u.norm();
  if (norm == 0.0) {
    u.setZero();
    u[0] = 1.0;
    return u;
  }
  return u / norm;
}

}  // namespace

std::vector<PointPair> gen_pairs(const PairExperimentConfig& cfg,
                                 std::uint64_t stream_id) {
  if (cfg.dim == 0) throw InputError("pair dimension must be >= 1");
  if (cfg.n_pairs == 0) throw InputError("n_pairs must be >= 1");
  if (!(cfg.dist_min > 0.0) || !(cfg.dist_min <= cfg.dist_max) ||
      !std::isfinite(cfg.dist_max)) {
    throw InputError("need 0 < dist_min <= dist_max < inf");
  }
  if (!(cfg.ball_radius >= 0.0)) throw InputError("ball_radius must be >= 0");

  const CounterStream root =
      CounterStream(cfg.seed).child(kPairStream).child(stream_id);
  const CounterStream x_dir = root.child(1);
  const CounterStream y_dir = root.child(2);
  const CounterStream scalars = root.child(3);
  const double log_min = std::log(cfg.dist_min);
  const double log_span = std::log(cfg.dist_max) - log_min;
  const double inv_dim = 1.0 / static_cast<double>(cfg.dim);

  std::vector<PointPair> out(cfg.n_pairs);
  for (std::size_t i = 0; i < cfg.n_pairs; ++i) {
    PointPair& p = out[i];
    const double radius =
        cfg.ball_radius * std::pow(scalars.uniform_open(i, 0), inv_dim);
    p.x = radius * unit_direction(x_dir, i, cfg.dim);
    const double target =
        log_span == 0.0
            ? cfg.dist_min
            : std::exp(log_min + log_span * scalars.uniform_open(i, 1));
    p.y = p.x + target * unit_direction(y_dir, i, cfg.dim);
    // The realized distance; it differs from `target` only by the rounding
    // of x + r u.
    p.r = (p.x - p.y).norm();
  }
  return out;
}

std::vector<PairExperimentReport> pairs_experiment(
    const PairExperimentConfig& cfg,
    const std::function<void(const PairExperimentReport&)>& sink) {
  std::vector<PairExperimentReport> reports;
  reports.reserve(cfg.t_list.size());
  const CounterStream maps = CounterStream(cfg.seed).child(kMapStream);
  for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
    const std::size_t t = cfg.t_list[ti];
    const std::vector<PointPair> pairs = gen_pairs(cfg, ti);
    Matrix xs(pairs.size(), cfg.dim), ys(pairs.size(), cfg.dim);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      xs.row(i) = pairs[i].x.transpose();
      ys.row(i) = pairs[i].y.transpose();
    }
    FeatureMapSpec spec;
    spec.variant = Variant::kCosSin;
    spec.sigma = cfg.sigma;
    spec.count = t;
    spec.input_dim = cfg.dim;
    spec.seed = maps.child(ti).key();
    const FeatureMap map = FeatureMap::sample(spec);
    const Embedding ex = map.embed(PointSet(std::move(xs)));
    const Embedding ey = map.embed(PointSet(std::move(ys)));

    PairExperimentReport rep;
    rep.t = t;
    rep.records.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      PairRecord rec;
      rec.r = pairs[i].r;
      rec.d_exact = kernel_distance_exact(pairs[i].x, pairs[i].y, cfg.sigma);
      rec.d_approx = approx_distance(ex.row(i), ey.row(i));
      if (rec.d_exact == 0.0 || rec.d_approx == 0.0) {
        ++rep.excluded;
        continue;
      }
      rec.ratio = rec.d_exact / rec.d_approx;
      rep.eps_max = std::max(rep.eps_max, std::abs(rec.ratio - 1.0));
      rep.records.push_back(rec);
    }
    if (sink) sink(rep);
    reports.push_back(std::move(rep));
  }
  return reports;
}

double mean_deviation(const PairExperimentReport& report, double sigma,
                      double lo, double hi) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const PairRecord& rec : report.records) {
    const double scaled = rec.r / sigma;
    if (scaled >= lo && scaled < hi) {
      sum += std::abs(rec.ratio - 1.0);
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : std::nan("");
}

std::size_t grid_stress_count(std::size_t d, double half_width, Bandwidth sigma,
                              double epsilon) {
  if (d == 0) throw InputError("grid dimension must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("epsilon must lie in (0, 1)");
  }
  if (!(half_width >= 0.0) || !std::isfinite(half_width)) {
    throw InputError("grid half-width must be finite and >= 0");
  }
  const double side = sigma.value() * std::sqrt(2.0 * std::log(1.0 / epsilon));
  // Relative slack so that half_width = k * side exactly keeps the k-th layer.
  const double per_axis_steps = std::floor(half_width / side * (1.0 + 1e-12));
  const double per_axis = 2.0 * per_axis_steps + 1.0;
  const double total = std::pow(per_axis, static_cast<double>(d));
  if (total * static_cast<double>(d) > static_cast<double>(kMaxGridEntries)) {
    throw InputError("grid too large: " + std::to_string(total) + " points in " +
                     std::to_string(d) + " dimensions exceeds 1e5 entries");
  }
  return static_cast<std::size_t>(total);
}

PointSet gen_grid_stress(std::size_t d, double half_width, Bandwidth sigma,
                         double epsilon) {
  const std::size_t count = grid_stress_count(d, half_width, sigma, epsilon);
  const double side = sigma.value() * std::sqrt(2.0 * std::log(1.0 / epsilon));
  const auto steps = static_cast<long>(std::floor(half_width / side * (1.0 + 1e-12)));
  Matrix out(count, d);
  std::vector<long> index(d, -steps);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t k = 0; k < d; ++k) {
      out(p, k) = static_cast<double>(index[k]) * side;
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (++index[k] <= steps) break;
      index[k] = -steps;
    }
  }
  return PointSet(std::move(out));
}

Mixture synth_dataset(std::size_t n, std::size_t d, std::size_t clusters,
                      std::uint64_t seed, double spread) {
  if (n == 0 || d == 0) throw InputError("synthetic dataset needs n, d >= 1");
  if (clusters == 0) throw InputError("clusters must be >= 1");
  if (!(spread >= 0.0)) throw InputError("spread must be >= 0");
  const CounterStream root(seed);
  const CounterStream centers_stream = root.child(kCenterStream);
  const CounterStream noise = root.child(kNoiseStream);

  Matrix centers(clusters, d);
  for (std::size_t c = 0; c < clusters; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      centers(c, j) = spread * centers_stream.normal(c, j);
    }
  }
  Matrix data(n, d);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i % clusters;
    for (std::size_t j = 0; j < d; ++j) {
      data(i, j) = centers(labels[i], j) + noise.normal(i, j);
    }
  }
  return Mixture{PointSet(std::move(data)), std::move(centers), std::move(labels)};
}

}  // namespace rffkd
