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

#include "rffkd/verify.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "rffkd/dimension_plan.h"
#include "rffkd/errors.h"
#include "rffkd/rng.h"

namespace rffkd {
namespace {

// Child-stream ids. Chi-square draws and the tail-bound check share a
// stream so that at vanishing |delta| they see the same frequencies.
constexpr std::uint64_t kScalarStream = 11;
constexpr std::uint64_t kUnbiasedStream = 12;
constexpr std::uint64_t kMgfStream = 13;
constexpr std::uint64_t kMapStream = 14;
constexpr std::uint64_t kDirectionStream = 15;
constexpr std::uint64_t kPointStream = 16;
constexpr std::uint64_t kSandwichStream = 17;

constexpr double kFloatSlack = 1e-12;
constexpr double kLimitTolerance = 1e-4;
constexpr double kMonotoneRegime = 1e-2;

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double variance() const {
    return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
  double std_err() const {
    return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

double bernoulli_std_err(double p, std::size_t trials) {
  p = std::clamp(p, 0.0, 1.0);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Vector random_unit(const CounterStream& stream, std::uint64_t row,
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

void check_trials(std::size_t trials) {
  if (trials == 0) throw InputError("trial count must be positive");
}

void check_eps(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("epsilon must lie in (0, 1)");
  }
}

}  // namespace

VerifyReport decide(VerifyReport report) {
  const double margin = kStdErrMargin * report.std_err;
  if (report.sided == Sidedness::kOneSided) {
    report.passed = report.statistic <= report.bound + margin;
  } else {
    report.passed = std::abs(report.statistic - report.bound) <= margin;
  }
  return report;
}

VerifyReport check_unbiasedness(double delta_norm, std::size_t samples,
                                std::uint64_t seed) {
  if (!(delta_norm >= 0.0) || !std::isfinite(delta_norm)) {
    throw InputError("delta_norm must be finite and >= 0");
  }
  if (samples < 10000) throw InputError("unbiasedness needs >= 1e4 samples");
  const CounterStream stream = CounterStream(seed).child(kUnbiasedStream);
  Moments acc;
  for (std::size_t i = 0; i < samples; ++i) {
    acc.add(std::cos(stream.normal(i, 0) * delta_norm));
  }
  VerifyReport r;
  r.check_name = "unbiasedness[delta=" + fmt(delta_norm) + "]";
  r.samples = samples;
  r.statistic = acc.mean;
  r.bound = kernel_from_norm(delta_norm);
  r.std_err = acc.std_err();
  r.sided = Sidedness::kTwoSided;
  return decide(r);
}

VerifyReport check_map_unbiasedness(Variant variant, double delta_norm,
                                    std::size_t count, std::size_t maps,
                                    std::uint64_t seed, std::size_t dim) {
  check_trials(maps);
  if (dim == 0) throw InputError("dim must be positive");
  const CounterStream root = CounterStream(seed).child(kMapStream);
  const Vector u = random_unit(CounterStream(seed).child(kDirectionStream), 0, dim);
  const Vector x = Vector::Zero(dim);
  const Vector y = delta_norm * u;
  Moments acc;
  for (std::size_t j = 0; j < maps; ++j) {
    FeatureMapSpec spec;
    spec.variant = variant;
    spec.count = count;
    spec.input_dim = dim;
    spec.seed = root.child(j).key();
    const FeatureMap map = FeatureMap::sample(spec);
    acc.add(approx_kernel(map.map_point(x), map.map_point(y)));
  }
  VerifyReport r;
  r.check_name = "map_unbiasedness[" + std::string(variant_name(variant)) +
                 ";delta=" + fmt(delta_norm) + "]";
  r.samples = maps;
  r.statistic = acc.mean;
  r.bound = kernel_from_norm(delta_norm);
  r.std_err = acc.std_err();
  r.sided = Sidedness::kTwoSided;
  return decide(r);
}

std::vector<double> chi_square_draws(std::size_t t, std::size_t trials,
                                     std::uint64_t seed) {
  if (t == 0) throw InputError("t must be positive");
  const CounterStream stream = CounterStream(seed).child(kScalarStream);
  std::vector<double> out(trials);
  for (std::size_t r = 0; r < trials; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      const double w = stream.normal(r, i);
      sum += w * w;
    }
    out[r] = sum / static_cast<double>(t);
  }
  return out;
}

VerifyReport check_chi_square(double epsilon, double delta, std::size_t trials,
                              std::uint64_t seed, std::size_t t_override) {
  check_trials(trials);
  const std::size_t t =
      t_override ? t_override
                 : plan_per_pair({epsilon, delta, PerPair{}, {}}).pair_count;
  check_eps(epsilon);
  std::size_t violations = 0;
  for (double chi : chi_square_draws(t, trials, seed)) {
    if (chi < 1.0 - epsilon || chi > 1.0 + epsilon) ++violations;
  }
  VerifyReport r;
  r.check_name = "chi_square[eps=" + fmt(epsilon) + ";delta=" + fmt(delta) +
                 ";t=" + std::to_string(t) + "]";
  r.samples = trials;
  r.statistic = static_cast<double>(violations) / static_cast<double>(trials);
  r.bound = delta;
  r.std_err = bernoulli_std_err(delta, trials);
  return decide(r);
}

VerifyReport check_taylor_sandwich(std::size_t grid) {
  if (grid == 0) throw InputError("grid must be positive");
  double worst = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(grid);
    const double dk2 = kernel_distance_sq_from_norm(r);
    const double dk = std::sqrt(dk2);
    const double r2 = r * r;
    worst = std::max(worst, (r2 - 0.25 * r2 * r2 - dk2) / dk2);
    worst = std::max(worst, (dk2 - r2) / dk2);
    worst = std::max(worst, (0.86 * r - dk) / dk);
    worst = std::max(worst, (dk - r) / dk);
  }
  VerifyReport r;
  r.check_name = "taylor_sandwich";
  r.samples = grid;
  r.statistic = worst;
  r.bound = kFloatSlack;
  return decide(r);
}

VerifyReport check_eps_linear(double epsilon, std::size_t grid) {
  check_eps(epsilon);
  if (grid == 0) throw InputError("grid must be positive");
  const double r_max = 2.0 * std::sqrt(epsilon);
  double worst = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(grid);
    const double dk2 = kernel_distance_sq_from_norm(r);
    worst = std::max(worst, ((1.0 - epsilon) * r * r - dk2) / dk2);
    worst = std::max(worst, (dk2 - r * r) / dk2);
  }
  VerifyReport r;
  r.check_name = "eps_linear[eps=" + fmt(epsilon) + "]";
  r.samples = grid;
  r.statistic = worst;
  r.bound = kFloatSlack;
  return decide(r);
}

LimitRatioTrace limit_ratio_trace(const ScaledDiff& delta, const FeatureMap& map,
                                  const std::vector<double>& lambdas) {
  if (map.spec().variant != Variant::kCosSin) {
    throw InputError("limit ratio is defined for the cossin variant");
  }
  if (!(delta.norm > 0.0)) throw InputError("delta must be non-zero");
  for (double l : lambdas) {
    if (l == 0.0) throw InputError("lambda = 0 gives 0/0");
    if (!(l > 0.0 && l <= 1.0)) throw InputError("lambda must lie in (0, 1]");
  }
  const double sigma = map.spec().sigma.value();
  LimitRatioTrace out;
  out.lambdas = lambdas;
  const Vector unit_diff = delta.delta * (sigma / delta.norm);
  out.chi = map.project(unit_diff).squaredNorm() /
            static_cast<double>(map.spec().count);
  out.ratios.reserve(lambdas.size());
  for (double l : lambdas) {
    const double approx = map.distance_sq_from_diff(delta.delta * (l * sigma));
    out.ratios.push_back(approx / kernel_distance_sq_from_norm(l * delta.norm));
  }
  return out;
}

VerifyReport check_limit_ratio(const ScaledDiff& delta, const FeatureMap& map,
                               const std::vector<double>& lambdas) {
  if (lambdas.empty() ||
      *std::min_element(lambdas.begin(), lambdas.end()) > kLimitTolerance) {
    throw InputError("lambdas must include a value <= 1e-4");
  }
  const LimitRatioTrace trace = limit_ratio_trace(delta, map, lambdas);

  std::vector<std::size_t> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lambdas[a] > lambdas[b];
  });
  bool monotone = true;
  double previous_gap = -1.0;
  for (std::size_t idx : order) {
    if (lambdas[idx] > kMonotoneRegime) continue;
    const double gap = std::abs(trace.ratios[idx] - trace.chi) / trace.chi;
    if (previous_gap >= 0.0 && gap > previous_gap + kFloatSlack) monotone = false;
    previous_gap = gap;
  }

  VerifyReport r;
  r.check_name = "limit_ratio[t=" + std::to_string(map.spec().count) + "]";
  r.samples = lambdas.size();
  r.statistic = std::abs(trace.ratios[order.back()] - trace.chi) / trace.chi;
  r.bound = kLimitTolerance;
  r = decide(r);
  if (!monotone) {
    r.passed = false;
    r.note = "gap not monotone as lambda decreases";
  }
  return r;
}

VerifyReport check_mgf_bound(double delta_norm, double s, std::size_t samples,
                             std::uint64_t seed) {
  if (!(delta_norm >= 0.0 && delta_norm <= 1.0)) {
    throw InputError("mgf bound needs 0 <= |delta| <= 1");
  }
  const double r2 = delta_norm * delta_norm;
  if (!(s >= 0.0) || (r2 > 0.0 && s >= 1.0 / (2.0 * r2))) {
    throw InputError("mgf bound needs 0 <= s < 1 / (2 |delta|^2)");
  }
  check_trials(samples);
  const CounterStream stream = CounterStream(seed).child(kMgfStream);
  const double mean_term = kernel_from_norm(delta_norm);
  Moments acc;
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = mean_term - std::cos(stream.normal(i, 0) * delta_norm);
    acc.add(std::exp(s * z));
  }
  VerifyReport r;
  r.check_name = "mgf_bound[delta=" + fmt(delta_norm) + ";s=" + fmt(s) + "]";
  r.samples = samples;
  r.statistic = std::log(acc.mean);
  r.bound = 0.25 * s * s * r2 * r2;
  // Delta method: se(ln m) = se(m) / m.
  r.std_err = acc.std_err() / acc.mean;
  return decide(r);
}

VerifyReport check_spike_preservation(double epsilon, double delta,
                                      std::uint64_t seed, std::size_t trials,
                                      std::size_t dim) {
  check_eps(epsilon);
  if (!(delta > 0.0 && delta < 0.5)) {
    throw InputError("spike preservation needs delta in (0, 1/2)");
  }
  check_trials(trials);
  if (dim == 0) throw InputError("dim must be positive");
  const std::size_t t = plan_per_pair({epsilon, delta, PerPair{}, {}}).pair_count;
  const double threshold = std::sqrt(epsilon) / std::log(1.0 / delta);

  constexpr int kGrid = 25;
  std::vector<double> lambdas(kGrid);
  for (int g = 0; g < kGrid; ++g) {
    lambdas[g] = std::pow(10.0, -6.0 * g / (kGrid - 1));
  }

  const CounterStream maps = CounterStream(seed).child(kMapStream);
  const CounterStream dirs = CounterStream(seed).child(kDirectionStream);
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    FeatureMapSpec spec;
    spec.count = t;
    spec.input_dim = dim;
    spec.seed = maps.child(trial).key();
    const FeatureMap map = FeatureMap::sample(spec);
    ScaledDiff d;
    d.delta = random_unit(dirs, trial, dim) * threshold;
    d.norm = d.delta.norm();
    const LimitRatioTrace trace = limit_ratio_trace(d, map, lambdas);
    double dev = 0.0;
    for (double ratio : trace.ratios) dev = std::max(dev, std::abs(ratio - 1.0));
    worst = std::max(worst, dev);
    if (dev > epsilon) ++failures;
  }
  VerifyReport r;
  r.check_name = "spike_preservation[eps=" + fmt(epsilon) + ";delta=" +
                 fmt(delta) + ";t=" + std::to_string(t) + "]";
  r.samples = trials;
  r.statistic = static_cast<double>(failures) / static_cast<double>(trials);
  r.bound = std::min(1.0, kSpikeFailureConstant * delta);
  r.std_err = bernoulli_std_err(r.bound, trials);
  r.note = "O(delta) constant = " + fmt(kSpikeFailureConstant) +
           "; max |ratio - 1| = " + fmt(worst);
  return decide(r);
}

std::size_t tail_bound_pairs(double delta_norm, double epsilon, double delta) {
  if (!(delta_norm > 0.0 && delta_norm <= 1.0)) {
    throw InputError("tail bound needs 0 < |delta| <= 1");
  }
  check_eps(epsilon);
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  const double dk2 = kernel_distance_sq_from_norm(delta_norm);
  const double r4 = std::pow(delta_norm, 4);
  const double t =
      6.0 / (epsilon * epsilon) * (r4 / (dk2 * dk2)) * std::log(2.0 / delta);
  return static_cast<std::size_t>(std::ceil(t));
}

double tail_violation_frequency(double delta_norm, double epsilon,
                                std::size_t t, std::size_t trials,
                                std::uint64_t seed) {
  check_trials(trials);
  if (t == 0) throw InputError("t must be positive");
  const CounterStream stream = CounterStream(seed).child(kScalarStream);
  const double dk = kernel_distance_from_norm(delta_norm);
  std::size_t violations = 0;
  for (std::size_t r = 0; r < trials; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      const double h = std::sin(0.5 * stream.normal(r, i) * delta_norm);
      sum += h * h;
    }
    const double dhat = std::sqrt(4.0 * sum / static_cast<double>(t));
    if (std::abs(dhat - dk) >= epsilon * dk) ++violations;
  }
  return static_cast<double>(violations) / static_cast<double>(trials);
}

VerifyReport check_tail_bound(double delta_norm, double epsilon, double delta,
                              std::size_t trials, std::uint64_t seed) {
  const std::size_t t = tail_bound_pairs(delta_norm, epsilon, delta);
  VerifyReport r;
  r.check_name = "tail_bound[delta_norm=" + fmt(delta_norm) + ";eps=" +
                 fmt(epsilon) + ";t=" + std::to_string(t) + "]";
  r.samples = trials;
  r.statistic = tail_violation_frequency(delta_norm, epsilon, t, trials, seed);
  r.bound = delta;
  r.std_err = bernoulli_std_err(delta, trials);
  return decide(r);
}

VerifyReport check_pair_relative_error(double distance_over_sigma,
                                       double epsilon, double delta,
                                       std::size_t trials, std::uint64_t seed,
                                       std::size_t dim) {
  check_trials(trials);
  if (dim == 0) throw InputError("dim must be positive");
  if (!(distance_over_sigma > 0.0)) throw InputError("distance must be > 0");
  const std::size_t t = plan_per_pair({epsilon, delta, PerPair{}, {}}).pair_count;
  const CounterStream points = CounterStream(seed).child(kPointStream);
  const CounterStream maps = CounterStream(seed).child(kMapStream);
  Vector x(dim);
  for (std::size_t j = 0; j < dim; ++j) x[j] = points.normal(0, j);
  const Vector y = x + distance_over_sigma * random_unit(points, 1, dim);
  const Bandwidth sigma(1.0);
  const double dk = kernel_distance_exact(x, y, sigma);

  std::size_t violations = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    FeatureMapSpec spec;
    spec.count = t;
    spec.input_dim = dim;
    spec.seed = maps.child(trial).key();
    const FeatureMap map = FeatureMap::sample(spec);
    const double ratio = dk / approx_distance(map.map_point(x), map.map_point(y));
    if (ratio < 1.0 - epsilon || ratio > 1.0 + epsilon) ++violations;
  }
  VerifyReport r;
  r.check_name = "pair_relative_error[r=" + fmt(distance_over_sigma) +
                 ";eps=" + fmt(epsilon) + ";t=" + std::to_string(t) + "]";
  r.samples = trials;
  r.statistic = static_cast<double>(violations) / static_cast<double>(trials);
  r.bound = delta;
  r.std_err = bernoulli_std_err(delta, trials);
  return decide(r);
}

VerifyReport check_expansion_sandwich(std::size_t t, std::size_t trials,
                                      std::uint64_t seed) {
  check_trials(trials);
  if (t == 0) throw InputError("t must be positive");
  const CounterStream stream = CounterStream(seed).child(kSandwichStream);
  std::vector<double> w(t);
  double worst = 0.0;
  for (std::size_t r = 0; r < trials; ++r) {
    double max_abs = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      w[i] = stream.normal(r, i);
      max_abs = std::max(max_abs, std::abs(w[i]));
    }
    const double norm = stream.uniform_open(r, t) / std::max(max_abs, 1.0);
    double chi = 0.0, fourth = 0.0, sin_sum = 0.0;
    for (double wi : w) {
      chi += wi * wi;
      fourth += wi * wi * wi * wi;
      const double h = std::sin(0.5 * wi * norm);
      sin_sum += h * h;
    }
    const double td = static_cast<double>(t);
    chi /= td;
    fourth /= td;
    const double ratio =
        4.0 * sin_sum / td / kernel_distance_sq_from_norm(norm);
    const double lower = chi - norm * norm / 12.0 * fourth;
    const double upper = chi / (1.0 - 0.5 * norm * norm);
    worst = std::max(worst, (lower - ratio) / ratio);
    worst = std::max(worst, (ratio - upper) / ratio);
  }
  VerifyReport r;
  r.check_name = "expansion_sandwich[t=" + std::to_string(t) + "]";
  r.samples = trials;
  r.statistic = worst;
  r.bound = kFloatSlack;
  return decide(r);
}

VerifyReport check_unit_norm(std::size_t n, std::size_t t, std::size_t dim,
                             std::uint64_t seed) {
  check_trials(n);
  const CounterStream points = CounterStream(seed).child(kPointStream);
  Matrix data(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) data(i, j) = 10.0 * points.normal(i, j);
  }
  FeatureMapSpec spec;
  spec.count = t;
  spec.input_dim = dim;
  spec.seed = CounterStream(seed).child(kMapStream).key();
  const Embedding emb = FeatureMap::sample(spec).embed(PointSet(std::move(data)));
  const double worst =
      (emb.features().rowwise().norm().array() - 1.0).abs().maxCoeff();
  VerifyReport r;
  r.check_name = "unit_norm[t=" + std::to_string(t) + "]";
  r.samples = n;
  r.statistic = worst;
  r.bound = kFloatSlack;
  return decide(r);
}

std::vector<VerifyReport> run_battery(std::uint64_t seed) {
  std::vector<VerifyReport> out;
  for (double d : {0.0, 0.1, 1.0, 3.0}) {
    out.push_back(check_unbiasedness(d, 1000000, seed));
  }
  out.push_back(check_map_unbiasedness(Variant::kCosSin, 1.0, 1, 10000, seed));
  out.push_back(check_map_unbiasedness(Variant::kCosShift, 1.0, 1, 10000, seed));
  out.push_back(check_unit_norm(10000, 64, 10, seed));
  out.push_back(check_chi_square(0.3, 0.2, 1000, seed));
  out.push_back(check_taylor_sandwich(10000));
  out.push_back(check_eps_linear(0.1, 10000));
  out.push_back(check_mgf_bound(0.5, 1.0, 1000000, seed));
  out.push_back(check_mgf_bound(1.0, 0.4, 1000000, seed));
  {
    FeatureMapSpec spec;
    spec.count = 64;
    spec.input_dim = 5;
    spec.seed = seed;
    const FeatureMap map = FeatureMap::sample(spec);
    const Vector x = Vector::LinSpaced(5, 0.1, 0.9);
    const ScaledDiff d = scaled_diff(x, Vector::Zero(5), Bandwidth(1.0));
    out.push_back(check_limit_ratio(d, map, {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}));
  }
  out.push_back(check_pair_relative_error(1.0, 0.25, 0.1, 1000, seed));
  out.push_back(check_spike_preservation(0.2, 0.1, seed));
  out.push_back(check_tail_bound(0.5, 0.25, 0.1, 1000, seed));
  out.push_back(check_expansion_sandwich(64, 1000, seed));
  return out;
}

}  // namespace rffkd
