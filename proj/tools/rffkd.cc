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

// rffkd: command-line front end for the random Fourier feature library.
//
// Every subcommand writes CSV (or RFFM for matrices) to stdout, or to the path
// given by --output. Records are flushed as they are produced.

#include <charconv>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rffkd/dimension_plan.h"
#include "rffkd/errors.h"
#include "rffkd/experiments.h"
#include "rffkd/feature_map.h"
#include "rffkd/kpca.h"
#include "rffkd/matrix_io.h"
#include "rffkd/verify.h"

namespace {

using rffkd::Matrix;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

struct Globals {
  std::uint64_t seed = 1;
  double sigma = 1.0;
  std::size_t t = 0;
  std::string variant = "cossin";
  std::string output;
  bool header = false;
};

// Shortest representation that round-trips.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw rffkd::IoError("cannot open '" + path + "' for writing", 0);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  void line(const std::string& s) { out() << s << '\n' << std::flush; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<std::size_t> t_values(const std::vector<std::size_t>& list,
                                  const Globals& g) {
  if (!list.empty()) return list;
  if (g.t > 0) return {g.t};
  throw rffkd::InputError("no t given: pass --t or --t-list");
}

// embed -----------------------------------------------------------------

struct EmbedArgs {
  std::string input;
  std::string in_format = "csv";
  std::string out_format = "csv";
};

int run_embed(const Globals& g, const EmbedArgs& a) {
  if (g.t == 0) throw rffkd::InputError("embed needs --t > 0");
  const rffkd::PointSet points(
      rffkd::read_matrix(a.input, rffkd::parse_matrix_format(a.in_format), g.header));
  rffkd::FeatureMapSpec spec;
  spec.variant = rffkd::parse_variant(g.variant);
  spec.sigma = rffkd::Bandwidth(g.sigma);
  spec.count = g.t;
  spec.input_dim = points.dim();
  spec.seed = g.seed;
  const rffkd::Embedding e = rffkd::sample_map(spec).embed(points);
  Sink sink(g.output);
  if (rffkd::parse_matrix_format(a.out_format) == rffkd::MatrixFormat::kRaw) {
    rffkd::write_raw(sink.out(), e.features());
  } else {
    rffkd::write_csv(sink.out(), e.features());
  }
  sink.out().flush();
  return 0;
}

// dims ------------------------------------------------------------------

struct DimsArgs {
  double epsilon = 0.1;
  double delta = 0.1;
  std::string regime = "per-pair";
  std::size_t n = 0;
  std::size_t d = 0;
  double diameter = 0.0;
  std::optional<double> constant;
};

int run_dims(const Globals& g, const DimsArgs& a) {
  rffkd::DimensionRequest req;
  req.epsilon = a.epsilon;
  req.delta = a.delta;
  req.constant_override = a.constant;
  if (a.regime == "per-pair") {
    req.regime = rffkd::PerPair{};
  } else if (a.regime == "finite") {
    req.regime = rffkd::FinitePoints{a.n};
  } else if (a.regime == "diameter") {
    req.regime = rffkd::BoundedDiameter{a.d, a.diameter};
  } else {
    throw rffkd::InputError("unknown regime '" + a.regime + "'");
  }
  const rffkd::DimensionPlan p = rffkd::plan(req);
  Sink sink(g.output);
  sink.line("regime,epsilon,delta,t,m,unrounded,formula");
  sink.line(rffkd::regime_name(p.regime) + "," + num(a.epsilon) + "," +
            num(a.delta) + "," + std::to_string(p.pair_count) + "," +
            std::to_string(p.output_dim) + "," + num(p.unrounded) + ",\"" +
            p.formula_note + "\"");
  return 0;
}

// kpca ------------------------------------------------------------------

struct DataArgs {
  std::string input;
  std::string format = "csv";
  std::size_t n = 500;
  std::size_t d = 20;
  std::size_t clusters = 10;
};

rffkd::PointSet load_or_synth(const Globals& g, const DataArgs& a) {
  if (!a.input.empty()) {
    return rffkd::PointSet(
        rffkd::read_matrix(a.input, rffkd::parse_matrix_format(a.format), g.header));
  }
  return rffkd::synth_dataset(a.n, a.d, a.clusters, g.seed).points;
}

struct KpcaArgs {
  DataArgs data;
  std::size_t k = 40;
  std::size_t trials = 10;
  std::vector<std::size_t> t_list;
};

int run_kpca(const Globals& g, const KpcaArgs& a) {
  const rffkd::PointSet points = load_or_synth(g, a.data);
  rffkd::KpcaConfig cfg;
  cfg.sigma = rffkd::Bandwidth(g.sigma);
  cfg.k = a.k;
  cfg.trials = a.trials;
  cfg.seed = g.seed;
  const std::vector<std::size_t> ts = t_values(a.t_list, g);
  Sink sink(g.output);
  sink.line("sigma,t,k,R_exact,R_approx,rel_err");
  for (std::size_t t : ts) {
    cfg.t_list = {t};
    for (const rffkd::PcaReport& r : rffkd::kpca_experiment(points, cfg)) {
      sink.line(num(r.sigma) + "," + std::to_string(r.t) + "," +
                std::to_string(r.k) + "," + num(r.r_exact) + "," +
                num(r.r_approx) + "," + num(r.rel_err_mean));
    }
  }
  return 0;
}

// pairs -----------------------------------------------------------------

struct PairsArgs {
  rffkd::PairExperimentConfig cfg;
  std::vector<std::size_t> t_list;
};

int run_pairs(const Globals& g, PairsArgs a) {
  a.cfg.sigma = rffkd::Bandwidth(g.sigma);
  a.cfg.seed = g.seed;
  if (!a.t_list.empty() || g.t > 0) a.cfg.t_list = t_values(a.t_list, g);
  Sink sink(g.output);
  sink.line("t,r,d_exact,d_approx,ratio");
  rffkd::pairs_experiment(a.cfg, [&](const rffkd::PairExperimentReport& rep) {
    const std::string t = std::to_string(rep.t);
    for (const rffkd::PairRecord& r : rep.records) {
      sink.out() << t << ',' << num(r.r) << ',' << num(r.d_exact) << ','
                 << num(r.d_approx) << ',' << num(r.ratio) << '\n';
    }
    sink.out().flush();
    std::cerr << "t=" << rep.t << " eps_max=" << num(rep.eps_max)
              << " excluded=" << rep.excluded << '\n';
  });
  return 0;
}

// verify ----------------------------------------------------------------

int run_verify(const Globals& g) {
  Sink sink(g.output);
  sink.line("name,statistic,bound,pass");
  bool all = true;
  for (const rffkd::VerifyReport& r : rffkd::run_battery(g.seed)) {
    all = all && r.passed;
    sink.line(r.check_name + "," + num(r.statistic) + "," + num(r.bound) + "," +
              (r.passed ? "1" : "0"));
  }
  return all ? 0 : kExitVerifyFailed;
}

// gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind = "mixture";
  std::size_t n = 2000;
  std::size_t d = 256;
  std::size_t clusters = 10;
  double half_width = 10.0;
  double epsilon = 0.25;
  std::string format = "csv";
};

int run_gen(const Globals& g, const GenArgs& a) {
  Matrix m;
  if (a.kind == "mixture") {
    m = rffkd::synth_dataset(a.n, a.d, a.clusters, g.seed).points.data();
  } else if (a.kind == "grid") {
    m = rffkd::gen_grid_stress(a.d, a.half_width, rffkd::Bandwidth(g.sigma),
                               a.epsilon)
            .data();
  } else {
    throw rffkd::InputError("unknown kind '" + a.kind + "' (mixture or grid)");
  }
  Sink sink(g.output);
  if (rffkd::parse_matrix_format(a.format) == rffkd::MatrixFormat::kRaw) {
    rffkd::write_raw(sink.out(), m);
  } else {
    rffkd::write_csv(sink.out(), m);
  }
  sink.out().flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian random Fourier features with kernel-distance guarantees"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--sigma", g.sigma, "Gaussian bandwidth")->capture_default_str();
  app.add_option("--t", g.t, "Frequency count (pairs for cossin)");
  app.add_option("--variant", g.variant, "Feature map variant")
      ->check(CLI::IsMember({"cossin", "cosshift"}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Output path (default stdout)");
  app.add_flag("--header", g.header, "Input CSV files carry a header row");
  app.fallthrough();

  EmbedArgs embed;
  auto* c_embed = app.add_subcommand("embed", "Embed a matrix of points");
  c_embed->add_option("-i,--input", embed.input, "Input matrix")->required();
  c_embed->add_option("--format", embed.in_format, "csv or raw")->capture_default_str();
  c_embed->add_option("--out-format", embed.out_format, "csv or raw")
      ->capture_default_str();

  DimsArgs dims;
  auto* c_dims = app.add_subcommand("dims", "Plan the embedding dimension");
  c_dims->add_option("--epsilon", dims.epsilon)->capture_default_str();
  c_dims->add_option("--delta", dims.delta)->capture_default_str();
  c_dims->add_option("--regime", dims.regime)
      ->check(CLI::IsMember({"per-pair", "finite", "diameter"}))
      ->capture_default_str();
  c_dims->add_option("--n", dims.n, "Point count (finite)");
  c_dims->add_option("--d", dims.d, "Ambient dimension (diameter)");
  c_dims->add_option("--M", dims.diameter, "Diameter over sigma (diameter)");
  c_dims->add_option("--constant", dims.constant, "Override the leading constant");

  KpcaArgs kpca;
  auto* c_kpca = app.add_subcommand("kpca", "Exact vs approximate kernel PCA residual");
  c_kpca->add_option("-i,--input", kpca.data.input, "Input matrix (default: synthetic)");
  c_kpca->add_option("--format", kpca.data.format)->capture_default_str();
  c_kpca->add_option("--n", kpca.data.n, "Synthetic point count")->capture_default_str();
  c_kpca->add_option("--d", kpca.data.d, "Synthetic dimension")->capture_default_str();
  c_kpca->add_option("--clusters", kpca.data.clusters)->capture_default_str();
  c_kpca->add_option("--k", kpca.k)->capture_default_str();
  c_kpca->add_option("--trials", kpca.trials)->capture_default_str();
  c_kpca->add_option("--t-list", kpca.t_list, "Comma-separated t values")
      ->delimiter(',');

  PairsArgs pairs;
  auto* c_pairs = app.add_subcommand("pairs", "Random-pair relative error sweep");
  c_pairs->add_option("--n-pairs", pairs.cfg.n_pairs)->capture_default_str();
  c_pairs->add_option("--dim", pairs.cfg.dim)->capture_default_str();
  c_pairs->add_option("--radius", pairs.cfg.ball_radius)->capture_default_str();
  c_pairs->add_option("--dist-min", pairs.cfg.dist_min)->capture_default_str();
  c_pairs->add_option("--dist-max", pairs.cfg.dist_max)->capture_default_str();
  c_pairs->add_option("--t-list", pairs.t_list, "Comma-separated t values")
      ->delimiter(',');

  auto* c_verify = app.add_subcommand("verify", "Run the statistical check battery");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate synthetic data or the grid stress set");
  c_gen->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"mixture", "grid"}))
      ->capture_default_str();
  c_gen->add_option("--n", gen.n)->capture_default_str();
  c_gen->add_option("--d", gen.d)->capture_default_str();
  c_gen->add_option("--clusters", gen.clusters)->capture_default_str();
  c_gen->add_option("--M", gen.half_width, "Grid half-width")->capture_default_str();
  c_gen->add_option("--epsilon", gen.epsilon)->capture_default_str();
  c_gen->add_option("--format", gen.format, "csv or raw")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_embed->parsed()) return run_embed(g, embed);
    if (c_dims->parsed()) return run_dims(g, dims);
    if (c_kpca->parsed()) return run_kpca(g, kpca);
    if (c_pairs->parsed()) return run_pairs(g, pairs);
    if (c_verify->parsed()) return run_verify(g);
    if (c_gen->parsed()) return run_gen(g, gen);
  } catch (const rffkd::IoError& e) {
    std::cerr << "rffkd: " << e.what() << '\n';
    return kExitIo;
  } catch (const rffkd::InputError& e) {
    std::cerr << "rffkd: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
