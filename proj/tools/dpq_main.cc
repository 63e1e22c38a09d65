//
// Copyright 2026 The dpq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// dpq: private quantiles over a stream from the command line.
//
//   dpq quantile  --q 0.5 --alpha 1e-4 --eps 1 [--full-space]
//   dpq hist      --bins 100 --eps 1 (--q 0.5 | --all-quantiles 0.1:0.9:0.1)
//   dpq continual --alpha 0.1 --eps 1 --q 0.5 --n-max 100000
//   dpq bench     --mech gk-exp --dist uniform --n 100000 --trials 100
//   dpq sketch    --alpha 0.01 --format json
//
// Exit status: 0 success, 2 configuration error, 3 data error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench.h"
#include "dpq/continual.h"
#include "dpq/dp_histogram.h"
#include "dpq/dp_quantile.h"
#include "dpq/gk_serialize.h"
#include "dpq/gk_sketch.h"

namespace dpq::bench {
namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct SourceFlags {
  std::string dist = "uniform";
  std::string csv;
  std::string col = "0";
  bool no_header = false;
  int64_t n = 100000;
  std::optional<double> lo;
  std::optional<double> hi;
  int64_t universe_card = int64_t{1} << 20;
  uint64_t seed = 1;

  void Register(CLI::App* app) {
    app->add_option("--dist", dist, "Synthetic source: uniform or normal")
        ->capture_default_str();
    app->add_option("--csv", csv, "Read values from a CSV file instead");
    app->add_option("--col", col, "CSV column name or zero-based index")
        ->capture_default_str();
    app->add_flag("--no-header", no_header, "CSV file has no header row");
    app->add_option("--n", n, "Stream length (CSV: 0 reads every row)")
        ->capture_default_str();
    app->add_option("--lo", lo, "Universe lower bound (required for CSV)");
    app->add_option("--hi", hi, "Universe upper bound (required for CSV)");
    app->add_option("--universe-card", universe_card, "Universe grid size")
        ->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  // Copies the source fields into an experiment config.
  void Apply(ExperimentConfig& c) const {
    if (csv.empty()) {
      c.source.dist = ParseDistribution(dist);
    } else {
      c.source.dist.reset();
      c.source.csv_path = csv;
      c.source.csv_column = col;
      c.source.csv_has_header = !no_header;
    }
    c.n = n;
    c.lo = lo;
    c.hi = hi;
    c.universe_card = universe_card;
    c.seed = seed;
  }
};

// Calls `fn` on each stream element in order. Synthetic sources are folded
// without materializing the stream.
template <typename Fn>
int64_t ForEachValue(const ExperimentConfig& c, Fn&& fn) {
  if (c.source.dist) {
    if (c.n < 1) throw ConfigError("n must be >= 1");
    SyntheticStream stream(*c.source.dist, DataSeed(c.seed));
    for (int64_t i = 0; i < c.n; ++i) fn(stream.Next());
    return c.n;
  }
  int64_t skipped = 0;
  const std::vector<double> values = LoadStream(c, &skipped);
  if (skipped > 0) {
    std::cerr << "dpq: skipped " << skipped << " malformed row(s)\n";
  }
  for (double x : values) fn(x);
  return static_cast<int64_t>(values.size());
}

GkSummary BuildSummary(const ExperimentConfig& c, const Universe& u,
                       double alpha) {
  GkSummary s(alpha);
  ForEachValue(c, [&](double x) { s.Add(u.Encode(x)); });
  s.Compress();
  return s;
}

std::vector<double> ParseRange(const std::string& spec) {
  double a = 0, b = 0, step = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3 ||
      !(step > 0) || !(a <= b)) {
    throw ConfigError("--all-quantiles expects start:stop:step, got '" +
                      spec + "'");
  }
  std::vector<double> qs;
  const auto count = static_cast<int64_t>(std::floor((b - a) / step + 1e-9));
  // Snap to 1e-12 so 0.1 + 2 * 0.1 prints as 0.3.
  for (int64_t i = 0; i <= count; ++i) {
    qs.push_back(std::round((a + step * static_cast<double>(i)) * 1e12) / 1e12);
  }
  return qs;
}

void PrintValue(double v) { std::fputs(FormatDouble(v).c_str(), stdout); }

int Run(int argc, char** argv) {
  CLI::App app{"Differentially private streaming quantiles"};
  app.require_subcommand(1);

  // quantile
  SourceFlags q_src;
  std::vector<double> q_qs{0.5};
  double q_alpha = 1e-4, q_eps = 1.0;
  bool q_full = false, q_raw = false;
  auto* quantile = app.add_subcommand("quantile", "One-shot private quantiles");
  q_src.Register(quantile);
  quantile->add_option("--q", q_qs, "Quantile(s); the budget is split")
      ->capture_default_str();
  quantile->add_option("--alpha", q_alpha, "Sketch approximation")
      ->capture_default_str();
  quantile->add_option("--eps", q_eps, "Privacy budget")->capture_default_str();
  quantile->add_flag("--full-space", q_full, "Exact-rank baseline, O(n) memory");
  quantile->add_flag("--raw-divisor", q_raw, "Weight by exp(eps * u / 2)");

  // hist
  SourceFlags h_src;
  std::optional<int64_t> h_bins;
  std::vector<double> h_qs;
  std::string h_all;
  double h_alpha = 1e-2, h_eps = 1.0;
  auto* hist = app.add_subcommand("hist", "Noisy-histogram quantiles");
  h_src.Register(hist);
  hist->add_option("--bins", h_bins, "Bin count (default from --alpha)");
  hist->add_option("--alpha", h_alpha, "Sketch approximation")
      ->capture_default_str();
  hist->add_option("--eps", h_eps, "Privacy budget")->capture_default_str();
  auto* h_q = hist->add_option("--q", h_qs, "Quantile(s)");
  auto* h_range =
      hist->add_option("--all-quantiles", h_all, "Range start:stop:step");
  h_q->excludes(h_range);

  // continual
  SourceFlags c_src;
  double c_alpha = 0.1, c_eps = 1.0, c_q = 0.5, c_beta = 0.1;
  std::optional<int64_t> c_nmax;
  bool c_raw = false;
  auto* continual =
      app.add_subcommand("continual", "Release at geometric checkpoints");
  c_src.Register(continual);
  continual->add_option("--alpha", c_alpha, "Approximation")
      ->capture_default_str();
  continual->add_option("--eps", c_eps, "Total privacy budget")
      ->capture_default_str();
  continual->add_option("--q", c_q, "Quantile")->capture_default_str();
  continual->add_option("--n-max", c_nmax, "Declared horizon (default --n)");
  continual->add_option("--beta", c_beta, "Failure probability")
      ->capture_default_str();
  continual->add_flag("--raw-divisor", c_raw, "Weight by exp(eps * u / 2)");

  // bench
  SourceFlags b_src;
  ExperimentConfig b_cfg;
  std::string b_mech = "gk-exp", b_format = "csv", b_out;
  bool b_raw = false, b_timing = false;
  auto* bench = app.add_subcommand("bench", "Multi-trial accuracy experiment");
  b_src.Register(bench);
  bench->add_option("--mech", b_mech, "gk-exp, full-exp, hist or continual")
      ->capture_default_str();
  bench->add_option("--q", b_cfg.qs, "Quantile(s), one record each")
      ->capture_default_str();
  bench->add_option("--alpha", b_cfg.alpha, "Approximation")
      ->capture_default_str();
  bench->add_option("--eps", b_cfg.eps, "Privacy budget")
      ->capture_default_str();
  bench->add_option("--trials", b_cfg.trials, "Trials per q")
      ->capture_default_str();
  bench->add_option("--bins", b_cfg.bins, "Histogram bins");
  bench->add_option("--n-max", b_cfg.n_max, "Continual horizon");
  bench->add_option("--format", b_format, "csv or json")->capture_default_str();
  bench->add_option("--out", b_out, "Output path (default stdout)");
  bench->add_flag("--raw-divisor", b_raw, "Weight by exp(eps * u / 2)");
  bench->add_flag("--timing", b_timing, "Record wall time (not reproducible)");

  // sketch
  SourceFlags s_src;
  double s_alpha = 1e-2;
  std::string s_format = "json", s_out;
  auto* sketch = app.add_subcommand("sketch", "Dump the summary snapshot");
  s_src.Register(sketch);
  sketch->add_option("--alpha", s_alpha, "Approximation")
      ->capture_default_str();
  sketch->add_option("--format", s_format, "json or binary")
      ->capture_default_str();
  sketch->add_option("--out", s_out, "Output path (default stdout; json only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (quantile->parsed()) {
    ExperimentConfig c;
    q_src.Apply(c);
    c.alpha = q_alpha;
    c.eps = q_eps;
    c.qs = q_qs;
    c.Validate();
    const Universe u = c.MakeUniverse();
    RandomSource rng(c.seed);
    std::vector<Element> out;
    if (q_full) {
      std::vector<Element> data;
      ForEachValue(c, [&](double x) { data.push_back(u.Encode(x)); });
      const double eps = q_eps / static_cast<double>(q_qs.size());
      for (size_t i = 0; i < q_qs.size(); ++i) {
        RandomSource child = rng.Split(i);
        out.push_back(DpQuantileFull(data, u, q_qs[i], eps, child));
      }
    } else {
      const GkSummary s = BuildSummary(c, u, q_alpha);
      PrivacyParams p;
      p.epsilon = q_eps;
      out = DpQuantilesMulti(s, u, q_qs, p, rng,
                             q_raw ? std::optional<double>(kUnscaledDivisor)
                                   : std::nullopt);
    }
    std::printf("q,value\n");
    for (size_t i = 0; i < out.size(); ++i) {
      PrintValue(q_qs[i]);
      std::printf(",");
      PrintValue(u.Decode(out[i]));
      std::printf("\n");
    }
    return 0;
  }

  if (hist->parsed()) {
    ExperimentConfig c;
    h_src.Apply(c);
    c.alpha = h_alpha;
    c.eps = h_eps;
    std::vector<double> qs = h_all.empty() ? h_qs : ParseRange(h_all);
    if (qs.empty()) qs = {0.5};
    c.qs = qs;
    c.bins = h_bins;
    c.Validate();
    if (!std::is_sorted(qs.begin(), qs.end())) {
      throw ConfigError("--q values must be ascending");
    }
    const Universe u = c.MakeUniverse();
    const GkSummary s = BuildSummary(c, u, h_alpha);
    const HistogramSpec spec =
        h_bins ? HistogramSpec::Uniform(u.lo(), u.hi(), *h_bins)
               : HistogramSpec::ForAlpha(u, h_alpha);
    RandomSource rng(c.seed);
    const NoisyCdf cdf = BuildNoisyCdf(s, u, spec, h_eps, rng);
    std::printf("q,value\n");
    for (double q : qs) {
      PrintValue(q);
      std::printf(",");
      PrintValue(HistQuantileEntry(cdf, q, s.count()).representative);
      std::printf("\n");
    }
    return 0;
  }

  if (continual->parsed()) {
    ExperimentConfig c;
    c_src.Apply(c);
    c.alpha = c_alpha;
    c.eps = c_eps;
    c.qs = {c_q};
    c.beta = c_beta;
    c.Validate();
    const Universe u = c.MakeUniverse();
    ContinualConfig cc;
    cc.alpha = c_alpha;
    cc.epsilon = c_eps;
    cc.q = c_q;
    cc.beta = c_beta;
    cc.n_max = c_nmax.value_or(c.n);
    if (c_raw) cc.exponent_divisor = kUnscaledDivisor;
    ContinualQuantile cq(cc, u);
    RandomSource rng(c.seed);
    std::printf("index,release\n");
    ForEachValue(c, [&](double x) {
      cq.Observe(u.Encode(x), rng);
      if (cq.released_last()) {
        std::printf("%lld,", static_cast<long long>(cq.seen()));
        PrintValue(u.Decode(*cq.current()));
        std::printf("\n");
      }
    });
    return 0;
  }

  if (bench->parsed()) {
    b_src.Apply(b_cfg);
    b_cfg.mechanism = ParseMechanism(b_mech);
    b_cfg.unscaled_divisor = b_raw;
    b_cfg.record_wall_time = b_timing;
    const Format format = ParseFormat(b_format);
    const auto results = RunExperiment(b_cfg);
    if (b_out.empty()) {
      EmitResults(results, format, std::cout);
    } else {
      EmitResultsToFile(results, format, b_out);
    }
    return 0;
  }

  if (sketch->parsed()) {
    ExperimentConfig c;
    s_src.Apply(c);
    c.alpha = s_alpha;
    c.Validate();
    const Universe u = c.MakeUniverse();
    const GkSummary s = BuildSummary(c, u, s_alpha);
    if (s_format == "json") {
      const std::string text = SnapshotToJson(s);
      if (s_out.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream f(s_out);
        if (!(f << text << '\n')) throw DataError("cannot write '" + s_out + "'");
      }
    } else if (s_format == "binary") {
      if (s_out.empty()) throw ConfigError("binary snapshots need --out");
      const auto bytes = SerializeSnapshot(s);
      std::ofstream f(s_out, std::ios::binary);
      f.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
      if (!f) throw DataError("cannot write '" + s_out + "'");
    } else {
      throw ConfigError("unknown snapshot format '" + s_format + "'");
    }
    return 0;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace dpq::bench

int main(int argc, char** argv) {
  try {
    return dpq::bench::Run(argc, argv);
  } catch (const std::logic_error& e) {
    // ConfigError and the library's argument/domain checks.
    std::cerr << "dpq: " << e.what() << '\n';
    return dpq::bench::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "dpq: " << e.what() << '\n';
    return dpq::bench::kExitData;
  }
}
