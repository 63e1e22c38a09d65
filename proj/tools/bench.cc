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

#include "bench.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <tuple>

#include "dpq/continual.h"
#include "dpq/dp_histogram.h"
#include "dpq/dp_quantile.h"
#include "dpq/gk_sketch.h"
#include "json.hpp"

namespace dpq::bench {
namespace {

constexpr double kNormalClip = 10.0;

std::string Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      cur.push_back(c);
    } else if (c == ',' && !quoted) {
      fields.push_back(Trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(Trim(cur));
  return fields;
}

std::optional<int64_t> ParseIndex(const std::string& s) {
  int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || v < 0) return std::nullopt;
  return v;
}

std::optional<double> ParseNumber(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Rank ceil(q n) of the sorted raw stream.
double ExactRawQuantile(const std::vector<double>& sorted, double q) {
  const auto n = static_cast<int64_t>(sorted.size());
  auto r = static_cast<int64_t>(std::ceil(q * static_cast<double>(n)));
  r = std::clamp<int64_t>(r, 1, n);
  return sorted[static_cast<size_t>(r - 1)];
}


}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Distribution ParseDistribution(const std::string& name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "normal") return Distribution::kNormal;
  throw ConfigError("unknown distribution '" + name + "'");
}

SyntheticStream::SyntheticStream(Distribution dist, uint64_t seed)
    : dist_(dist), rng_(seed) {}

double SyntheticStream::Next() {
  if (dist_ == Distribution::kUniform) return rng_.UniformOpen();
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  // Box-Muller, both outputs used.
  const double r = std::sqrt(-2.0 * std::log(rng_.UniformOpen()));
  const double theta = 2.0 * std::numbers::pi * rng_.UniformOpen();
  spare_normal_ =
      std::clamp(r * std::sin(theta), -kNormalClip, kNormalClip);
  return std::clamp(r * std::cos(theta), -kNormalClip, kNormalClip);
}

std::vector<double> Generate(Distribution dist, int64_t n, uint64_t seed) {
  if (n < 0) throw ConfigError("n must be >= 0");
  SyntheticStream stream(dist, seed);
  std::vector<double> out(static_cast<size_t>(n));
  for (double& x : out) x = stream.Next();
  return out;
}

uint64_t DataSeed(uint64_t seed) { return MixBits(seed ^ 0x5eed'da7aULL); }

CsvColumn IngestCsv(const std::string& path, const std::string& column,
                    bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");

  std::string line;
  std::optional<int64_t> index = ParseIndex(column);
  if (has_header) {
    if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
    if (!index) {
      const auto names = SplitFields(line);
      const auto it = std::find(names.begin(), names.end(), column);
      if (it == names.end()) {
        throw ConfigError("column '" + column + "' not found in header");
      }
      index = it - names.begin();
    }
  } else if (!index) {
    throw ConfigError("column '" + column + "' needs a header row");
  }

  CsvColumn out;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    const auto i = static_cast<size_t>(*index);
    std::optional<double> v;
    if (i < fields.size()) v = ParseNumber(fields[i]);
    if (v) {
      out.values.push_back(*v);
    } else {
      ++out.skipped;
    }
  }
  if (in.bad()) throw DataError("read error on '" + path + "'");
  if (out.values.empty()) {
    throw DataError("no numeric values in column '" + column + "'");
  }
  return out;
}

Mechanism ParseMechanism(const std::string& name) {
  if (name == "gk-exp") return Mechanism::kGkExp;
  if (name == "full-exp") return Mechanism::kFullExp;
  if (name == "hist") return Mechanism::kHist;
  if (name == "continual") return Mechanism::kContinual;
  throw ConfigError("unknown mechanism '" + name + "'");
}

std::string MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kGkExp:
      return "gk-exp";
    case Mechanism::kFullExp:
      return "full-exp";
    case Mechanism::kHist:
      return "hist";
    case Mechanism::kContinual:
      return "continual";
  }
  return "unknown";
}

void ExperimentConfig::Validate() const {
  if (!source.dist && source.csv_path.empty()) {
    throw ConfigError("no data source");
  }
  if (!source.dist && (!lo || !hi)) {
    throw ConfigError("--lo and --hi are required for CSV input");
  }
  if (source.dist && n < 1) throw ConfigError("n must be >= 1");
  if (n < 0) throw ConfigError("n must be >= 0");
  if (!(alpha > 0 && alpha < 1)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(eps > 0) || !std::isfinite(eps)) throw ConfigError("eps must be > 0");
  if (qs.empty()) throw ConfigError("at least one q is required");
  for (double q : qs) {
    if (!(q > 0 && q < 1)) throw ConfigError("q must lie in (0, 1)");
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (universe_card < 2) throw ConfigError("universe cardinality must be >= 2");
  if (bins && *bins < 1) throw ConfigError("bins must be >= 1");
  if (n_max && *n_max < 1) throw ConfigError("n-max must be >= 1");
  if (!(beta > 0 && beta <= 1)) throw ConfigError("beta must lie in (0, 1]");
  if (lo && hi && !(*lo < *hi)) throw ConfigError("lo must be < hi");
}

Universe ExperimentConfig::MakeUniverse() const {
  double l = 0, h = 1;
  if (source.dist == Distribution::kNormal) {
    l = -kNormalClip;
    h = kNormalClip;
  }
  try {
    return Universe(lo.value_or(l), hi.value_or(h), universe_card);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> LoadStream(const ExperimentConfig& config,
                               int64_t* skipped_rows) {
  if (skipped_rows) *skipped_rows = 0;
  if (config.source.dist) {
    return Generate(*config.source.dist, config.n, DataSeed(config.seed));
  }
  CsvColumn col = IngestCsv(config.source.csv_path, config.source.csv_column,
                            config.source.csv_has_header);
  if (skipped_rows) *skipped_rows = col.skipped;
  if (config.n > 0) {
    if (static_cast<int64_t>(col.values.size()) < config.n) {
      throw DataError("CSV has " + std::to_string(col.values.size()) +
                      " values, fewer than n = " + std::to_string(config.n));
    }
    col.values.resize(static_cast<size_t>(config.n));
  }
  return std::move(col.values);
}

double PopulationStddev(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

double Percentile(std::vector<double> xs, double p) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const double pos = p / 100.0 * static_cast<double>(xs.size() - 1);
  const auto i = static_cast<size_t>(std::floor(pos));
  if (i + 1 >= xs.size()) return xs.back();
  const double frac = pos - static_cast<double>(i);
  return xs[i] + frac * (xs[i + 1] - xs[i]);
}

std::vector<ExperimentResult> RunExperimentOn(
    const ExperimentConfig& config, const std::vector<double>& stream) {
  config.Validate();
  if (stream.empty()) throw DataError("empty stream");
  const Universe universe = config.MakeUniverse();
  const auto n = static_cast<int64_t>(stream.size());

  std::vector<double> sorted = stream;
  std::sort(sorted.begin(), sorted.end());
  double scale = PopulationStddev(stream);
  if (!(scale > 0)) scale = 1.0;

  const std::optional<double> divisor =
      config.unscaled_divisor ? std::optional<double>(kUnscaledDivisor)
                              : std::nullopt;

  // Shared per-stream state, built once.
  std::optional<GkSummary> summary;
  std::vector<Element> encoded;
  if (config.mechanism == Mechanism::kGkExp ||
      config.mechanism == Mechanism::kHist) {
    summary.emplace(config.alpha);
    for (double x : stream) summary->Add(universe.Encode(x));
    summary->Compress();
  } else if (config.mechanism == Mechanism::kFullExp) {
    encoded.reserve(stream.size());
    for (double x : sorted) encoded.push_back(universe.Encode(x));
  }
  std::optional<HistogramSpec> hist_spec;
  if (config.mechanism == Mechanism::kHist) {
    hist_spec = config.bins
                    ? HistogramSpec::Uniform(universe.lo(), universe.hi(),
                                             *config.bins)
                    : HistogramSpec::ForAlpha(universe, config.alpha);
  }

  std::vector<ExperimentResult> results;
  const RandomSource root(config.seed);
  for (size_t qi = 0; qi < config.qs.size(); ++qi) {
    const double q = config.qs[qi];
    const double truth = ExactRawQuantile(sorted, q);
    const RandomSource q_root = root.Split(qi);
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> errors;
    errors.reserve(static_cast<size_t>(config.trials));
    int64_t sketch_size = 0;
    for (int64_t t = 0; t < config.trials; ++t) {
      RandomSource rng = q_root.Split(static_cast<uint64_t>(t));
      double estimate = 0;
      switch (config.mechanism) {
        case Mechanism::kGkExp: {
          MechanismConfig mech = MechanismConfig::ForSketch(
              config.eps, q, config.alpha, summary->count());
          mech.exponent_divisor = divisor;
          estimate = universe.Decode(DpQuantileGk(*summary, universe, mech, rng));
          sketch_size = static_cast<int64_t>(summary->size());
          break;
        }
        case Mechanism::kFullExp:
          estimate = universe.Decode(
              DpQuantileFull(encoded, universe, q, config.eps, rng));
          sketch_size = n;
          break;
        case Mechanism::kHist: {
          const NoisyCdf cdf =
              BuildNoisyCdf(*summary, universe, *hist_spec, config.eps, rng);
          estimate = HistQuantileEntry(cdf, q, n).representative;
          sketch_size = static_cast<int64_t>(summary->size());
          break;
        }
        case Mechanism::kContinual: {
          ContinualConfig cc;
          cc.alpha = config.alpha;
          cc.epsilon = config.eps;
          cc.q = q;
          cc.n_max = config.n_max.value_or(n);
          cc.beta = config.beta;
          cc.exponent_divisor = divisor;
          std::optional<ContinualQuantile> cq;
          try {
            cq.emplace(cc, universe);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
          std::optional<Element> held;
          for (double x : stream) held = cq->Observe(universe.Encode(x), rng);
          if (!held) {
            throw ConfigError("stream ends before the first checkpoint " +
                              std::to_string(cq->plan().n_min));
          }
          estimate = universe.Decode(*held);
          sketch_size = static_cast<int64_t>(cq->summary().size());
          break;
        }
      }
      errors.push_back(std::abs(estimate - truth) / scale);
    }

    ExperimentResult r;
    r.mechanism = MechanismName(config.mechanism);
    r.n = n;
    r.alpha = config.alpha;
    r.eps = config.eps;
    r.q = q;
    double sum = 0;
    for (double e : errors) sum += e;
    r.mean_rel_err = sum / static_cast<double>(errors.size());
    r.p10 = Percentile(errors, 10);
    r.p90 = Percentile(errors, 90);
    r.sketch_size = sketch_size;
    r.full_size = n;
    if (config.record_wall_time) {
      r.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<ExperimentResult> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  return RunExperimentOn(config, LoadStream(config));
}

Format ParseFormat(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ConfigError("unknown format '" + name + "'");
}

void EmitResults(std::vector<ExperimentResult> results, Format format,
                 std::ostream& out) {
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return std::tie(a.mechanism, a.n, a.alpha, a.eps, a.q) <
           std::tie(b.mechanism, b.n, b.alpha, b.eps, b.q);
  });
  if (format == Format::kCsv) {
    out << kCsvHeader << '\n';
    for (const auto& r : results) {
      out << r.mechanism << ',' << r.n << ',' << FormatDouble(r.alpha) << ','
          << FormatDouble(r.eps) << ',' << FormatDouble(r.q) << ','
          << FormatDouble(r.mean_rel_err) << ',' << FormatDouble(r.p10) << ','
          << FormatDouble(r.p90) << ',' << r.sketch_size << ',' << r.full_size
          << ',' << FormatDouble(r.wall_time) << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["schema"] = "dpq-bench/1";
  doc["metadata"] = {
      {"rel_err", "|estimate - exact quantile| / stddev"},
      {"stddev", "population, per-stream"},
      {"ci", "10th and 90th percentile over trials"},
      {"wall_time", "seconds per (mechanism, q); 0 unless timing requested"},
  };
  auto& arr = doc["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    arr.push_back({{"mechanism", r.mechanism},
                   {"n", r.n},
                   {"alpha", r.alpha},
                   {"eps", r.eps},
                   {"q", r.q},
                   {"mean_rel_err", r.mean_rel_err},
                   {"p10", r.p10},
                   {"p90", r.p90},
                   {"sketch_size", r.sketch_size},
                   {"full_size", r.full_size},
                   {"wall_time", r.wall_time}});
  }
  out << doc.dump(2) << '\n';
}

void EmitResultsToFile(const std::vector<ExperimentResult>& results,
                       Format format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  EmitResults(results, format, out);
  out.flush();
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::vector<ExperimentResult> ParseResultsJson(const std::string& json) {
  std::vector<ExperimentResult> out;
  try {
    const auto doc = nlohmann::json::parse(json);
    for (const auto& j : doc.at("results")) {
      ExperimentResult r;
      j.at("mechanism").get_to(r.mechanism);
      j.at("n").get_to(r.n);
      j.at("alpha").get_to(r.alpha);
      j.at("eps").get_to(r.eps);
      j.at("q").get_to(r.q);
      j.at("mean_rel_err").get_to(r.mean_rel_err);
      j.at("p10").get_to(r.p10);
      j.at("p90").get_to(r.p90);
      j.at("sketch_size").get_to(r.sketch_size);
      j.at("full_size").get_to(r.full_size);
      j.at("wall_time").get_to(r.wall_time);
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed results JSON: ") + e.what());
  }
  return out;
}

}  // namespace dpq::bench
