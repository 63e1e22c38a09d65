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

// Experiment harness: synthetic and CSV data sources, multi-trial runs of
// each mechanism, and plot-ready result tables.

#ifndef DPQ_TOOLS_BENCH_H_
#define DPQ_TOOLS_BENCH_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpq/random.h"
#include "dpq/universe.h"

namespace dpq::bench {

// Bad flags or inconsistent parameters (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable or unusable input data (exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Distribution { kUniform, kNormal };

// Throws ConfigError on unknown names.
Distribution ParseDistribution(const std::string& name);

// Reproducible synthetic stream: U(0, 1), or N(0, 1) clipped to [-10, 10].
class SyntheticStream {
 public:
  SyntheticStream(Distribution dist, uint64_t seed);
  double Next();

 private:
  Distribution dist_;
  RandomSource rng_;
  std::optional<double> spare_normal_;
};

std::vector<double> Generate(Distribution dist, int64_t n, uint64_t seed);

// Seed of the synthetic stream for experiment seed `seed`. Data and
// mechanism randomness use separate keys so they never alias.
uint64_t DataSeed(uint64_t seed);

struct CsvColumn {
  std::vector<double> values;
  int64_t skipped = 0;  // rows whose field was missing or not numeric
};

// Reads one numeric column. `column` is a header name, or a zero-based index
// when it parses as an integer. Throws DataError if the file cannot be read
// or yields no numeric value, ConfigError if a named column needs a header
// or does not exist.
CsvColumn IngestCsv(const std::string& path, const std::string& column,
                    bool has_header);

enum class Mechanism { kGkExp, kFullExp, kHist, kContinual };

Mechanism ParseMechanism(const std::string& name);
std::string MechanismName(Mechanism m);

struct DataSource {
  std::optional<Distribution> dist = Distribution::kUniform;
  std::string csv_path;  // used when dist is empty
  std::string csv_column = "0";
  bool csv_has_header = true;
};

struct ExperimentConfig {
  DataSource source;
  int64_t n = 100000;  // for CSV: 0 takes every row
  double alpha = 1e-4;
  double eps = 1.0;
  std::vector<double> qs = {0.5};
  Mechanism mechanism = Mechanism::kGkExp;
  int64_t trials = 100;
  uint64_t seed = 1;
  std::optional<double> lo;  // default per distribution; required for CSV
  std::optional<double> hi;
  int64_t universe_card = int64_t{1} << 20;
  std::optional<int64_t> bins;   // hist; default from alpha
  std::optional<int64_t> n_max;  // continual; default n
  double beta = 0.1;             // continual first-checkpoint analysis
  bool unscaled_divisor = false;  // weight by exp(eps * u / 2)
  bool record_wall_time = false;

  // Throws ConfigError.
  void Validate() const;
  Universe MakeUniverse() const;
};

struct ExperimentResult {
  std::string mechanism;
  int64_t n = 0;
  double alpha = 0;
  double eps = 0;
  double q = 0;
  double mean_rel_err = 0;
  double p10 = 0;
  double p90 = 0;
  int64_t sketch_size = 0;
  int64_t full_size = 0;
  double wall_time = 0;

  friend bool operator==(const ExperimentResult&,
                         const ExperimentResult&) = default;
};

// Loads or generates the raw stream named by the config.
std::vector<double> LoadStream(const ExperimentConfig& config,
                               int64_t* skipped_rows = nullptr);

// Runs `trials` releases per q and reports the relative error
// |estimate - true quantile| / stddev, where stddev is the population
// standard deviation of the raw stream. Trial t of the i-th q draws from
// RandomSource(seed).Split(i).Split(t). One result per q.
std::vector<ExperimentResult> RunExperiment(const ExperimentConfig& config);

// Same, on an already-loaded stream.
std::vector<ExperimentResult> RunExperimentOn(const ExperimentConfig& config,
                                              const std::vector<double>& stream);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

// Population standard deviation.
double PopulationStddev(const std::vector<double>& xs);

// Linear-interpolation percentile of unsorted values, p in [0, 100].
double Percentile(std::vector<double> xs, double p);

enum class Format { kCsv, kJson };

Format ParseFormat(const std::string& name);

// CSV columns, in order:
// mechanism,n,alpha,eps,q,mean_rel_err,p10,p90,sketch_size,full_size,wall_time
inline constexpr const char* kCsvHeader =
    "mechanism,n,alpha,eps,q,mean_rel_err,p10,p90,sketch_size,full_size,"
    "wall_time";

// Records are sorted by (mechanism, n, alpha, eps, q) before writing.
void EmitResults(std::vector<ExperimentResult> results, Format format,
                 std::ostream& out);
// Throws DataError if the path cannot be written.
void EmitResultsToFile(const std::vector<ExperimentResult>& results,
                       Format format, const std::string& path);

// Inverse of the JSON form.
std::vector<ExperimentResult> ParseResultsJson(const std::string& json);

}  // namespace dpq::bench

#endif  // DPQ_TOOLS_BENCH_H_
