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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace dpq::bench {
namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = (std::filesystem::temp_directory_path() /
             ("dpq_bench_test_" + std::to_string(counter_++) + ".csv"))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::string path_;
};

TEST(GenerateTest, UniformInUnitInterval) {
  for (double x : Generate(Distribution::kUniform, 10000, 1)) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
}

TEST(GenerateTest, NormalIsClippedAndCentred) {
  const auto xs = Generate(Distribution::kNormal, 200000, 2);
  double mean = 0;
  for (double x : xs) {
    ASSERT_LE(std::abs(x), 10.0);
    mean += x;
  }
  mean /= static_cast<double>(xs.size());
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(PopulationStddev(xs), 1.0, 0.01);
}

TEST(GenerateTest, SeedDeterminesStream) {
  EXPECT_EQ(Generate(Distribution::kNormal, 1000, 3),
            Generate(Distribution::kNormal, 1000, 3));
  EXPECT_NE(Generate(Distribution::kUniform, 1000, 3),
            Generate(Distribution::kUniform, 1000, 4));
  SyntheticStream s(Distribution::kUniform, 3);
  const auto xs = Generate(Distribution::kUniform, 5, 3);
  for (double x : xs) EXPECT_EQ(s.Next(), x);
}

TEST(ParseTest, NamesRoundTripAndUnknownsThrow) {
  for (Mechanism m : {Mechanism::kGkExp, Mechanism::kFullExp, Mechanism::kHist,
                      Mechanism::kContinual}) {
    EXPECT_EQ(ParseMechanism(MechanismName(m)), m);
  }
  EXPECT_EQ(MechanismName(Mechanism::kGkExp), "gk-exp");
  EXPECT_THROW(ParseMechanism("gk"), ConfigError);
  EXPECT_EQ(ParseDistribution("normal"), Distribution::kNormal);
  EXPECT_THROW(ParseDistribution("cauchy"), ConfigError);
  EXPECT_EQ(ParseFormat("json"), Format::kJson);
  EXPECT_THROW(ParseFormat("xml"), ConfigError);
}

TEST(IngestCsvTest, PlainColumn) {
  TempFile f("1\n2\n3");
  const auto col = IngestCsv(f.path(), "0", false);
  EXPECT_EQ(col.values, std::vector<double>({1, 2, 3}));
  EXPECT_EQ(col.skipped, 0);
}

TEST(IngestCsvTest, HeaderAndNamedColumn) {
  TempFile f("id,value\n1,0.5\n2,abc\n3,\n4,1.5e1\n");
  const auto col = IngestCsv(f.path(), "value", true);
  EXPECT_EQ(col.values, std::vector<double>({0.5, 15.0}));
  EXPECT_EQ(col.skipped, 2);
  EXPECT_EQ(IngestCsv(f.path(), "0", true).values,
            std::vector<double>({1, 2, 3, 4}));
  EXPECT_THROW(IngestCsv(f.path(), "missing", true), ConfigError);
  EXPECT_THROW(IngestCsv(f.path(), "value", false), ConfigError);
}

TEST(IngestCsvTest, MalformedRowIsSkipped) {
  TempFile f("x\n1\nabc\n2\n");
  const auto col = IngestCsv(f.path(), "x", true);
  EXPECT_EQ(col.values, std::vector<double>({1, 2}));
  EXPECT_EQ(col.skipped, 1);
}

TEST(IngestCsvTest, Errors) {
  EXPECT_THROW(IngestCsv("/nonexistent/dpq.csv", "0", false), DataError);
  TempFile f("x\nfoo\nbar\n");
  EXPECT_THROW(IngestCsv(f.path(), "x", true), DataError);
}

TEST(StatsTest, StddevAndPercentile) {
  EXPECT_DOUBLE_EQ(PopulationStddev({2, 4, 4, 4, 5, 5, 7, 9}), 2.0);
  EXPECT_DOUBLE_EQ(PopulationStddev({}), 0.0);
  EXPECT_DOUBLE_EQ(Percentile({3, 1, 2, 4, 5}, 50), 3.0);
  EXPECT_DOUBLE_EQ(Percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 10), 2.0);
  EXPECT_DOUBLE_EQ(Percentile({1, 2}, 90), 1.9);
}

TEST(ConfigTest, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.trials = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = ExperimentConfig{};
  c.qs = {0.5, 1.0};
  EXPECT_THROW(c.Validate(), ConfigError);
  c = ExperimentConfig{};
  c.source.dist.reset();
  c.source.csv_path = "x.csv";
  EXPECT_THROW(c.Validate(), ConfigError);  // CSV needs lo and hi
  c.lo = 0;
  c.hi = 1;
  EXPECT_NO_THROW(c.Validate());
}

TEST(EmitResultsTest, EmptyCsvIsHeaderOnly) {
  std::ostringstream out;
  EmitResults({}, Format::kCsv, out);
  EXPECT_EQ(out.str(),
            "mechanism,n,alpha,eps,q,mean_rel_err,p10,p90,sketch_size,"
            "full_size,wall_time\n");
}

ExperimentResult Sample(const std::string& mech, double q) {
  ExperimentResult r;
  r.mechanism = mech;
  r.n = 1000;
  r.alpha = 0.01;
  r.eps = 1;
  r.q = q;
  r.mean_rel_err = 0.1 / 3;
  r.p10 = 1e-5;
  r.p90 = 0.25;
  r.sketch_size = 42;
  r.full_size = 1000;
  return r;
}

TEST(EmitResultsTest, RecordsAreSorted) {
  std::ostringstream out;
  EmitResults({Sample("hist", 0.5), Sample("gk-exp", 0.9),
               Sample("gk-exp", 0.1)},
              Format::kCsv, out);
  std::istringstream in(out.str());
  std::string header, a, b, c;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  std::getline(in, c);
  EXPECT_EQ(a.substr(0, 22), "gk-exp,1000,0.01,1,0.1");
  EXPECT_EQ(b.substr(0, 22), "gk-exp,1000,0.01,1,0.9");
  EXPECT_EQ(c.substr(0, 5), "hist,");
}

TEST(EmitResultsTest, JsonRoundTrip) {
  const std::vector<ExperimentResult> rs = {Sample("full-exp", 0.25),
                                            Sample("gk-exp", 0.75)};
  std::ostringstream out;
  EmitResults(rs, Format::kJson, out);
  EXPECT_EQ(ParseResultsJson(out.str()), rs);
  EXPECT_NE(out.str().find("\"schema\": \"dpq-bench/1\""), std::string::npos);
  EXPECT_THROW(ParseResultsJson("{"), DataError);
}

TEST(EmitResultsTest, UnwritablePathThrows) {
  EXPECT_THROW(EmitResultsToFile({}, Format::kCsv, "/nonexistent/dir/out.csv"),
               DataError);
}

ExperimentConfig Small(Mechanism m) {
  ExperimentConfig c;
  c.mechanism = m;
  c.n = 5000;
  c.alpha = 0.01;
  c.trials = 10;
  c.qs = {0.25, 0.5};
  c.seed = 17;
  return c;
}

TEST(RunExperimentTest, DeterministicForEveryMechanism) {
  for (Mechanism m : {Mechanism::kGkExp, Mechanism::kFullExp, Mechanism::kHist,
                      Mechanism::kContinual}) {
    ExperimentConfig c = Small(m);
    if (m == Mechanism::kContinual) {
      c.n = 20000;
      c.alpha = 0.2;
    }
    const auto a = RunExperiment(c);
    const auto b = RunExperiment(c);
    ASSERT_EQ(a.size(), 2u) << MechanismName(m);
    EXPECT_EQ(a, b) << MechanismName(m);
    for (const auto& r : a) {
      EXPECT_EQ(r.mechanism, MechanismName(m));
      EXPECT_EQ(r.full_size, c.n);
      EXPECT_GE(r.sketch_size, 2);
      EXPECT_LE(r.p10, r.p90);
      EXPECT_EQ(r.wall_time, 0.0);
    }
  }
}

TEST(RunExperimentTest, ContinualNeedsLongEnoughStream) {
  ExperimentConfig c = Small(Mechanism::kContinual);
  c.n = 100;
  EXPECT_THROW(RunExperiment(c), ConfigError);
}

TEST(RunExperimentTest, CsvSource) {
  std::string contents = "v\n";
  for (int i = 1; i <= 2000; ++i) contents += std::to_string(i) + "\n";
  TempFile f(contents);
  ExperimentConfig c = Small(Mechanism::kGkExp);
  c.source.dist.reset();
  c.source.csv_path = f.path();
  c.source.csv_column = "v";
  c.n = 0;
  c.lo = 0;
  c.hi = 2001;
  c.eps = 10;
  const auto rs = RunExperiment(c);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].n, 2000);
  EXPECT_LT(rs[0].mean_rel_err, 0.1);  // 2 alpha n ranks is 0.07 stddev
  c.n = 3000;
  EXPECT_THROW(RunExperiment(c), DataError);
}

TEST(RunExperimentTest, ErrorShrinksWithEpsilon) {
  ExperimentConfig c = Small(Mechanism::kFullExp);
  c.qs = {0.5};
  c.trials = 50;
  c.eps = 0.01;
  const double loose = RunExperiment(c)[0].mean_rel_err;
  c.eps = 10;
  const double tight = RunExperiment(c)[0].mean_rel_err;
  EXPECT_LT(tight, loose);
}

}  // namespace
}  // namespace dpq::bench
