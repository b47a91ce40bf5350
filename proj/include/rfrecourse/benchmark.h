/*
 * Copyright 2026 The rfrecourse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Leave-one-group-out benchmark of the feedback methods, plus the tree-count
// and alpha sweeps.
//
// Each fold holds out every instance of one group that contains novices,
// trains a forest on the remaining instances, and asks every method for
// feedback on each held-out instance the forest classifies novice
// (F(x) <= 0.5). Groups without novice instances produce no fold.

#ifndef RFRECOURSE_BENCHMARK_H_
#define RFRECOURSE_BENCHMARK_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "rfrecourse/baselines.h"
#include "rfrecourse/discrete_approximation.h"
#include "rfrecourse/forest.h"
#include "rfrecourse/metrics.h"

namespace rfrecourse {

struct Fold {
  int group = 0;
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};

// One fold per group holding at least one novice, in increasing group order.
// Groups without novices are reported in `warnings`.
std::vector<Fold> MakeFolds(const Dataset& dataset,
                            std::vector<std::string>* warnings);

struct BenchmarkOptions {
  std::vector<MethodId> methods = {kAllMethods.begin(), kAllMethods.end()};
  TrainConfig train_config;
  DAConfig da_config;
  // Seeds the random methods; the forest seed comes from train_config.
  uint64_t seed = 1;
  // Caps the queries per fold; 0 keeps all of them.
  int max_queries_per_fold = 0;
};

struct FoldReport {
  int group = 0;
  int n_train = 0;
  int n_test = 0;
  int n_queries = 0;
  double accuracy = 0.0;
  std::map<MethodId, MethodMetrics> methods;
};

struct MetricsReport {
  std::vector<FoldReport> folds;
  std::map<MethodId, MethodMetrics> methods;
};

struct BenchmarkResult {
  BenchmarkOptions options;
  MetricsReport report;
  std::vector<QueryResult> queries;
  std::vector<std::string> warnings;
};

absl::StatusOr<BenchmarkResult> RunCvBenchmark(const Dataset& dataset,
                                               const BenchmarkOptions& options);

// {"config", "folds", "methods": {name: {sr, eff_mean, eff_std, tc_mean,
// tc_std, n_queries}}}. Without timing, every "tc_*" field is left out.
std::string ReportToJson(const BenchmarkResult& result,
                         bool include_timing = true);

// fold,method,f_before,f_after,success,micros,feature,direction,target
std::string QueriesToCsv(std::span<const QueryResult> queries);

// Rows success rate / effectiveness / time-cost, one column per method,
// mean±std.
std::string FormatSummaryTable(const MetricsReport& report,
                               std::span<const MethodId> methods);

struct SweepOptions {
  std::vector<MethodId> methods = {kAllMethods.begin(), kAllMethods.end()};
  TrainConfig train_config;
  DAConfig da_config;
  uint64_t seed = 1;
  // Size of the fixed query sample; 0 keeps every eligible query.
  int max_queries = 50;
  // Each query is timed this many times and the fastest run is kept.
  int timing_repeats = 1;
};

struct SweepPoint {
  // Swept parameter value: tree count or alpha.
  double parameter = 0.0;
  // Sum of partition counts over the features, i.e. the number of candidates
  // ITER_ITER evaluates.
  int64_t candidates = 0;
  std::map<MethodId, MethodMetrics> methods;
};

// Trains one forest per tree count (ascending) on the first fold's training
// set and times every method on a fixed sample of held-out queries that every
// forest classifies novice.
absl::StatusOr<std::vector<SweepPoint>> ScalabilitySweep(
    const Dataset& dataset, std::span<const int> tree_counts,
    const SweepOptions& options);

// Runs DA with each alpha (and options.da_config.gamma) on one forest and a
// fixed query sample.
absl::StatusOr<std::vector<SweepPoint>> AlphaSweep(
    const Dataset& dataset, std::span<const double> alphas,
    const SweepOptions& options);

// Plot-ready table: parameter, candidates, then sr/eff_mean/tc_mean per
// method.
std::string SweepToCsv(std::string_view parameter_name,
                       std::span<const SweepPoint> points,
                       std::span<const MethodId> methods);

}  // namespace rfrecourse

#endif  // RFRECOURSE_BENCHMARK_H_
