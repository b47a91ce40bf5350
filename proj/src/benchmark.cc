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

#include "rfrecourse/benchmark.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "rfrecourse/geometry.h"
#include "rfrecourse/io.h"
#include "rfrecourse/seeding.h"

namespace rfrecourse {

using ordered_json = nlohmann::ordered_json;

std::vector<Fold> MakeFolds(const Dataset& dataset,
                            std::vector<std::string>* warnings) {
  std::set<int> groups;
  std::set<int> novice_groups;
  for (const Instance& instance : dataset.instances) {
    groups.insert(instance.group);
    if (instance.label == kNovice) novice_groups.insert(instance.group);
  }
  std::vector<Fold> folds;
  for (int group : groups) {
    if (!novice_groups.contains(group)) {
      if (warnings != nullptr) {
        warnings->push_back(absl::StrCat(
            "group ", group, " has no novice instances; skipped as a fold"));
      }
      continue;
    }
    Fold fold;
    fold.group = group;
    for (int k = 0; k < static_cast<int>(dataset.instances.size()); ++k) {
      (dataset.instances[k].group == group ? fold.test_indices
                                           : fold.train_indices)
          .push_back(k);
    }
    folds.push_back(std::move(fold));
  }
  return folds;
}

namespace {

uint64_t QuerySeed(uint64_t seed, int fold, int query, MethodId method) {
  const uint64_t index = (static_cast<uint64_t>(fold) << 40) ^
                         (static_cast<uint64_t>(query) << 8) ^
                         static_cast<uint64_t>(method);
  return DeriveSeed(seed, SeedStream::kMethod, index);
}

// Runs one method on one query, timing `repeats` runs and keeping the
// fastest. A query without surviving rectangles counts as a failure that
// leaves x unchanged.
absl::StatusOr<QueryResult> RunQuery(MethodId method, int fold,
                                     const RandomForest& forest,
                                     const ForestGeometry& geometry,
                                     std::span<const double> x,
                                     const DAConfig& da_config, uint64_t seed,
                                     int repeats) {
  absl::StatusOr<FeedbackAction> action;
  double best_micros = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    action = Formulate(method, forest, geometry, x, da_config, seed);
    const auto stop = std::chrono::steady_clock::now();
    best_micros = std::min(
        best_micros,
        std::chrono::duration<double, std::micro>(stop - start).count());
  }
  if (action.ok()) return MakeQueryResult(method, fold, *action, best_micros);
  if (!absl::IsNotFound(action.status())) return action.status();
  QueryResult failure;
  failure.method = method;
  failure.fold = fold;
  failure.f_before = PredictProbaUnchecked(forest, x);
  failure.f_after = failure.f_before;
  failure.success = failure.f_after > 0.5;
  failure.micros = best_micros;
  return failure;
}

absl::StatusOr<std::map<MethodId, MethodMetrics>> SummarizeByMethod(
    std::span<const QueryResult> results, std::span<const MethodId> methods) {
  std::map<MethodId, MethodMetrics> out;
  for (MethodId method : methods) {
    std::vector<QueryResult> selected;
    for (const QueryResult& r : results) {
      if (r.method == method) selected.push_back(r);
    }
    if (selected.empty()) continue;
    absl::StatusOr<MethodMetrics> metrics = Summarize(selected);
    if (!metrics.ok()) return metrics.status();
    out[method] = *metrics;
  }
  return out;
}

TrainConfig FoldTrainConfig(const TrainConfig& base, int fold_index) {
  TrainConfig config = base;
  config.seed = DeriveSeed(base.seed, SeedStream::kTrain, fold_index);
  return config;
}

// Held-out instances the forest classifies novice, in dataset order.
std::vector<int> SelectQueries(const Dataset& dataset, const Fold& fold,
                               const RandomForest& forest, int cap) {
  std::vector<int> queries;
  for (int index : fold.test_indices) {
    if (cap > 0 && static_cast<int>(queries.size()) >= cap) break;
    const std::vector<double>& x = dataset.instances[index].features;
    if (2 * forest.ExpertVotes(x) <= forest.num_trees()) {
      queries.push_back(index);
    }
  }
  return queries;
}

ordered_json MetricsToJson(const MethodMetrics& m, bool include_timing) {
  ordered_json out = {{"sr", m.sr},
                      {"eff_mean", m.eff_mean},
                      {"eff_std", m.eff_std}};
  if (include_timing) {
    out["tc_mean"] = m.tc_mean;
    out["tc_std"] = m.tc_std;
  }
  out["n_queries"] = m.n_queries;
  return out;
}

}  // namespace

absl::StatusOr<BenchmarkResult> RunCvBenchmark(
    const Dataset& dataset, const BenchmarkOptions& options) {
  if (absl::Status s = ValidateDataset(dataset); !s.ok()) return s;
  if (absl::Status s = ValidateDAConfig(options.da_config); !s.ok()) return s;
  if (options.methods.empty()) {
    return absl::InvalidArgumentError("no methods selected");
  }

  BenchmarkResult result;
  result.options = options;
  const std::vector<Fold> folds = MakeFolds(dataset, &result.warnings);
  if (folds.size() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "benchmark needs at least 2 novice groups, found ", folds.size()));
  }

  for (int f = 0; f < static_cast<int>(folds.size()); ++f) {
    const Fold& fold = folds[f];
    absl::StatusOr<RandomForest> forest = TrainForest(
        dataset, fold.train_indices, FoldTrainConfig(options.train_config, f));
    if (!forest.ok()) return forest.status();
    const ForestGeometry geometry = BuildForestGeometry(*forest);

    Dataset test_set;
    test_set.schema = dataset.schema;
    for (int index : fold.test_indices) {
      test_set.instances.push_back(dataset.instances[index]);
    }

    const std::vector<int> queries =
        SelectQueries(dataset, fold, *forest, options.max_queries_per_fold);
    std::vector<QueryResult> fold_results;
    for (int q = 0; q < static_cast<int>(queries.size()); ++q) {
      const std::vector<double>& x = dataset.instances[queries[q]].features;
      for (MethodId method : options.methods) {
        absl::StatusOr<QueryResult> r =
            RunQuery(method, f, *forest, geometry, x, options.da_config,
                     QuerySeed(options.seed, f, q, method), /*repeats=*/1);
        if (!r.ok()) return r.status();
        fold_results.push_back(std::move(*r));
      }
    }

    FoldReport fold_report;
    fold_report.group = fold.group;
    fold_report.n_train = static_cast<int>(fold.train_indices.size());
    fold_report.n_test = static_cast<int>(fold.test_indices.size());
    fold_report.n_queries = static_cast<int>(queries.size());
    fold_report.accuracy = Accuracy(*forest, test_set);
    absl::StatusOr<std::map<MethodId, MethodMetrics>> per_method =
        SummarizeByMethod(fold_results, options.methods);
    if (!per_method.ok()) return per_method.status();
    fold_report.methods = std::move(*per_method);
    result.report.folds.push_back(std::move(fold_report));

    result.queries.insert(result.queries.end(), fold_results.begin(),
                          fold_results.end());
  }

  absl::StatusOr<std::map<MethodId, MethodMetrics>> overall =
      SummarizeByMethod(result.queries, options.methods);
  if (!overall.ok()) return overall.status();
  result.report.methods = std::move(*overall);
  return result;
}

std::string ReportToJson(const BenchmarkResult& result, bool include_timing) {
  const BenchmarkOptions& options = result.options;
  const TrainConfig& tc = options.train_config;
  ordered_json methods_list = ordered_json::array();
  for (MethodId method : options.methods) {
    methods_list.push_back(std::string(MethodName(method)));
  }
  ordered_json config = {
      {"methods", methods_list},
      {"train",
       {{"n_trees", tc.n_trees},
        {"max_depth", tc.max_depth},
        {"features_per_tree", tc.features_per_tree},
        {"bootstrap", tc.bootstrap},
        {"min_leaf_samples", tc.min_leaf_samples},
        {"seed", tc.seed}}},
      {"da", {{"alpha", options.da_config.alpha},
              {"gamma", options.da_config.gamma}}},
      {"seed", options.seed},
      {"max_queries_per_fold", options.max_queries_per_fold}};

  ordered_json folds = ordered_json::array();
  for (const FoldReport& fold : result.report.folds) {
    ordered_json per_method = ordered_json::object();
    for (const auto& [method, metrics] : fold.methods) {
      per_method[std::string(MethodName(method))] =
          MetricsToJson(metrics, include_timing);
    }
    folds.push_back({{"group", fold.group},
                     {"n_train", fold.n_train},
                     {"n_test", fold.n_test},
                     {"n_queries", fold.n_queries},
                     {"accuracy", fold.accuracy},
                     {"methods", per_method}});
  }

  ordered_json methods = ordered_json::object();
  for (MethodId method : options.methods) {
    auto it = result.report.methods.find(method);
    if (it == result.report.methods.end()) continue;
    methods[std::string(MethodName(method))] =
        MetricsToJson(it->second, include_timing);
  }

  ordered_json doc = {
      {"config", config}, {"folds", folds}, {"methods", methods}};
  return doc.dump(2) + "\n";
}

std::string QueriesToCsv(std::span<const QueryResult> queries) {
  std::string out =
      "fold,method,f_before,f_after,success,micros,feature,direction,target\n";
  for (const QueryResult& q : queries) {
    absl::StrAppend(&out, q.fold, ",", std::string(MethodName(q.method)), ",",
                    FormatReal(q.f_before), ",", FormatReal(q.f_after), ",",
                    q.success ? 1 : 0, ",", absl::StrFormat("%.3f", q.micros),
                    ",", q.feature, ",", std::string(DirectionName(q.direction)), ",",
                    q.feature.empty() ? "" : FormatReal(q.target), "\n");
  }
  return out;
}

std::string FormatSummaryTable(const MetricsReport& report,
                               std::span<const MethodId> methods) {
  std::string out = absl::StrFormat("%-16s", "");
  for (MethodId method : methods) {
    absl::StrAppend(&out, absl::StrFormat("%-22s", std::string(MethodName(method))));
  }
  out += "\n";

  // Success rate spread is taken across folds.
  auto fold_sr_std = [&](MethodId method) {
    std::vector<double> rates;
    for (const FoldReport& fold : report.folds) {
      auto it = fold.methods.find(method);
      if (it != fold.methods.end()) rates.push_back(it->second.sr);
    }
    return ComputeMeanStd(rates).std;
  };

  const char* rows[] = {"success rate", "effectiveness", "time-cost (s)"};
  for (int row = 0; row < 3; ++row) {
    absl::StrAppend(&out, absl::StrFormat("%-16s", rows[row]));
    for (MethodId method : methods) {
      auto it = report.methods.find(method);
      std::string cell = "-";
      if (it != report.methods.end()) {
        const MethodMetrics& m = it->second;
        if (row == 0) {
          cell = absl::StrFormat("%.2f±%.2f", m.sr, fold_sr_std(method));
        } else if (row == 1) {
          cell = absl::StrFormat("%.2f±%.2f", m.eff_mean, m.eff_std);
        } else {
          cell = absl::StrFormat("%.5f±%.5f", m.tc_mean, m.tc_std);
        }
      }
      // ± is two bytes in UTF-8; pad by display width.
      absl::StrAppend(&out, cell,
                      std::string(std::max<int>(1, 23 - cell.size()), ' '));
    }
    out += "\n";
  }
  return out;
}

namespace {

absl::StatusOr<Fold> FirstFold(const Dataset& dataset) {
  std::vector<Fold> folds = MakeFolds(dataset, nullptr);
  if (folds.empty()) {
    return absl::InvalidArgumentError("dataset has no novice group");
  }
  return std::move(folds.front());
}

absl::StatusOr<std::map<MethodId, MethodMetrics>> TimeMethods(
    const Dataset& dataset, std::span<const int> queries,
    const RandomForest& forest, const ForestGeometry& geometry,
    std::span<const MethodId> methods, const DAConfig& da_config,
    const SweepOptions& options) {
  std::vector<QueryResult> results;
  for (int q = 0; q < static_cast<int>(queries.size()); ++q) {
    const std::vector<double>& x = dataset.instances[queries[q]].features;
    for (MethodId method : methods) {
      absl::StatusOr<QueryResult> r =
          RunQuery(method, 0, forest, geometry, x, da_config,
                   QuerySeed(options.seed, 0, q, method),
                   options.timing_repeats);
      if (!r.ok()) return r.status();
      results.push_back(std::move(*r));
    }
  }
  return SummarizeByMethod(results, methods);
}

}  // namespace

absl::StatusOr<std::vector<SweepPoint>> ScalabilitySweep(
    const Dataset& dataset, std::span<const int> tree_counts,
    const SweepOptions& options) {
  if (absl::Status s = ValidateDataset(dataset); !s.ok()) return s;
  if (!std::is_sorted(tree_counts.begin(), tree_counts.end())) {
    return absl::InvalidArgumentError("tree counts must be ascending");
  }
  absl::StatusOr<Fold> fold = FirstFold(dataset);
  if (!fold.ok()) return fold.status();

  std::vector<RandomForest> forests;
  for (int n_trees : tree_counts) {
    TrainConfig config = options.train_config;
    config.n_trees = n_trees;
    absl::StatusOr<RandomForest> forest =
        TrainForest(dataset, fold->train_indices, config);
    if (!forest.ok()) return forest.status();
    forests.push_back(std::move(*forest));
  }

  // The query sample is shared by every point: held-out instances that all
  // forests classify novice.
  std::vector<int> queries;
  for (int index : fold->test_indices) {
    if (options.max_queries > 0 &&
        static_cast<int>(queries.size()) >= options.max_queries) {
      break;
    }
    const std::vector<double>& x = dataset.instances[index].features;
    const bool novice_everywhere =
        std::all_of(forests.begin(), forests.end(), [&](const auto& forest) {
          return 2 * forest.ExpertVotes(x) <= forest.num_trees();
        });
    if (novice_everywhere) queries.push_back(index);
  }
  if (queries.empty()) {
    return absl::FailedPreconditionError("no novice-classified queries");
  }

  std::vector<SweepPoint> points;
  for (const RandomForest& forest : forests) {
    const ForestGeometry geometry = BuildForestGeometry(forest);
    absl::StatusOr<std::map<MethodId, MethodMetrics>> metrics =
        TimeMethods(dataset, queries, forest, geometry, options.methods,
                    options.da_config, options);
    if (!metrics.ok()) return metrics.status();
    SweepPoint point;
    point.parameter = forest.num_trees();
    point.candidates = geometry.table.total_partitions();
    point.methods = std::move(*metrics);
    points.push_back(std::move(point));
  }
  return points;
}

absl::StatusOr<std::vector<SweepPoint>> AlphaSweep(
    const Dataset& dataset, std::span<const double> alphas,
    const SweepOptions& options) {
  if (absl::Status s = ValidateDataset(dataset); !s.ok()) return s;
  for (double alpha : alphas) {
    DAConfig config = options.da_config;
    config.alpha = alpha;
    if (absl::Status s = ValidateDAConfig(config); !s.ok()) return s;
  }
  absl::StatusOr<Fold> fold = FirstFold(dataset);
  if (!fold.ok()) return fold.status();
  absl::StatusOr<RandomForest> forest =
      TrainForest(dataset, fold->train_indices, options.train_config);
  if (!forest.ok()) return forest.status();
  const ForestGeometry geometry = BuildForestGeometry(*forest);
  const std::vector<int> queries =
      SelectQueries(dataset, *fold, *forest, options.max_queries);
  if (queries.empty()) {
    return absl::FailedPreconditionError("no novice-classified queries");
  }

  // Every query runs at all alphas back to back so slow stretches of the
  // machine spread across the sweep instead of landing on one point.
  const MethodId da[] = {MethodId::kDA};
  std::vector<std::vector<QueryResult>> results(alphas.size());
  for (int q = 0; q < static_cast<int>(queries.size()); ++q) {
    const std::vector<double>& x = dataset.instances[queries[q]].features;
    for (size_t a = 0; a < alphas.size(); ++a) {
      DAConfig config = options.da_config;
      config.alpha = alphas[a];
      absl::StatusOr<QueryResult> r =
          RunQuery(MethodId::kDA, 0, *forest, geometry, x, config,
                   QuerySeed(options.seed, 0, q, MethodId::kDA),
                   options.timing_repeats);
      if (!r.ok()) return r.status();
      results[a].push_back(std::move(*r));
    }
  }
  std::vector<SweepPoint> points;
  for (size_t a = 0; a < alphas.size(); ++a) {
    absl::StatusOr<std::map<MethodId, MethodMetrics>> metrics =
        SummarizeByMethod(results[a], da);
    if (!metrics.ok()) return metrics.status();
    SweepPoint point;
    point.parameter = alphas[a];
    point.candidates = geometry.table.total_partitions();
    point.methods = std::move(*metrics);
    points.push_back(std::move(point));
  }
  return points;
}

std::string SweepToCsv(std::string_view parameter_name,
                       std::span<const SweepPoint> points,
                       std::span<const MethodId> methods) {
  std::string out = absl::StrCat(std::string(parameter_name), ",candidates");
  for (MethodId method : methods) {
    const std::string name(MethodName(method));
    absl::StrAppend(&out, ",", name, "_sr,", name, "_eff_mean,", name,
                    "_tc_mean");
  }
  out += "\n";
  for (const SweepPoint& point : points) {
    absl::StrAppend(&out, FormatReal(point.parameter), ",", point.candidates);
    for (MethodId method : methods) {
      auto it = point.methods.find(method);
      if (it == point.methods.end()) {
        out += ",,,";
        continue;
      }
      absl::StrAppend(&out, ",", FormatReal(it->second.sr), ",",
                      FormatReal(it->second.eff_mean), ",",
                      FormatReal(it->second.tc_mean));
    }
    out += "\n";
  }
  return out;
}

}  // namespace rfrecourse
