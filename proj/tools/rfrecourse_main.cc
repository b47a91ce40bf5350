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

// rfrecourse command line.
//
//   rfrecourse gen-data --n 5000 --d 6 --groups 12 --sep 2.6 --seed 7 -o d.csv
//   rfrecourse train -i d.csv -o forest.json --trees 100 --depth 5
//   rfrecourse feedback --forest forest.json --x 0.9,0.2 --method da
//   rfrecourse bench -i d.csv --methods da,iter-iter --report r.json
//   rfrecourse bench -i d.csv --sweep trees=100:1000:100
//
// Every subcommand accepts --config FILE with key=value lines named after
// its long flags; flags given on the command line take precedence. Exit codes: 0 success, 2 usage or validation error,
// 1 runtime failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"
#include "rfrecourse/baselines.h"
#include "rfrecourse/benchmark.h"
#include "rfrecourse/discrete_approximation.h"
#include "rfrecourse/feedback.h"
#include "rfrecourse/forest.h"
#include "rfrecourse/geometry.h"
#include "rfrecourse/io.h"
#include "rfrecourse/seeding.h"
#include "rfrecourse/synthetic.h"

namespace rfrecourse {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

int Usage(std::string_view message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<Dataset> dataset = DatasetFromCsv(*text);
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

absl::StatusOr<std::vector<MethodId>> ParseMethods(const std::string& list) {
  std::vector<MethodId> methods;
  for (absl::string_view name : absl::StrSplit(list, ',', absl::SkipEmpty())) {
    std::optional<MethodId> method =
        ParseMethod(std::string(absl::StripAsciiWhitespace(name)));
    if (!method.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown method '", name, "'"));
    }
    methods.push_back(*method);
  }
  if (methods.empty()) return absl::InvalidArgumentError("no methods given");
  return methods;
}

absl::StatusOr<std::vector<double>> ParseVector(const std::string& text) {
  std::vector<double> values;
  for (absl::string_view token : absl::StrSplit(text, ',')) {
    double value = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(token), &value) ||
        !std::isfinite(value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed query vector: '", token, "' is not a number"));
    }
    values.push_back(value);
  }
  return values;
}

struct Sweep {
  std::string parameter;
  std::vector<double> values;
};

// "trees=100:1000:100" or "alpha=0.1:1.0:0.1"; both ends inclusive.
absl::StatusOr<Sweep> ParseSweep(const std::string& text) {
  std::vector<std::string> parts = absl::StrSplit(text, '=');
  if (parts.size() != 2 || (parts[0] != "trees" && parts[0] != "alpha")) {
    return absl::InvalidArgumentError(
        "--sweep expects trees=START:STOP:STEP or alpha=START:STOP:STEP");
  }
  std::vector<std::string> range = absl::StrSplit(parts[1], ':');
  double bounds[3];
  if (range.size() != 3) {
    return absl::InvalidArgumentError("--sweep range must be START:STOP:STEP");
  }
  for (int k = 0; k < 3; ++k) {
    if (!absl::SimpleAtod(range[k], &bounds[k]) || !std::isfinite(bounds[k])) {
      return absl::InvalidArgumentError(
          absl::StrCat("--sweep: '", range[k], "' is not a number"));
    }
  }
  const auto [start, stop, step] = bounds;
  if (step <= 0.0 || stop < start) {
    return absl::InvalidArgumentError(
        "--sweep needs STEP > 0 and STOP >= START");
  }
  Sweep sweep;
  sweep.parameter = parts[0];
  const int64_t count = std::llround(std::floor((stop - start) / step + 1e-9));
  if (count > 10000) return absl::InvalidArgumentError("--sweep too long");
  for (int64_t k = 0; k <= count; ++k) {
    // Rounded so that 0.1 + 2 * 0.1 prints as 0.3.
    sweep.values.push_back(std::round((start + k * step) * 1e9) / 1e9);
  }
  if (sweep.parameter == "trees") {
    for (double v : sweep.values) {
      if (v < 1 || v != std::floor(v)) {
        return absl::InvalidArgumentError(
            "--sweep trees values must be positive integers");
      }
    }
  }
  return sweep;
}

struct GenDataFlags {
  int n = 5000;
  int d = 6;
  int groups = 12;
  double sep = SyntheticConfig().separation;
  double sigma = 1.0;
  uint64_t seed = 7;
  std::string output;
};

int RunGenData(const GenDataFlags& flags) {
  if (flags.n < 2 || flags.n % 2 != 0) {
    return Usage("--n must be an even number >= 2 (half per class)");
  }
  SyntheticConfig config;
  config.n_per_class = flags.n / 2;
  config.d = flags.d;
  config.n_groups = flags.groups;
  config.separation = flags.sep;
  config.sigma = flags.sigma;
  config.seed = flags.seed;
  if (absl::Status s = ValidateSyntheticConfig(config); !s.ok()) return Fail(s);
  absl::StatusOr<Dataset> dataset = GenerateSynthetic(config);
  if (!dataset.ok()) return Fail(dataset.status());
  if (absl::Status s = WriteFile(flags.output, DatasetToCsv(*dataset));
      !s.ok()) {
    return Fail(s);
  }
  std::cout << "wrote " << dataset->instances.size() << " instances to "
            << flags.output << "\n";
  return kExitOk;
}

struct TrainFlags {
  std::string input;
  std::string output;
  int trees = 100;
  int depth = 5;
  int features_per_tree = 0;
  int min_leaf = 1;
  bool no_bootstrap = false;
  uint64_t seed = 1;
};

TrainConfig MakeTrainConfig(int trees, int depth, int features_per_tree,
                            int min_leaf, bool bootstrap, uint64_t seed) {
  TrainConfig config;
  config.n_trees = trees;
  config.max_depth = depth;
  config.features_per_tree = features_per_tree;
  config.min_leaf_samples = min_leaf;
  config.bootstrap = bootstrap;
  config.seed = DeriveSeed(seed, SeedStream::kTrain);
  return config;
}

int RunTrain(const TrainFlags& flags) {
  const TrainConfig config =
      MakeTrainConfig(flags.trees, flags.depth, flags.features_per_tree,
                      flags.min_leaf, !flags.no_bootstrap, flags.seed);
  absl::StatusOr<Dataset> dataset = LoadDataset(flags.input);
  if (!dataset.ok()) return Fail(dataset.status());
  if (absl::Status s =
          ResolveTrainConfig(config, dataset->num_features()).status();
      !s.ok()) {
    return Fail(s);
  }
  absl::StatusOr<RandomForest> forest = TrainForest(*dataset, config);
  if (!forest.ok()) return Fail(forest.status());
  if (absl::Status s = WriteFile(flags.output, SaveForest(*forest)); !s.ok()) {
    return Fail(s);
  }
  std::cout << absl::StrFormat("trained %d trees, train accuracy %.4f\n",
                               forest->num_trees(),
                               Accuracy(*forest, *dataset));
  return kExitOk;
}

struct FeedbackFlags {
  std::string forest;
  std::string x;
  std::string data;
  int row = 0;
  std::string method = "da";
  double alpha = DAConfig().alpha;
  double gamma = DAConfig().gamma;
  uint64_t seed = 1;
};

int RunFeedback(const FeedbackFlags& flags) {
  std::optional<MethodId> method = ParseMethod(flags.method);
  if (!method.has_value()) {
    return Usage(absl::StrCat("unknown method '", flags.method, "'"));
  }
  DAConfig da_config{.alpha = flags.alpha, .gamma = flags.gamma};
  if (absl::Status s = ValidateDAConfig(da_config); !s.ok()) return Fail(s);
  if (flags.x.empty() == flags.data.empty()) {
    return Usage("give exactly one of --x or --data/--row");
  }

  std::vector<double> x;
  if (!flags.x.empty()) {
    absl::StatusOr<std::vector<double>> parsed = ParseVector(flags.x);
    if (!parsed.ok()) return Fail(parsed.status());
    x = std::move(*parsed);
  } else {
    absl::StatusOr<Dataset> dataset = LoadDataset(flags.data);
    if (!dataset.ok()) return Fail(dataset.status());
    const int n = static_cast<int>(dataset->instances.size());
    if (flags.row < 1 || flags.row > n) {
      return Usage(absl::StrCat("--row must be in [1, ", n, "]"));
    }
    x = dataset->instances[flags.row - 1].features;
  }

  absl::StatusOr<std::string> text = ReadFile(flags.forest);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<RandomForest> forest = LoadForest(*text);
  if (!forest.ok()) return Fail(forest.status());
  if (absl::Status s = CheckQuery(forest->schema, x); !s.ok()) return Fail(s);

  const double f_before = PredictProbaUnchecked(*forest, x);
  if (2 * forest->ExpertVotes(x) > forest->num_trees()) {
    nlohmann::ordered_json out = {{"status", "already expert"},
                                  {"f_before", f_before}};
    std::cout << out.dump() << "\n";
    return kExitOk;
  }

  const ForestGeometry geometry = BuildForestGeometry(*forest);
  absl::StatusOr<FeedbackAction> action =
      Formulate(*method, *forest, geometry, x, da_config,
                DeriveSeed(flags.seed, SeedStream::kMethod));
  if (!action.ok()) {
    std::cerr << "error: " << action.status().message() << "\n";
    return kExitRuntime;
  }
  std::cout << ActionToJson(*action) << "\n";
  return kExitOk;
}

struct BenchFlags {
  std::string input;
  std::string methods = "da,rand-rand,rand-iter,iter-iter";
  std::string report = "report.json";
  std::string queries = "queries.csv";
  std::string sweep;
  std::string sweep_out = "sweep.csv";
  int trees = 100;
  int depth = 5;
  int features_per_tree = 0;
  int min_leaf = 1;
  bool no_bootstrap = false;
  double alpha = DAConfig().alpha;
  double gamma = DAConfig().gamma;
  int max_queries = 0;
  int repeats = 3;
  bool no_timing = false;
  uint64_t seed = 1;
};

std::string FormatSweepTable(const std::string& parameter,
                             const std::vector<SweepPoint>& points,
                             const std::vector<MethodId>& methods) {
  std::string out = absl::StrFormat("%-10s %-11s", parameter, "candidates");
  for (MethodId method : methods) {
    absl::StrAppend(&out, absl::StrFormat(" %-14s",
                                          absl::StrCat(std::string(MethodName(method)),
                                                       " tc(s)")));
    absl::StrAppend(&out, absl::StrFormat(" %-14s",
                                          absl::StrCat(std::string(MethodName(method)),
                                                       " eff")));
  }
  out += "\n";
  for (const SweepPoint& point : points) {
    absl::StrAppend(&out, absl::StrFormat("%-10s %-11d",
                                          FormatReal(point.parameter),
                                          point.candidates));
    for (MethodId method : methods) {
      auto it = point.methods.find(method);
      if (it == point.methods.end()) {
        absl::StrAppend(&out, absl::StrFormat(" %-14s %-14s", "-", "-"));
        continue;
      }
      absl::StrAppend(&out, absl::StrFormat(" %-14.6f %-14.4f",
                                            it->second.tc_mean,
                                            it->second.eff_mean));
    }
    out += "\n";
  }
  return out;
}

int RunBench(const BenchFlags& flags) {
  absl::StatusOr<std::vector<MethodId>> methods = ParseMethods(flags.methods);
  if (!methods.ok()) return Fail(methods.status());
  DAConfig da_config{.alpha = flags.alpha, .gamma = flags.gamma};
  if (absl::Status s = ValidateDAConfig(da_config); !s.ok()) return Fail(s);
  const TrainConfig train_config =
      MakeTrainConfig(flags.trees, flags.depth, flags.features_per_tree,
                      flags.min_leaf, !flags.no_bootstrap, flags.seed);
  if (absl::Status s = ResolveTrainConfig(train_config, 1).status(); !s.ok()) {
    return Fail(s);
  }
  if (flags.max_queries < 0) return Usage("--max-queries must be >= 0");
  if (flags.repeats < 1) return Usage("--repeats must be >= 1");
  std::optional<Sweep> sweep;
  if (!flags.sweep.empty()) {
    absl::StatusOr<Sweep> parsed = ParseSweep(flags.sweep);
    if (!parsed.ok()) return Fail(parsed.status());
    sweep = std::move(*parsed);
  }

  absl::StatusOr<Dataset> dataset = LoadDataset(flags.input);
  if (!dataset.ok()) return Fail(dataset.status());
  const uint64_t method_seed = DeriveSeed(flags.seed, SeedStream::kMethod);

  if (sweep.has_value()) {
    SweepOptions options;
    options.methods = *methods;
    options.train_config = train_config;
    options.da_config = da_config;
    options.seed = method_seed;
    options.max_queries = flags.max_queries > 0 ? flags.max_queries : 50;
    options.timing_repeats = flags.repeats;
    absl::StatusOr<std::vector<SweepPoint>> points;
    std::vector<MethodId> shown = *methods;
    if (sweep->parameter == "trees") {
      std::vector<int> counts;
      for (double v : sweep->values) counts.push_back(static_cast<int>(v));
      points = ScalabilitySweep(*dataset, counts, options);
    } else {
      points = AlphaSweep(*dataset, sweep->values, options);
      shown = {MethodId::kDA};
    }
    if (!points.ok()) return Fail(points.status());
    if (absl::Status s = WriteFile(
            flags.sweep_out, SweepToCsv(sweep->parameter, *points, shown));
        !s.ok()) {
      return Fail(s);
    }
    std::cout << FormatSweepTable(sweep->parameter, *points, shown);
    return kExitOk;
  }

  BenchmarkOptions options;
  options.methods = *methods;
  options.train_config = train_config;
  options.da_config = da_config;
  options.seed = method_seed;
  options.max_queries_per_fold = flags.max_queries;
  absl::StatusOr<BenchmarkResult> result = RunCvBenchmark(*dataset, options);
  if (!result.ok()) return Fail(result.status());
  for (const std::string& warning : result->warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (absl::Status s =
          WriteFile(flags.report, ReportToJson(*result, !flags.no_timing));
      !s.ok()) {
    return Fail(s);
  }
  if (absl::Status s = WriteFile(flags.queries, QueriesToCsv(result->queries));
      !s.ok()) {
    return Fail(s);
  }
  std::cout << absl::StrFormat("%d folds, %d queries\n",
                               result->report.folds.size(),
                               result->queries.size() / methods->size());
  std::cout << FormatSummaryTable(result->report, *methods);
  return kExitOk;
}

void AddTrainOptions(CLI::App* app, int* trees, int* depth,
                     int* features_per_tree, int* min_leaf,
                     bool* no_bootstrap) {
  app->add_option("--trees", *trees, "Number of trees")->capture_default_str();
  app->add_option("--depth", *depth, "Maximum tree depth")
      ->capture_default_str();
  app->add_option("--features-per-tree", *features_per_tree,
                  "Features sampled per tree; 0 means ceil(sqrt(d))")
      ->capture_default_str();
  app->add_option("--min-leaf", *min_leaf, "Minimum samples per leaf")
      ->capture_default_str();
  app->add_flag("--no-bootstrap", *no_bootstrap,
                "Train every tree on the full sample");
}

// Replaces `--config FILE` in the arguments of a subcommand with the
// options the file sets, skipping those already on the command line.
absl::Status ExpandConfig(const CLI::App& app, std::vector<std::string>* args) {
  if (args->empty()) return absl::OkStatus();
  const CLI::App* sub = nullptr;
  for (const CLI::App* candidate : app.get_subcommands({})) {
    if (candidate->get_name() == args->front()) sub = candidate;
  }
  if (sub == nullptr) return absl::OkStatus();

  std::string path;
  std::vector<std::string> rest;
  for (size_t k = 0; k < args->size(); ++k) {
    const std::string& arg = (*args)[k];
    if (arg == "--config") {
      if (k + 1 == args->size()) {
        return absl::InvalidArgumentError("--config needs a file");
      }
      path = (*args)[++k];
    } else if (arg.starts_with("--config=")) {
      path = arg.substr(9);
    } else {
      rest.push_back(arg);
    }
  }
  if (path.empty()) return absl::OkStatus();
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();

  auto on_command_line = [&](const CLI::Option* option) {
    for (const std::string& arg : rest) {
      const std::string name = arg.substr(0, arg.find('='));
      if (name.starts_with("--") && option->check_lname(name.substr(2))) {
        return true;
      }
      if (name.size() == 2 && name[0] == '-' &&
          option->check_sname(name.substr(1))) {
        return true;
      }
    }
    return false;
  };

  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(*text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": expected key=value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (absl::StartsWith(key, "--")) key = key.substr(2);
    const CLI::Option* option = sub->get_option_no_throw("--" + key);
    if (option == nullptr || key == "config") {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": unknown key '", key, "'"));
    }
    if (on_command_line(option)) continue;
    if (option->get_type_size() == 0) {
      if (value == "true" || value == "1") {
        rest.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ":", line_number, ": '", key, "' expects true or false"));
      }
      continue;
    }
    rest.push_back("--" + key);
    rest.push_back(value);
  }
  *args = std::move(rest);
  return absl::OkStatus();
}

int Main(int argc, char** argv) {
  CLI::App app{"Single-feature feedback from random forest classifiers"};
  app.require_subcommand(1);
  std::string config_path;

  GenDataFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "Write a synthetic CSV");
  gen_cmd->add_option("--config", config_path, "key=value defaults file");
  gen_cmd->add_option("--n", gen.n, "Total instances, half per class")
      ->capture_default_str();
  gen_cmd->add_option("--d", gen.d, "Number of features")
      ->capture_default_str();
  gen_cmd->add_option("--groups", gen.groups, "Number of novice groups")
      ->capture_default_str();
  gen_cmd->add_option("--sep", gen.sep, "Class center distance in sigmas")
      ->capture_default_str();
  gen_cmd->add_option("--sigma", gen.sigma, "Noise standard deviation")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Output CSV")->required();

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a forest");
  train_cmd->add_option("--config", config_path, "key=value defaults file");
  train_cmd->add_option("-i,--input", train.input, "Dataset CSV")->required();
  train_cmd->add_option("-o,--output", train.output, "Forest JSON")
      ->required();
  AddTrainOptions(train_cmd, &train.trees, &train.depth,
                  &train.features_per_tree, &train.min_leaf,
                  &train.no_bootstrap);
  train_cmd->add_option("--seed", train.seed, "Seed")->capture_default_str();

  FeedbackFlags feedback;
  CLI::App* feedback_cmd =
      app.add_subcommand("feedback", "Formulate feedback for one query");
  feedback_cmd->add_option("--config", config_path, "key=value defaults file");
  feedback_cmd->add_option("--forest", feedback.forest, "Forest JSON")
      ->required();
  feedback_cmd->add_option("--x", feedback.x,
                           "Comma-separated query, e.g. 0.9,0.2");
  feedback_cmd->add_option("--data", feedback.data, "Dataset CSV");
  feedback_cmd->add_option("--row", feedback.row,
                           "1-based data row of --data to use as the query");
  feedback_cmd
      ->add_option("--method", feedback.method,
                   "da, rand-rand, rand-iter or iter-iter")
      ->capture_default_str();
  feedback_cmd->add_option("--alpha", feedback.alpha, "Sampling proportion")
      ->capture_default_str();
  feedback_cmd->add_option("--gamma", feedback.gamma, "Neighbour radius")
      ->capture_default_str();
  feedback_cmd->add_option("--seed", feedback.seed, "Seed")
      ->capture_default_str();

  BenchFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Leave-one-group-out benchmark or sweep");
  bench_cmd->add_option("--config", config_path, "key=value defaults file");
  bench_cmd->add_option("-i,--input", bench.input, "Dataset CSV")->required();
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods")
      ->capture_default_str();
  bench_cmd->add_option("--report", bench.report, "Report JSON")
      ->capture_default_str();
  bench_cmd->add_option("--queries", bench.queries, "Per-query CSV")
      ->capture_default_str();
  bench_cmd->add_option("--sweep", bench.sweep,
                        "trees=START:STOP:STEP or alpha=START:STOP:STEP");
  bench_cmd->add_option("--sweep-out", bench.sweep_out, "Sweep CSV")
      ->capture_default_str();
  AddTrainOptions(bench_cmd, &bench.trees, &bench.depth,
                  &bench.features_per_tree, &bench.min_leaf,
                  &bench.no_bootstrap);
  bench_cmd->add_option("--alpha", bench.alpha, "Sampling proportion")
      ->capture_default_str();
  bench_cmd->add_option("--gamma", bench.gamma, "Neighbour radius")
      ->capture_default_str();
  bench_cmd->add_option("--max-queries", bench.max_queries,
                        "Queries per fold (sweeps: sample size); 0 = all")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats,
                        "Timing repeats per sweep query")
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", bench.no_timing,
                      "Leave timing fields out of the report");
  bench_cmd->add_option("--seed", bench.seed, "Seed")->capture_default_str();

  std::vector<std::string> args(argv + 1, argv + argc);
  if (absl::Status s = ExpandConfig(app, &args); !s.ok()) return Fail(s);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gen_cmd->parsed()) return RunGenData(gen);
  if (train_cmd->parsed()) return RunTrain(train);
  if (feedback_cmd->parsed()) return RunFeedback(feedback);
  return RunBench(bench);
}

}  // namespace
}  // namespace rfrecourse

int main(int argc, char** argv) { return rfrecourse::Main(argc, argv); }
