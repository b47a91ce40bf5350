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

// Per-query outcomes and the success-rate / effectiveness / time-cost
// aggregates.

#ifndef RFRECOURSE_METRICS_H_
#define RFRECOURSE_METRICS_H_

#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "rfrecourse/baselines.h"
#include "rfrecourse/feedback.h"

namespace rfrecourse {

struct QueryResult {
  MethodId method = MethodId::kDA;
  int fold = 0;
  double f_before = 0.0;
  double f_after = 0.0;
  // f_after > 0.5.
  bool success = false;
  // Wall-clock time of the feedback formulation alone.
  double micros = 0.0;
  // Changed feature name, empty when unchanged or when no action was found.
  std::string feature;
  Direction direction = Direction::kNone;
  double target = 0.0;
};

// Fills a result from an action.
QueryResult MakeQueryResult(MethodId method, int fold,
                            const FeedbackAction& action, double micros);

struct MeanStd {
  double mean = 0.0;
  // Population standard deviation.
  double std = 0.0;
};

MeanStd ComputeMeanStd(std::span<const double> values);

// Fraction of results with f_after > 0.5. Fails on empty input.
absl::StatusOr<double> SuccessRate(std::span<const QueryResult> results);

// Mean and std of f_after over every attempted query. Fails on empty input.
absl::StatusOr<MeanStd> Effectiveness(std::span<const QueryResult> results);

// Mean and std of the formulation time in seconds. Fails on empty input.
absl::StatusOr<MeanStd> TimeCost(std::span<const QueryResult> results);

struct MethodMetrics {
  int n_queries = 0;
  double sr = 0.0;
  double eff_mean = 0.0;
  double eff_std = 0.0;
  double tc_mean = 0.0;
  double tc_std = 0.0;
};

// Aggregates the results of one method. Fails on empty input.
absl::StatusOr<MethodMetrics> Summarize(std::span<const QueryResult> results);

}  // namespace rfrecourse

#endif  // RFRECOURSE_METRICS_H_
