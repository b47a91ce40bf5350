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

#include "rfrecourse/metrics.h"

#include <cmath>
#include <vector>

namespace rfrecourse {

QueryResult MakeQueryResult(MethodId method, int fold,
                            const FeedbackAction& action, double micros) {
  QueryResult result;
  result.method = method;
  result.fold = fold;
  result.f_before = action.f_before;
  result.f_after = action.achieved_f;
  result.success = action.achieved_f > 0.5;
  result.micros = micros;
  result.feature = action.feature_name;
  result.direction = action.direction;
  result.target = action.target_value;
  return result;
}

MeanStd ComputeMeanStd(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  double squares = 0.0;
  for (double v : values) squares += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(squares / values.size());
  return out;
}

namespace {

absl::Status RequireNonEmpty(std::span<const QueryResult> results) {
  if (results.empty()) {
    return absl::InvalidArgumentError("undefined metric: no query results");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> SuccessRate(std::span<const QueryResult> results) {
  if (absl::Status s = RequireNonEmpty(results); !s.ok()) return s;
  int successes = 0;
  for (const QueryResult& r : results) successes += r.f_after > 0.5;
  return static_cast<double>(successes) / results.size();
}

absl::StatusOr<MeanStd> Effectiveness(std::span<const QueryResult> results) {
  if (absl::Status s = RequireNonEmpty(results); !s.ok()) return s;
  std::vector<double> values;
  values.reserve(results.size());
  for (const QueryResult& r : results) values.push_back(r.f_after);
  return ComputeMeanStd(values);
}

absl::StatusOr<MeanStd> TimeCost(std::span<const QueryResult> results) {
  if (absl::Status s = RequireNonEmpty(results); !s.ok()) return s;
  std::vector<double> values;
  values.reserve(results.size());
  for (const QueryResult& r : results) values.push_back(r.micros * 1e-6);
  return ComputeMeanStd(values);
}

absl::StatusOr<MethodMetrics> Summarize(std::span<const QueryResult> results) {
  if (absl::Status s = RequireNonEmpty(results); !s.ok()) return s;
  MethodMetrics metrics;
  metrics.n_queries = static_cast<int>(results.size());
  metrics.sr = *SuccessRate(results);
  const MeanStd eff = *Effectiveness(results);
  metrics.eff_mean = eff.mean;
  metrics.eff_std = eff.std;
  const MeanStd tc = *TimeCost(results);
  metrics.tc_mean = tc.mean;
  metrics.tc_std = tc.std;
  return metrics;
}

}  // namespace rfrecourse
