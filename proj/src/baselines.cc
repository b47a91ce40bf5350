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

#include "rfrecourse/baselines.h"

#include <chrono>
#include <random>
#include <vector>

namespace rfrecourse {

std::string_view MethodName(MethodId method) {
  switch (method) {
    case MethodId::kDA:
      return "da";
    case MethodId::kRandRand:
      return "rand-rand";
    case MethodId::kRandIter:
      return "rand-iter";
    case MethodId::kIterIter:
      return "iter-iter";
  }
  return "unknown";
}

std::optional<MethodId> ParseMethod(std::string_view name) {
  for (MethodId method : kAllMethods) {
    if (MethodName(method) == name) return method;
  }
  return std::nullopt;
}

int BestPartition(const RandomForest& forest, const PartitionTable& table,
                  std::span<const double> x, int feature) {
  std::vector<double> candidate(x.begin(), x.end());
  int best_partition = 1;
  int best_votes = -1;
  for (int j = 1; j <= table.num_partitions(feature); ++j) {
    candidate[feature] = UndiscretizeValueUnchecked(feature, j, table);
    const int votes = forest.ExpertVotes(candidate);
    if (votes > best_votes) {
      best_votes = votes;
      best_partition = j;
    }
  }
  return best_partition;
}

absl::StatusOr<FeedbackAction> RandRand(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x,
                                        uint64_t seed) {
  if (absl::Status s = CheckQuery(forest.schema, x); !s.ok()) return s;
  std::mt19937_64 rng(seed);
  const int feature = std::uniform_int_distribution<int>(
      0, table.num_features() - 1)(rng);
  const int partition = std::uniform_int_distribution<int>(
      1, table.num_partitions(feature))(rng);
  return MakeAction(forest, table, x, DiscretizePointUnchecked(x, table),
                    feature, partition);
}

absl::StatusOr<FeedbackAction> RandIter(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x,
                                        uint64_t seed) {
  if (absl::Status s = CheckQuery(forest.schema, x); !s.ok()) return s;
  std::mt19937_64 rng(seed);
  const int feature = std::uniform_int_distribution<int>(
      0, table.num_features() - 1)(rng);
  const int partition = BestPartition(forest, table, x, feature);
  return MakeAction(forest, table, x, DiscretizePointUnchecked(x, table),
                    feature, partition);
}

absl::StatusOr<FeedbackAction> IterIter(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x) {
  if (absl::Status s = CheckQuery(forest.schema, x); !s.ok()) return s;
  std::vector<double> candidate(x.begin(), x.end());
  int best_feature = 0;
  int best_partition = 1;
  int best_votes = -1;
  for (int i = 0; i < table.num_features(); ++i) {
    for (int j = 1; j <= table.num_partitions(i); ++j) {
      candidate[i] = UndiscretizeValueUnchecked(i, j, table);
      const int votes = forest.ExpertVotes(candidate);
      if (votes > best_votes) {
        best_votes = votes;
        best_feature = i;
        best_partition = j;
      }
    }
    candidate[i] = x[i];
  }
  return MakeAction(forest, table, x, DiscretizePointUnchecked(x, table),
                    best_feature, best_partition);
}

absl::StatusOr<FeedbackAction> Formulate(MethodId method,
                                         const RandomForest& forest,
                                         const ForestGeometry& geometry,
                                         std::span<const double> x,
                                         const DAConfig& da_config,
                                         uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<FeedbackAction> action;
  switch (method) {
    case MethodId::kDA:
      action = FormulateFeedback(forest, geometry, x, da_config);
      break;
    case MethodId::kRandRand:
      action = RandRand(forest, geometry.table, x, seed);
      break;
    case MethodId::kRandIter:
      action = RandIter(forest, geometry.table, x, seed);
      break;
    case MethodId::kIterIter:
      action = IterIter(forest, geometry.table, x);
      break;
  }
  if (action.ok()) action->elapsed = std::chrono::steady_clock::now() - start;
  return action;
}

}  // namespace rfrecourse
