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

// Reference feedback methods.
//
//   RAND_RAND  random feature, random partition.
//   RAND_ITER  random feature, best partition of that feature.
//   ITER_ITER  best (feature, partition) over all single changes. This is
//              the exact optimum of the single-feature problem and the
//              oracle the other methods are compared against.
//
// Candidate values are partition midpoints; the forest is constant on
// partitions, so any interior value would score the same.

#ifndef RFRECOURSE_BASELINES_H_
#define RFRECOURSE_BASELINES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "absl/status/statusor.h"
#include "rfrecourse/discrete_approximation.h"
#include "rfrecourse/feedback.h"
#include "rfrecourse/forest.h"
#include "rfrecourse/geometry.h"

namespace rfrecourse {

enum class MethodId { kDA, kRandRand, kRandIter, kIterIter };

inline constexpr std::array<MethodId, 4> kAllMethods = {
    MethodId::kDA, MethodId::kRandRand, MethodId::kRandIter,
    MethodId::kIterIter};

// "da", "rand-rand", "rand-iter", "iter-iter".
std::string_view MethodName(MethodId method);
std::optional<MethodId> ParseMethod(std::string_view name);

absl::StatusOr<FeedbackAction> RandRand(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x,
                                        uint64_t seed);

absl::StatusOr<FeedbackAction> RandIter(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x,
                                        uint64_t seed);

absl::StatusOr<FeedbackAction> IterIter(const RandomForest& forest,
                                        const PartitionTable& table,
                                        std::span<const double> x);

// Partition of `feature` maximizing F when only that feature changes; ties go
// to the lowest partition.
int BestPartition(const RandomForest& forest, const PartitionTable& table,
                  std::span<const double> x, int feature);

// Runs `method` and records its wall-clock time in the action. `seed` only
// matters for the random methods.
absl::StatusOr<FeedbackAction> Formulate(MethodId method,
                                         const RandomForest& forest,
                                         const ForestGeometry& geometry,
                                         std::span<const double> x,
                                         const DAConfig& da_config,
                                         uint64_t seed);

}  // namespace rfrecourse

#endif  // RFRECOURSE_BASELINES_H_
