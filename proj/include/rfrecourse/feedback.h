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

#ifndef RFRECOURSE_FEEDBACK_H_
#define RFRECOURSE_FEEDBACK_H_

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfrecourse/forest.h"
#include "rfrecourse/geometry.h"

namespace rfrecourse {

enum class Direction { kNone, kIncrease, kDecrease };

std::string_view DirectionName(Direction direction);

// A single-feature change x -> x_f and its effect on the forest.
struct FeedbackAction {
  // Changed feature, or -1 when the action keeps x unchanged.
  int feature = -1;
  std::string feature_name;
  Direction direction = Direction::kNone;
  // New value of `feature` in original units; equals x[feature] when
  // unchanged.
  double target_value = 0.0;
  IntegerPoint query_point;
  IntegerPoint target_point;
  std::vector<double> target;
  double f_before = 0.0;
  // F(x_f).
  double achieved_f = 0.0;
  std::chrono::nanoseconds elapsed{0};

  bool changed() const { return feature >= 0; }
  double micros() const { return elapsed.count() / 1000.0; }
};

// Builds the action that moves `x` into `partition` of `feature` (the
// partition midpoint is used as the new value). feature == -1, or the
// partition already holding x, yields the no-change action.
FeedbackAction MakeAction(const RandomForest& forest,
                          const PartitionTable& table,
                          std::span<const double> x, const IntegerPoint& q,
                          int feature, int partition);

// {"feature", "direction", "target", "f_before", "f_after", "micros"}.
// feature and target are null for the no-change action.
std::string ActionToJson(const FeedbackAction& action);

}  // namespace rfrecourse

#endif  // RFRECOURSE_FEEDBACK_H_
