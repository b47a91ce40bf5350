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

#include "rfrecourse/feedback.h"

#include "json.hpp"

namespace rfrecourse {

std::string_view DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kIncrease:
      return "increase";
    case Direction::kDecrease:
      return "decrease";
    case Direction::kNone:
      break;
  }
  return "none";
}

FeedbackAction MakeAction(const RandomForest& forest,
                          const PartitionTable& table,
                          std::span<const double> x, const IntegerPoint& q,
                          int feature, int partition) {
  FeedbackAction action;
  action.query_point = q;
  action.target_point = q;
  action.target.assign(x.begin(), x.end());
  action.f_before = PredictProbaUnchecked(forest, x);

  if (feature < 0 || partition == q[feature]) {
    action.achieved_f = action.f_before;
    return action;
  }
  action.feature = feature;
  action.feature_name = forest.schema[feature].name;
  action.target_value = UndiscretizeValueUnchecked(feature, partition, table);
  action.direction =
      partition > q[feature] ? Direction::kIncrease : Direction::kDecrease;
  action.target_point[feature] = partition;
  action.target[feature] = action.target_value;
  action.achieved_f = PredictProbaUnchecked(forest, action.target);
  return action;
}

std::string ActionToJson(const FeedbackAction& action) {
  nlohmann::ordered_json doc;
  if (action.changed()) {
    doc["feature"] = action.feature_name;
  } else {
    doc["feature"] = nullptr;
  }
  doc["direction"] = std::string(DirectionName(action.direction));
  if (action.changed()) {
    doc["target"] = action.target_value;
  } else {
    doc["target"] = nullptr;
  }
  doc["f_before"] = action.f_before;
  doc["f_after"] = action.achieved_f;
  doc["micros"] = action.micros();
  return doc.dump();
}

}  // namespace rfrecourse
