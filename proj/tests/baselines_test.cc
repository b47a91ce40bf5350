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

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "rfrecourse/feedback.h"
#include "test_util.h"

namespace rfrecourse {
namespace {

TEST(MethodNameTest, RoundTrip) {
  for (MethodId method : kAllMethods) {
    EXPECT_EQ(ParseMethod(MethodName(method)), method);
  }
  EXPECT_EQ(MethodName(MethodId::kRandIter), "rand-iter");
  EXPECT_FALSE(ParseMethod("ilp").has_value());
}

TEST(IterIterTest, WorkedExample) {
  const RandomForest forest = testing::ThreeTreeForest();
  absl::StatusOr<FeedbackAction> action =
      IterIter(forest, BuildPartitionTable(forest),
               std::vector<double>{0.9, 0.2});
  ASSERT_TRUE(action.ok());
  EXPECT_EQ(action->feature, 0);
  EXPECT_EQ(action->target_value, 0.4);
  EXPECT_DOUBLE_EQ(action->achieved_f, 2.0 / 3.0);
}

TEST(IterIterTest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 4)(rng);
    const RandomForest forest = testing::RandomSmallForest(rng, d, 7, 3);
    const PartitionTable table = BuildPartitionTable(forest);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> x = testing::RandomQuery(rng, d);
      absl::StatusOr<FeedbackAction> action = IterIter(forest, table, x);
      ASSERT_TRUE(action.ok());
      EXPECT_EQ(action->achieved_f * forest.num_trees(),
                testing::OracleBestSingleChange(forest, x));
    }
  }
}

TEST(IterIterTest, KeepsQueryWhenNothingImproves) {
  // A forest whose single tree votes expert nowhere.
  testing::TreeBuilder b;
  const int root = b.Split(0, 0.5);
  const int l = b.Leaf(kNovice);
  const int r = b.Leaf(kNovice);
  b.Children(root, l, r);
  RandomForest forest;
  forest.schema = testing::UnitSchema(1);
  forest.trees.push_back(b.Build());
  absl::StatusOr<FeedbackAction> action =
      IterIter(forest, BuildPartitionTable(forest), std::vector<double>{0.2});
  ASSERT_TRUE(action.ok());
  EXPECT_FALSE(action->changed());
  EXPECT_EQ(action->achieved_f, 0.0);
}

TEST(RandomMethodsTest, DeterministicPerSeedAndDominatedByIterIter) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomForest forest = testing::RandomSmallForest(rng, 3, 7, 3);
    const PartitionTable table = BuildPartitionTable(forest);
    const std::vector<double> x = testing::RandomQuery(rng, 3);
    const double best = IterIter(forest, table, x)->achieved_f;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      absl::StatusOr<FeedbackAction> rr1 = RandRand(forest, table, x, seed);
      absl::StatusOr<FeedbackAction> rr2 = RandRand(forest, table, x, seed);
      absl::StatusOr<FeedbackAction> ri = RandIter(forest, table, x, seed);
      ASSERT_TRUE(rr1.ok() && rr2.ok() && ri.ok());
      EXPECT_EQ(rr1->target, rr2->target);
      EXPECT_LE(rr1->achieved_f, best);
      EXPECT_LE(ri->achieved_f, best);
      // RAND_ITER is the best partition of the feature RAND_RAND would pick.
      const int feature = rr1->changed() ? rr1->feature : -1;
      if (feature >= 0 && ri->changed()) EXPECT_EQ(ri->feature, feature);
      EXPECT_GE(ri->achieved_f, rr1->achieved_f);
    }
  }
}

TEST(BestPartitionTest, TiesGoToLowestPartition) {
  const RandomForest forest = testing::ThreeTreeForest();
  const PartitionTable table = BuildPartitionTable(forest);
  // Along x2 from (0.9, 0.2), partition 1 scores 1 vote, 2 and 3 score 0.
  EXPECT_EQ(BestPartition(forest, table, std::vector<double>{0.9, 0.2}, 1), 1);
  EXPECT_EQ(BestPartition(forest, table, std::vector<double>{0.9, 0.2}, 0), 2);
}

TEST(FormulateTest, RecordsElapsedTime) {
  const RandomForest forest = testing::ThreeTreeForest();
  const ForestGeometry geometry = BuildForestGeometry(forest);
  for (MethodId method : kAllMethods) {
    absl::StatusOr<FeedbackAction> action = Formulate(
        method, forest, geometry, std::vector<double>{0.9, 0.2}, DAConfig(), 1);
    ASSERT_TRUE(action.ok()) << MethodName(method);
    EXPECT_GT(action->elapsed.count(), 0);
  }
}

TEST(ActionJsonTest, Fields) {
  const RandomForest forest = testing::ThreeTreeForest();
  const ForestGeometry geometry = BuildForestGeometry(forest);
  absl::StatusOr<FeedbackAction> action =
      Formulate(MethodId::kDA, forest, geometry, std::vector<double>{0.9, 0.2},
                DAConfig(), 1);
  ASSERT_TRUE(action.ok());
  const nlohmann::json doc = nlohmann::json::parse(ActionToJson(*action));
  EXPECT_EQ(doc["feature"], "x1");
  EXPECT_EQ(doc["direction"], "decrease");
  EXPECT_EQ(doc["target"], 0.4);
  EXPECT_DOUBLE_EQ(doc["f_after"].get<double>(), 2.0 / 3.0);
  EXPECT_TRUE(doc.contains("micros"));

  FeedbackAction unchanged = MakeAction(forest, geometry.table,
                                        std::vector<double>{0.9, 0.2},
                                        IntegerPoint{{3, 1}}, 0, 3);
  const nlohmann::json none = nlohmann::json::parse(ActionToJson(unchanged));
  EXPECT_TRUE(none["feature"].is_null());
  EXPECT_TRUE(none["target"].is_null());
  EXPECT_EQ(none["direction"], "none");
}

}  // namespace
}  // namespace rfrecourse
