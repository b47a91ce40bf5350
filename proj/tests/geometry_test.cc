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

#include "rfrecourse/geometry.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace rfrecourse {
namespace {

PartitionTable ExampleTable() {
  return PartitionTable(testing::UnitSchema(2), {{0.3, 0.5}, {0.2, 0.7}});
}

TEST(PartitionTableTest, ExampleEdges) {
  const PartitionTable table = ExampleTable();
  EXPECT_EQ(table.num_partitions(0), 3);
  EXPECT_EQ(table.num_partitions(1), 3);
  EXPECT_EQ(table.total_partitions(), 6);
  EXPECT_DOUBLE_EQ(table.lower_edge(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(table.upper_edge(0, 1), 0.3);
  EXPECT_DOUBLE_EQ(table.lower_edge(0, 3), 0.5);
  EXPECT_DOUBLE_EQ(table.upper_edge(0, 3), 1.0);
}

TEST(PartitionTableTest, BuiltFromForestThresholds) {
  const RandomForest forest = testing::ThreeTreeForest();
  EXPECT_EQ(BuildPartitionTable(forest), ExampleTable());
}

TEST(PartitionTableTest, OutOfDomainThresholdsAreDropped) {
  RandomForest forest = testing::ThreeTreeForest();
  forest.trees[0].nodes[0].threshold = 1.0;
  forest.trees[1].nodes[0].threshold = -0.5;
  const PartitionTable table = BuildPartitionTable(forest);
  ASSERT_EQ(table.thresholds(0).size(), 1u);
  EXPECT_DOUBLE_EQ(table.thresholds(0)[0], 0.5);
}

TEST(DiscretizeTest, ExamplePoint) {
  absl::StatusOr<IntegerPoint> p =
      DiscretizePoint(std::vector<double>{0.4, 0.8}, ExampleTable());
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->coords, (std::vector<int>{2, 3}));
}

TEST(DiscretizeTest, BoundariesBelongBelow) {
  const PartitionTable table = ExampleTable();
  EXPECT_EQ(DiscretizePointUnchecked(std::vector<double>{0.0, 0.2}, table)
                .coords,
            (std::vector<int>{1, 1}));
  EXPECT_EQ(DiscretizePointUnchecked(std::vector<double>{0.3, 0.7}, table)
                .coords,
            (std::vector<int>{1, 2}));
  EXPECT_EQ(DiscretizePointUnchecked(std::vector<double>{0.30001, 1.0}, table)
                .coords,
            (std::vector<int>{2, 3}));
}

TEST(DiscretizeTest, RejectsOutOfDomainAndWrongSize) {
  const PartitionTable table = ExampleTable();
  EXPECT_EQ(DiscretizePoint(std::vector<double>{1.2, 0.5}, table)
                .status()
                .code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(DiscretizePoint(std::vector<double>{0.5}, table).ok());
}

TEST(UndiscretizeTest, MidpointsAndRoundTrip) {
  const PartitionTable table = ExampleTable();
  EXPECT_DOUBLE_EQ(UndiscretizeValueUnchecked(0, 2, table), 0.4);
  EXPECT_DOUBLE_EQ(UndiscretizeValueUnchecked(1, 1, table), 0.1);
  EXPECT_DOUBLE_EQ(UndiscretizeValueUnchecked(1, 3, table), 0.85);
  EXPECT_EQ(UndiscretizeValue(0, 4, table).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(UndiscretizeValue(0, 0, table).ok());
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const IntegerPoint p{{a, b}};
      EXPECT_EQ(DiscretizePointUnchecked(UndiscretizePoint(p, table), table),
                p);
    }
  }
}

TEST(RectTest, ExampleLeafTransform) {
  // First fixture tree: the expert leaf {x1 > 0.5, x2 <= 0.2}.
  const RandomForest forest = testing::ThreeTreeForest();
  const PartitionTable table = BuildPartitionTable(forest);
  const std::vector<IntRect> rects = ExtractExpertRects(forest, table);
  ASSERT_EQ(rects.size(), 3u);
  EXPECT_EQ(rects[0].tree_index, 0);
  EXPECT_EQ(rects[0].lower, (std::vector<int>{2, 0}));
  EXPECT_EQ(rects[0].upper, (std::vector<int>{3, 1}));
  EXPECT_EQ(rects[1].lower, (std::vector<int>{1, 0}));
  EXPECT_EQ(rects[1].upper, (std::vector<int>{2, 3}));
  EXPECT_EQ(rects[2].lower, (std::vector<int>{0, 0}));
  EXPECT_EQ(rects[2].upper, (std::vector<int>{2, 2}));
}

TEST(RectTest, ExampleEnumeration) {
  // {1 < p1 <= 3, 2 < p2 <= 3} holds exactly (2, 3) and (3, 3).
  IntRect rect;
  rect.lower = {1, 2};
  rect.upper = {3, 3};
  rect.label = kExpert;
  EXPECT_EQ(rect.Volume(), 2);
  absl::StatusOr<std::vector<IntegerPoint>> points = EnumeratePoints(rect, 100);
  ASSERT_TRUE(points.ok());
  EXPECT_EQ(*points,
            (std::vector<IntegerPoint>{IntegerPoint{{2, 3}},
                                       IntegerPoint{{3, 3}}}));
  EXPECT_TRUE(rect.Contains(IntegerPoint{{2, 3}}));
  EXPECT_FALSE(rect.Contains(IntegerPoint{{1, 3}}));
  EXPECT_EQ(EnumeratePoints(rect, 1).status().code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(RectTest, VolumeSaturates) {
  IntRect rect;
  rect.lower.assign(8, 0);
  rect.upper.assign(8, 1 << 20);
  EXPECT_EQ(rect.Volume(), std::numeric_limits<int64_t>::max());
}

TEST(DistanceTest, HammingAndEuclidean) {
  const IntegerPoint a{{1, 2, 3}};
  const IntegerPoint b{{1, 5, 7}};
  EXPECT_EQ(HammingDistance(a, b), 2);
  EXPECT_DOUBLE_EQ(EuclideanDistance(a, b), 5.0);
  EXPECT_EQ(HammingDistance(a, a), 0);
}

// Samples a real point uniformly inside the partition cell `cell`.
std::vector<double> SampleInCell(const PartitionTable& table,
                                 const IntegerPoint& cell,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(cell.size());
  for (int i = 0; i < cell.size(); ++i) {
    const double lo = table.lower_edge(i, cell[i]);
    const double hi = table.upper_edge(i, cell[i]);
    // 1 - u lies in (0, 1], so the sample stays inside (lo, hi].
    x[i] = std::min(hi, lo + (1.0 - unit(rng)) * (hi - lo));
  }
  return x;
}

IntegerPoint RandomCell(const PartitionTable& table, std::mt19937_64& rng) {
  IntegerPoint cell;
  for (int i = 0; i < table.num_features(); ++i) {
    cell.coords.push_back(std::uniform_int_distribution<int>(
        1, table.num_partitions(i))(rng));
  }
  return cell;
}

TEST(GeometryPropertyTest, PredictionIsConstantOnCells) {
  std::mt19937_64 rng(31);
  int pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const RandomForest forest = testing::RandomSmallForest(rng, 3, 8, 4);
    const PartitionTable table = BuildPartitionTable(forest);
    for (int k = 0; k < 10; ++k, ++pairs) {
      const IntegerPoint cell = RandomCell(table, rng);
      const std::vector<double> a = SampleInCell(table, cell, rng);
      const std::vector<double> b = SampleInCell(table, cell, rng);
      ASSERT_EQ(DiscretizePointUnchecked(a, table), cell);
      ASSERT_EQ(DiscretizePointUnchecked(b, table), cell);
      EXPECT_EQ(forest.ExpertVotes(a), forest.ExpertVotes(b));
      EXPECT_EQ(forest.ExpertVotes(a),
                forest.ExpertVotes(UndiscretizePoint(cell, table)));
    }
  }
  EXPECT_EQ(pairs, 1000);
}

TEST(GeometryPropertyTest, RectanglesCountVotes) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomForest forest = testing::RandomSmallForest(rng, 3, 6, 3);
    const ForestGeometry geometry = BuildForestGeometry(forest);
    const std::vector<IntRect> all = ExtractRects(forest, geometry.table);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> x = testing::RandomQuery(rng, 3);
      const IntegerPoint q = DiscretizePointUnchecked(x, geometry.table);
      int expert_hits = 0;
      for (const IntRect& rect : geometry.expert_rects) {
        expert_hits += rect.Contains(q) ? 1 : 0;
      }
      EXPECT_EQ(expert_hits, testing::OracleVotes(forest, x));
      // Every tree places q in exactly one of its leaves.
      std::vector<int> per_tree(forest.num_trees(), 0);
      for (const IntRect& rect : all) {
        if (rect.Contains(q)) ++per_tree[rect.tree_index];
      }
      for (int hits : per_tree) EXPECT_EQ(hits, 1);
    }
  }
}

TEST(GeometryPropertyTest, UnreachableLeavesAreSkipped) {
  // x1 <= 0.5 then x1 > 0.7 can never hold.
  testing::TreeBuilder b;
  const int root = b.Split(0, 0.5);
  const int inner = b.Split(0, 0.7);
  const int dead_left = b.Leaf(kNovice);
  const int dead = b.Leaf(kExpert);
  b.Children(inner, dead_left, dead);
  const int right = b.Leaf(kNovice);
  b.Children(root, inner, right);
  RandomForest forest;
  forest.schema = testing::UnitSchema(1);
  forest.trees.push_back(b.Build());
  const PartitionTable table = BuildPartitionTable(forest);
  EXPECT_EQ(ExtractRects(forest, table).size(), 2u);
  EXPECT_TRUE(ExtractExpertRects(forest, table).empty());
}

}  // namespace
}  // namespace rfrecourse
