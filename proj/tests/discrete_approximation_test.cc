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

#include "rfrecourse/discrete_approximation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "rfrecourse/baselines.h"
#include "test_util.h"

namespace rfrecourse {
namespace {

IntRect MakeRect(std::vector<int> lower, std::vector<int> upper) {
  IntRect rect;
  rect.lower = std::move(lower);
  rect.upper = std::move(upper);
  rect.label = kExpert;
  return rect;
}

// Reference densest center: explicit distance matrix over all occurrences.
IntegerPoint BruteForceCenter(const std::vector<IntegerPoint>& points,
                              double gamma) {
  const int n = static_cast<int>(points.size());
  int best = -1;
  int64_t best_count = -1;
  double best_sum = 0.0;
  for (int a = 0; a < n; ++a) {
    int64_t count = 0;
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
      double sq = 0.0;
      for (int i = 0; i < points[a].size(); ++i) {
        const double diff = points[a][i] - points[b][i];
        sq += diff * diff;
      }
      sum += std::sqrt(sq);
      if (b != a && sq <= gamma * gamma) ++count;
    }
    bool better = false;
    if (best < 0 || count > best_count) {
      better = true;
    } else if (count == best_count) {
      const double tolerance = 1e-9 * std::max(1.0, best_sum);
      if (sum < best_sum - tolerance) {
        better = true;
      } else if (sum <= best_sum + tolerance && points[a] < points[best]) {
        better = true;
      }
    }
    if (better) {
      best = a;
      best_count = count;
      best_sum = sum;
    }
  }
  return points[best];
}

TEST(ConfigTest, Validation) {
  EXPECT_TRUE(ValidateDAConfig({.alpha = 0.5, .gamma = 2.0}).ok());
  EXPECT_TRUE(ValidateDAConfig({.alpha = 1.0, .gamma = 0.0}).ok());
  EXPECT_FALSE(ValidateDAConfig({.alpha = 0.0, .gamma = 2.0}).ok());
  EXPECT_FALSE(ValidateDAConfig({.alpha = 1.5, .gamma = 2.0}).ok());
  EXPECT_FALSE(ValidateDAConfig({.alpha = 0.5, .gamma = -1.0}).ok());
  EXPECT_FALSE(ValidateDAConfig({.alpha = 0.5, .gamma = NAN}).ok());
}

TEST(PruneTest, RemovesRectanglesNeedingTwoChanges) {
  const IntegerPoint q{{2, 3}};
  const IntRect far = MakeRect({0, 4}, {1, 5});
  const Violation v = FindViolations(far, q);
  EXPECT_EQ(v.count, 2);
  const std::vector<IntRect> rects = {far};
  EXPECT_TRUE(PruneRects(rects, q).empty());
}

TEST(PruneTest, FixesSatisfiedDimensionsToQuery) {
  const IntegerPoint q{{2, 3}};
  const std::vector<IntRect> rects = {MakeRect({1, 4}, {3, 5})};
  const std::vector<PrunedRect> pruned = PruneRects(rects, q);
  ASSERT_EQ(pruned.size(), 1u);
  EXPECT_EQ(pruned[0].source, 0);
  ASSERT_TRUE(pruned[0].free_dim.has_value());
  EXPECT_EQ(*pruned[0].free_dim, 1);
  // {p1 = 2, 4 < p2 <= 5}.
  EXPECT_EQ(pruned[0].lower, (std::vector<int>{1, 4}));
  EXPECT_EQ(pruned[0].upper, (std::vector<int>{2, 5}));
}

TEST(PruneTest, ContainingRectangleCollapsesToQuery) {
  const IntegerPoint q{{2, 3}};
  const std::vector<IntRect> rects = {MakeRect({0, 0}, {4, 4})};
  const std::vector<PrunedRect> pruned = PruneRects(rects, q);
  ASSERT_EQ(pruned.size(), 1u);
  EXPECT_FALSE(pruned[0].free_dim.has_value());
  EXPECT_EQ(pruned[0].AsRect().Volume(), 1);
  EXPECT_TRUE(pruned[0].AsRect().Contains(q));
}

TEST(PruneTest, SoundAgainstEnumeration) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coord(0, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 3)(rng);
    IntRect rect;
    rect.label = kExpert;
    IntegerPoint q;
    for (int i = 0; i < d; ++i) {
      int a = coord(rng);
      int b = coord(rng);
      if (a == b) ++b;
      rect.lower.push_back(std::min(a, b));
      rect.upper.push_back(std::max(a, b));
      q.coords.push_back(std::uniform_int_distribution<int>(1, 6)(rng));
    }
    std::set<IntegerPoint> feasible;
    absl::StatusOr<std::vector<IntegerPoint>> all = EnumeratePoints(rect, 1000);
    ASSERT_TRUE(all.ok());
    for (const IntegerPoint& p : *all) {
      if (HammingDistance(p, q) <= 1) feasible.insert(p);
    }
    const std::vector<IntRect> rects = {rect};
    const std::vector<PrunedRect> pruned = PruneRects(rects, q);
    if (feasible.empty()) {
      EXPECT_TRUE(pruned.empty());
      continue;
    }
    ASSERT_EQ(pruned.size(), 1u);
    absl::StatusOr<std::vector<IntegerPoint>> kept =
        EnumeratePoints(pruned[0].AsRect(), 1000);
    ASSERT_TRUE(kept.ok());
    const std::set<IntegerPoint> kept_set(kept->begin(), kept->end());
    for (const IntegerPoint& p : kept_set) EXPECT_TRUE(feasible.contains(p));
    if (rect.Contains(q)) {
      // Every dimension is satisfied and fixed to q.
      EXPECT_EQ(kept_set, std::set<IntegerPoint>{q});
    } else {
      EXPECT_EQ(kept_set, feasible);
    }
  }
}

TEST(RepresentativesTest, CountsPerDimension) {
  EXPECT_EQ(RepresentativesPerDim(0, 1, 0.5), 1);
  EXPECT_EQ(RepresentativesPerDim(3, 5, 0.5), 2);
  EXPECT_EQ(RepresentativesPerDim(0, 3, 0.5), 4);
  EXPECT_EQ(RepresentativesPerDim(0, 10, 0.5), 7);
  EXPECT_EQ(RepresentativesPerDim(0, 10, 0.1), 3);
  EXPECT_EQ(RepresentativesPerDim(0, 30, 0.1), 5);
  EXPECT_EQ(RepresentativesPerDim(0, 10, 1.0), 12);
}

TEST(RepresentativesTest, ValuesIncludeBothEnds) {
  EXPECT_EQ(RepresentativeValues(0, 10, 0.1), (std::vector<int>{1, 6, 10}));
  EXPECT_EQ(RepresentativeValues(2, 4, 0.5), (std::vector<int>{3, 4}));
  EXPECT_EQ(RepresentativeValues(0, 4, 0.5), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(RepresentativeValues(0, 10, 0.5),
            (std::vector<int>{1, 3, 4, 6, 7, 9, 10}));
}

TEST(RepresentativesTest, CountsWithEndpointInclusionProperty) {
  for (int width = 1; width <= 60; ++width) {
    for (int step = 1; step <= 20; ++step) {
      const double alpha = step / 20.0;
      const int l = width % 7;
      const int r = l + width;
      // ceil(alpha * width) computed in exact integer arithmetic.
      const int expected_n =
          width <= 2 ? width : (step * width + 19) / 20 + 2;
      const std::vector<int> values = RepresentativeValues(l, r, alpha);
      ASSERT_EQ(RepresentativesPerDim(l, r, alpha), expected_n)
          << width << " " << alpha;
      ASSERT_EQ(static_cast<int>(values.size()), std::min(expected_n, width));
      EXPECT_EQ(values.front(), l + 1);
      EXPECT_EQ(values.back(), r);
      for (size_t k = 1; k < values.size(); ++k) {
        EXPECT_LT(values[k - 1], values[k]);
      }
      if (values.size() >= 3) {
        // Even spacing up to rounding.
        int min_gap = width, max_gap = 0;
        for (size_t k = 1; k < values.size(); ++k) {
          min_gap = std::min(min_gap, values[k] - values[k - 1]);
          max_gap = std::max(max_gap, values[k] - values[k - 1]);
        }
        EXPECT_LE(max_gap - min_gap, 1);
      }
    }
  }
}

TEST(RepresentativesTest, CartesianProduct) {
  PrunedRect rect;
  rect.lower = {0, 2};
  rect.upper = {10, 4};
  const std::vector<IntegerPoint> points = SelectRepresentatives(rect, 0.1);
  ASSERT_EQ(points.size(), 6u);
  EXPECT_EQ(points.front(), (IntegerPoint{{1, 3}}));
  EXPECT_EQ(points.back(), (IntegerPoint{{10, 4}}));
}

TEST(DensestCenterTest, EmptyInputIsNotFound) {
  EXPECT_EQ(DensestCenter({}, 2.0).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(DensestCenterTest, RadiusIsInclusive) {
  const std::vector<IntegerPoint> points = {
      IntegerPoint{{0, 0}}, IntegerPoint{{2, 0}}, IntegerPoint{{5, 0}}};
  // With gamma = 2, (0,0) and (2,0) each have one neighbour; the tie on
  // distance sums (7 vs 5) goes to (2,0).
  absl::StatusOr<IntegerPoint> center = DensestCenter(points, 2.0);
  ASSERT_TRUE(center.ok());
  EXPECT_EQ(*center, (IntegerPoint{{2, 0}}));
  // With gamma = 3, (2,0) reaches both others.
  EXPECT_EQ(*DensestCenter(points, 3.0), (IntegerPoint{{2, 0}}));
}

TEST(DensestCenterTest, ThreeRectangleExampleLandsInOverlap) {
  const std::vector<IntRect> rects = {MakeRect({0, 0}, {6, 6}),
                                      MakeRect({3, 2}, {9, 8}),
                                      MakeRect({2, 4}, {8, 10})};
  std::vector<IntegerPoint> pool;
  for (const IntRect& rect : rects) {
    PrunedRect as_pruned;
    as_pruned.lower = rect.lower;
    as_pruned.upper = rect.upper;
    const std::vector<IntegerPoint> reps =
        SelectRepresentatives(as_pruned, 0.1);
    ASSERT_EQ(reps.size(), 9u);
    pool.insert(pool.end(), reps.begin(), reps.end());
  }
  absl::StatusOr<IntegerPoint> center = DensestCenter(pool, 4.0);
  ASSERT_TRUE(center.ok());
  EXPECT_EQ(*center, BruteForceCenter(pool, 4.0));
  for (const IntRect& rect : rects) {
    EXPECT_TRUE(rect.Contains(*center)) << center->coords[0] << ","
                                        << center->coords[1];
  }
}

TEST(DensestCenterTest, MatchesBruteForceRecount) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 4)(rng);
    const int n = std::uniform_int_distribution<int>(1, 200)(rng);
    const int extent = std::uniform_int_distribution<int>(2, 8)(rng);
    std::uniform_int_distribution<int> coord(1, extent);
    std::vector<IntegerPoint> points(n);
    for (IntegerPoint& p : points) {
      for (int i = 0; i < d; ++i) p.coords.push_back(coord(rng));
    }
    const double gamma =
        std::uniform_int_distribution<int>(0, 12)(rng) / 4.0;
    absl::StatusOr<IntegerPoint> center = DensestCenter(points, gamma);
    ASSERT_TRUE(center.ok());
    EXPECT_EQ(*center, BruteForceCenter(points, gamma));
  }
}

TEST(CrossPoolTest, MatchesGenericDensestCenter) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<int> partitions(d);
    IntegerPoint center;
    for (int i = 0; i < d; ++i) {
      partitions[i] = std::uniform_int_distribution<int>(1, 12)(rng);
      center.coords.push_back(
          std::uniform_int_distribution<int>(1, partitions[i])(rng));
    }
    CrossPool pool(center, partitions);
    const int n = std::uniform_int_distribution<int>(1, 150)(rng);
    for (int k = 0; k < n; ++k) {
      if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
        pool.AddCenter();
        continue;
      }
      const int dim = std::uniform_int_distribution<int>(0, d - 1)(rng);
      IntegerPoint p = center;
      p[dim] = std::uniform_int_distribution<int>(1, partitions[dim])(rng);
      ASSERT_TRUE(pool.AddPoint(p).ok());
    }
    ASSERT_EQ(pool.size(), n);
    const std::vector<IntegerPoint> points = pool.Points();
    ASSERT_EQ(static_cast<int>(points.size()), n);
    ASSERT_TRUE(std::is_sorted(points.begin(), points.end()));
    const double gamma = std::uniform_int_distribution<int>(0, 16)(rng) / 4.0;
    absl::StatusOr<IntegerPoint> fast = pool.DensestCenter(gamma);
    ASSERT_TRUE(fast.ok());
    EXPECT_EQ(*fast, BruteForceCenter(points, gamma)) << "trial " << trial;
  }
}

TEST(CrossPoolTest, RejectsPointsOffTheCross) {
  const std::vector<int> partitions = {4, 4};
  CrossPool pool(IntegerPoint{{2, 2}}, partitions);
  EXPECT_FALSE(pool.AddPoint(IntegerPoint{{1, 1}}).ok());
  EXPECT_TRUE(pool.AddPoint(IntegerPoint{{2, 4}}).ok());
  EXPECT_TRUE(pool.AddPoint(IntegerPoint{{2, 2}}).ok());
  EXPECT_EQ(pool.size(), 2);
  EXPECT_EQ(CrossPool(IntegerPoint{{1}}, std::vector<int>{3})
                .DensestCenter(1.0)
                .status()
                .code(),
            absl::StatusCode::kNotFound);
}

TEST(FormulateFeedbackTest, WorkedExampleDecreasesX1) {
  const RandomForest forest = testing::ThreeTreeForest();
  const ForestGeometry geometry = BuildForestGeometry(forest);
  const std::vector<double> x = {0.9, 0.2};
  absl::StatusOr<FeedbackAction> action =
      FormulateFeedback(forest, geometry, x, DAConfig());
  ASSERT_TRUE(action.ok()) << action.status();
  EXPECT_EQ(action->query_point, (IntegerPoint{{3, 1}}));
  EXPECT_EQ(action->target_point, (IntegerPoint{{2, 1}}));
  EXPECT_EQ(action->feature, 0);
  EXPECT_EQ(action->feature_name, "x1");
  EXPECT_EQ(action->direction, Direction::kDecrease);
  EXPECT_EQ(action->target_value, 0.4);
  EXPECT_DOUBLE_EQ(action->f_before, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(action->achieved_f, 2.0 / 3.0);
  EXPECT_EQ(action->target, (std::vector<double>{0.4, 0.2}));
}

TEST(FormulateFeedbackTest, ExpertQueryIsRejected) {
  const RandomForest forest = testing::ThreeTreeForest();
  absl::StatusOr<FeedbackAction> action = FormulateFeedback(
      forest, BuildForestGeometry(forest), std::vector<double>{0.4, 0.2},
      DAConfig());
  EXPECT_EQ(action.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(FormulateFeedbackTest, NoSurvivingRectangleIsNotFound) {
  // The only expert leaf is {x1 > 0.5, x2 > 0.5}; (0.2, 0.2) needs two
  // changes to reach it.
  testing::TreeBuilder b;
  const int root = b.Split(0, 0.5);
  const int l = b.Leaf(kNovice);
  const int r = b.Split(1, 0.5);
  const int rl = b.Leaf(kNovice);
  const int rr = b.Leaf(kExpert);
  b.Children(r, rl, rr);
  b.Children(root, l, r);
  RandomForest forest;
  forest.schema = testing::UnitSchema(2);
  forest.trees.push_back(b.Build());
  absl::StatusOr<FeedbackAction> action = FormulateFeedback(
      forest, BuildForestGeometry(forest), std::vector<double>{0.2, 0.2},
      DAConfig());
  EXPECT_EQ(action.status().code(), absl::StatusCode::kNotFound);
}

TEST(FormulateFeedbackTest, InvalidInputs) {
  const RandomForest forest = testing::ThreeTreeForest();
  const ForestGeometry geometry = BuildForestGeometry(forest);
  EXPECT_EQ(FormulateFeedback(forest, geometry, std::vector<double>{0.9},
                              DAConfig())
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(FormulateFeedback(forest, geometry, std::vector<double>{0.9, 2.0},
                              DAConfig())
                .status()
                .code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(FormulateFeedback(forest, geometry,
                                 std::vector<double>{0.9, 0.2},
                                 {.alpha = 0.0, .gamma = 2.0})
                   .ok());
}

TEST(FormulateFeedbackTest, ActionsChangeAtMostOneFeature) {
  std::mt19937_64 rng(45);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const RandomForest forest = testing::RandomSmallForest(rng, 4, 9, 3);
    const ForestGeometry geometry = BuildForestGeometry(forest);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> x = testing::RandomQuery(rng, 4);
      absl::StatusOr<FeedbackAction> action =
          FormulateFeedback(forest, geometry, x, DAConfig());
      if (!action.ok()) continue;
      ++checked;
      int changed = 0;
      for (int i = 0; i < 4; ++i) changed += action->target[i] != x[i];
      EXPECT_LE(changed, 1);
      EXPECT_EQ(changed == 1, action->changed());
      EXPECT_EQ(action->achieved_f,
                static_cast<double>(testing::OracleVotes(forest,
                                                         action->target)) /
                    forest.num_trees());
      EXPECT_LE(action->achieved_f * forest.num_trees(),
                testing::OracleBestSingleChange(forest, x));
    }
  }
  EXPECT_GT(checked, 500);
}

}  // namespace
}  // namespace rfrecourse
