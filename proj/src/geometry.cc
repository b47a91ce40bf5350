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
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"

namespace rfrecourse {

int HammingDistance(const IntegerPoint& a, const IntegerPoint& b) {
  int differing = 0;
  for (int i = 0; i < a.size(); ++i) differing += a[i] != b[i];
  return differing;
}

double EuclideanDistance(const IntegerPoint& a, const IntegerPoint& b) {
  int64_t sum = 0;
  for (int i = 0; i < a.size(); ++i) {
    const int64_t delta = a[i] - b[i];
    sum += delta * delta;
  }
  return std::sqrt(static_cast<double>(sum));
}

PartitionTable::PartitionTable(Schema schema,
                               std::vector<std::vector<double>> thresholds)
    : schema_(std::move(schema)), thresholds_(std::move(thresholds)) {}

int64_t PartitionTable::total_partitions() const {
  int64_t total = 0;
  for (int i = 0; i < num_features(); ++i) total += num_partitions(i);
  return total;
}

double PartitionTable::lower_edge(int feature, int partition) const {
  return partition == 1 ? schema_[feature].lower
                        : thresholds_[feature][partition - 2];
}

double PartitionTable::upper_edge(int feature, int partition) const {
  return partition == num_partitions(feature)
             ? schema_[feature].upper
             : thresholds_[feature][partition - 1];
}

int PartitionTable::PartitionBound(int feature, double t) const {
  const std::vector<double>& cuts = thresholds_[feature];
  const int below =
      static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), t) -
                       cuts.begin());
  return below + (t >= schema_[feature].upper ? 1 : 0);
}

PartitionTable BuildPartitionTable(const RandomForest& forest) {
  const int d = forest.num_features();
  std::vector<std::vector<double>> thresholds(d);
  for (const Tree& tree : forest.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const FeatureSpec& spec = forest.schema[node.feature];
      if (node.threshold >= spec.lower && node.threshold < spec.upper) {
        thresholds[node.feature].push_back(node.threshold);
      }
    }
  }
  for (std::vector<double>& cuts : thresholds) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  return PartitionTable(forest.schema, std::move(thresholds));
}

IntegerPoint DiscretizePointUnchecked(std::span<const double> x,
                                      const PartitionTable& table) {
  IntegerPoint p;
  p.coords.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const std::span<const double> cuts = table.thresholds(i);
    // Thresholds strictly below x_i close the partitions before x_i's.
    p.coords[i] =
        1 + static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), x[i]) -
                             cuts.begin());
  }
  return p;
}

absl::StatusOr<IntegerPoint> DiscretizePoint(std::span<const double> x,
                                             const PartitionTable& table) {
  if (absl::Status s = CheckQuery(table.schema(), x); !s.ok()) return s;
  return DiscretizePointUnchecked(x, table);
}

double UndiscretizeValueUnchecked(int feature, int partition,
                                  const PartitionTable& table) {
  return 0.5 * (table.lower_edge(feature, partition) +
                table.upper_edge(feature, partition));
}

absl::StatusOr<double> UndiscretizeValue(int feature, int partition,
                                         const PartitionTable& table) {
  if (feature < 0 || feature >= table.num_features()) {
    return absl::OutOfRangeError(
        absl::StrCat("feature index ", feature, " out of range"));
  }
  if (partition < 1 || partition > table.num_partitions(feature)) {
    return absl::OutOfRangeError(absl::StrCat(
        "partition ", partition, " of feature ", feature, " outside [1, ",
        table.num_partitions(feature), "]"));
  }
  return UndiscretizeValueUnchecked(feature, partition, table);
}

std::vector<double> UndiscretizePoint(const IntegerPoint& p,
                                      const PartitionTable& table) {
  std::vector<double> x(p.size());
  for (int i = 0; i < p.size(); ++i) {
    x[i] = UndiscretizeValueUnchecked(i, p[i], table);
  }
  return x;
}

bool IntRect::Contains(const IntegerPoint& p) const {
  for (int i = 0; i < size(); ++i) {
    if (p[i] <= lower[i] || p[i] > upper[i]) return false;
  }
  return true;
}

int64_t IntRect::Volume() const {
  int64_t volume = 1;
  for (int i = 0; i < size(); ++i) {
    const int64_t width = upper[i] - lower[i];
    if (width <= 0) return 0;
    if (volume > std::numeric_limits<int64_t>::max() / width) {
      return std::numeric_limits<int64_t>::max();
    }
    volume *= width;
  }
  return volume;
}

namespace {

void CollectLeafRects(const RandomForest& forest, const PartitionTable& table,
                      int tree_index, int node_index, IntRect& bounds,
                      bool expert_only, std::vector<IntRect>& out) {
  const TreeNode& node = forest.trees[tree_index].nodes[node_index];
  if (node.is_leaf()) {
    if (expert_only && node.label != kExpert) return;
    for (int i = 0; i < bounds.size(); ++i) {
      // Contradictory path: the leaf is unreachable.
      if (bounds.lower[i] >= bounds.upper[i]) return;
    }
    out.push_back(bounds);
    out.back().label = node.label;
    out.back().tree_index = tree_index;
    return;
  }
  const int f = node.feature;
  const int cut = table.PartitionBound(f, node.threshold);

  const int saved_upper = bounds.upper[f];
  bounds.upper[f] = std::min(saved_upper, cut);
  CollectLeafRects(forest, table, tree_index, node.left, bounds, expert_only,
                   out);
  bounds.upper[f] = saved_upper;

  const int saved_lower = bounds.lower[f];
  bounds.lower[f] = std::max(saved_lower, cut);
  CollectLeafRects(forest, table, tree_index, node.right, bounds, expert_only,
                   out);
  bounds.lower[f] = saved_lower;
}

std::vector<IntRect> CollectRects(const RandomForest& forest,
                                  const PartitionTable& table,
                                  bool expert_only) {
  const int d = forest.num_features();
  std::vector<IntRect> out;
  for (int t = 0; t < forest.num_trees(); ++t) {
    IntRect bounds;
    bounds.lower.assign(d, 0);
    bounds.upper.resize(d);
    for (int i = 0; i < d; ++i) bounds.upper[i] = table.num_partitions(i);
    CollectLeafRects(forest, table, t, 0, bounds, expert_only, out);
  }
  return out;
}

}  // namespace

std::vector<IntRect> ExtractRects(const RandomForest& forest,
                                  const PartitionTable& table) {
  return CollectRects(forest, table, /*expert_only=*/false);
}

std::vector<IntRect> ExtractExpertRects(const RandomForest& forest,
                                        const PartitionTable& table) {
  return CollectRects(forest, table, /*expert_only=*/true);
}

absl::StatusOr<std::vector<IntegerPoint>> EnumeratePoints(const IntRect& rect,
                                                          int64_t cap) {
  const int64_t volume = rect.Volume();
  if (volume > cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "rectangle holds ", volume, " lattice points, cap is ", cap));
  }
  std::vector<IntegerPoint> points;
  if (volume == 0) return points;
  points.reserve(volume);
  IntegerPoint p;
  p.coords.resize(rect.size());
  for (int i = 0; i < rect.size(); ++i) p[i] = rect.lower[i] + 1;
  while (true) {
    points.push_back(p);
    // Odometer increment, last dimension fastest.
    int i = rect.size() - 1;
    while (i >= 0 && p[i] == rect.upper[i]) {
      p[i] = rect.lower[i] + 1;
      --i;
    }
    if (i < 0) break;
    ++p[i];
  }
  return points;
}

ForestGeometry BuildForestGeometry(const RandomForest& forest) {
  ForestGeometry geometry;
  geometry.table = BuildPartitionTable(forest);
  geometry.expert_rects = ExtractExpertRects(forest, geometry.table);
  return geometry;
}

}  // namespace rfrecourse
