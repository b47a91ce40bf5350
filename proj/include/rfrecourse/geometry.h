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

// Integer discretization of a forest's feature space.
//
// The split thresholds of feature i, taken over the whole forest, cut its
// domain into m_i partitions indexed 1..m_i:
//
//   [lower, t_1], (t_1, t_2], ..., (t_{m_i - 1}, upper]
//
// A real vector maps to an IntegerPoint of partition indices, and every leaf
// maps to an IntRect {l_i < p_i <= r_i}. The forest prediction is constant on
// each partition cell, and the number of expert rectangles containing a point
// equals the number of expert votes there.

#ifndef RFRECOURSE_GEOMETRY_H_
#define RFRECOURSE_GEOMETRY_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "rfrecourse/forest.h"

namespace rfrecourse {

struct IntegerPoint {
  // 1-based partition index per feature.
  std::vector<int> coords;

  int size() const { return static_cast<int>(coords.size()); }
  int operator[](int i) const { return coords[i]; }
  int& operator[](int i) { return coords[i]; }

  auto operator<=>(const IntegerPoint&) const = default;
  bool operator==(const IntegerPoint&) const = default;
};

// Number of coordinates in which `a` and `b` differ.
int HammingDistance(const IntegerPoint& a, const IntegerPoint& b);
double EuclideanDistance(const IntegerPoint& a, const IntegerPoint& b);

class PartitionTable {
 public:
  PartitionTable() = default;
  // `thresholds[i]` must be strictly increasing and inside
  // [schema[i].lower, schema[i].upper).
  PartitionTable(Schema schema, std::vector<std::vector<double>> thresholds);

  int num_features() const { return static_cast<int>(schema_.size()); }
  const Schema& schema() const { return schema_; }
  std::span<const double> thresholds(int feature) const {
    return thresholds_[feature];
  }
  int num_partitions(int feature) const {
    return static_cast<int>(thresholds_[feature].size()) + 1;
  }
  // Sum of m_i over all features.
  int64_t total_partitions() const;

  // Real interval of a partition. The first partition is closed at the
  // domain lower bound, the others are (lower_edge, upper_edge].
  double lower_edge(int feature, int partition) const;
  double upper_edge(int feature, int partition) const;

  // Number of partitions lying entirely at or below `t`, i.e. the partition
  // bound implied by the split condition x <= t.
  int PartitionBound(int feature, double t) const;

  bool operator==(const PartitionTable&) const = default;

 private:
  Schema schema_;
  std::vector<std::vector<double>> thresholds_;
};

// Collects the distinct split thresholds of every feature. Thresholds outside
// [lower, upper) do not cut the domain and are left out.
PartitionTable BuildPartitionTable(const RandomForest& forest);

// Maps a real vector to the partition indices containing it. A value equal to
// a threshold belongs to the partition below it.
absl::StatusOr<IntegerPoint> DiscretizePoint(std::span<const double> x,
                                             const PartitionTable& table);

// Same without domain checks.
IntegerPoint DiscretizePointUnchecked(std::span<const double> x,
                                      const PartitionTable& table);

// Midpoint of the partition's real interval.
absl::StatusOr<double> UndiscretizeValue(int feature, int partition,
                                         const PartitionTable& table);
double UndiscretizeValueUnchecked(int feature, int partition,
                                  const PartitionTable& table);

// Midpoint of every partition coordinate of `p`.
std::vector<double> UndiscretizePoint(const IntegerPoint& p,
                                      const PartitionTable& table);

// Axis-aligned box {lower[i] < p_i <= upper[i]} on the partition lattice.
struct IntRect {
  std::vector<int> lower;
  std::vector<int> upper;
  int label = kExpert;
  int tree_index = 0;

  int size() const { return static_cast<int>(lower.size()); }
  bool Contains(const IntegerPoint& p) const;
  // Number of lattice points, saturated at INT64_MAX.
  int64_t Volume() const;

  bool operator==(const IntRect&) const = default;
};

// One rectangle per reachable leaf of every tree, in tree order.
std::vector<IntRect> ExtractRects(const RandomForest& forest,
                                  const PartitionTable& table);

// Rectangles of the expert leaves only.
std::vector<IntRect> ExtractExpertRects(const RandomForest& forest,
                                        const PartitionTable& table);

// All lattice points of `rect` in lexicographic order. Fails with
// ResourceExhausted when the volume exceeds `cap`.
absl::StatusOr<std::vector<IntegerPoint>> EnumeratePoints(const IntRect& rect,
                                                          int64_t cap);

// Partition table and expert rectangles of one forest, computed once after
// training and shared by every query.
struct ForestGeometry {
  PartitionTable table;
  std::vector<IntRect> expert_rects;
};

ForestGeometry BuildForestGeometry(const RandomForest& forest);

}  // namespace rfrecourse

#endif  // RFRECOURSE_GEOMETRY_H_
