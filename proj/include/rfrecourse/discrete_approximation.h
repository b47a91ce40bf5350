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

// Discrete approximation (DA) of the best single-feature change.
//
// Given a query x classified novice, the engine looks for the point x_f with
// ||x - x_f||_0 <= 1 that lies under the most expert rectangles:
//
//   1. x is discretized to the lattice point q.
//   2. Expert rectangles that q violates in two or more dimensions cannot be
//      reached by changing one feature and are dropped. In the survivors
//      every satisfied dimension is fixed to q_i, leaving at most one free
//      dimension.
//   3. Each pruned rectangle is represented by a few lattice points: n_i
//      values per dimension, n_i = r_i - l_i when r_i - l_i <= 2 and
//      ceil(alpha * (r_i - l_i)) + 2 otherwise, always including both ends
//      l_i + 1 and r_i.
//   4. Over the pooled representatives (kept with multiplicity), the point
//      with the most neighbours within Euclidean radius gamma on the lattice
//      is selected, and its changed coordinate is mapped back to the midpoint
//      of its partition.
//
// After pruning, every representative differs from q in at most one
// coordinate, so the pool lies on the axis cross through q. CrossPool exploits
// that shape to count neighbours with per-axis prefix sums; DensestCenter is
// the general distance-matrix version used as its reference.

#ifndef RFRECOURSE_DISCRETE_APPROXIMATION_H_
#define RFRECOURSE_DISCRETE_APPROXIMATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "rfrecourse/feedback.h"
#include "rfrecourse/forest.h"
#include "rfrecourse/geometry.h"

namespace rfrecourse {

struct DAConfig {
  // Proportion of representative values per dimension, in (0, 1].
  double alpha = 0.5;
  // Density radius in partition-index units, >= 0.
  double gamma = 2.0;
};

absl::Status ValidateDAConfig(const DAConfig& config);

struct PrunedRect {
  // Index of the source rectangle in the input list.
  int source = 0;
  // The single dimension in which q lies outside the source rectangle.
  // Absent when q is inside it.
  std::optional<int> free_dim;
  // Same convention as IntRect: {lower[i] < p_i <= upper[i]}.
  std::vector<int> lower;
  std::vector<int> upper;

  IntRect AsRect() const;
};

// Number of dimensions where `q` falls outside `rect`, capped at 2, and the
// first such dimension.
struct Violation {
  int count = 0;
  int dim = -1;
};
Violation FindViolations(const IntRect& rect, const IntegerPoint& q);

std::vector<PrunedRect> PruneRects(std::span<const IntRect> rects,
                                   const IntegerPoint& q);

// n_i for the range (l, r], r > l.
int RepresentativesPerDim(int l, int r, double alpha);

// The representative values of (l, r] in increasing order: all values when
// the range holds at most n_i of them, otherwise both ends plus n_i - 2
// interior values at l + 1 + k * (r - l - 1) / (n_i - 1), rounded half up.
std::vector<int> RepresentativeValues(int l, int r, double alpha);

// Cartesian product of the per-dimension representative values.
std::vector<IntegerPoint> SelectRepresentatives(const PrunedRect& rect,
                                                double alpha);

// True when a squared lattice distance lies within radius gamma.
inline bool WithinRadius(int64_t squared_distance, double gamma) {
  return static_cast<double>(squared_distance) <= gamma * gamma;
}

// Returns the member of `points` with the most other occurrences within
// distance gamma. Ties go to the smallest sum of distances to all
// occurrences, then to the lexicographically smallest point. Fails with
// NotFound on empty input.
absl::StatusOr<IntegerPoint> DensestCenter(std::span<const IntegerPoint> points,
                                           double gamma);

// Multiset of lattice points that each differ from `center` in at most one
// coordinate.
class CrossPool {
 public:
  CrossPool(IntegerPoint center, std::span<const int> partitions_per_dim);

  void AddCenter(int64_t count = 1) {
    center_count_ += count;
    size_ += count;
  }
  // Adds the point equal to the center except p[dim] = value.
  void Add(int dim, int value, int64_t count = 1);
  // Fails with InvalidArgument when `p` differs from the center in more than
  // one coordinate.
  absl::Status AddPoint(const IntegerPoint& p);

  int64_t size() const { return size_; }
  const IntegerPoint& center() const { return center_; }

  // Same result as rfrecourse::DensestCenter over Points().
  absl::StatusOr<IntegerPoint> DensestCenter(double gamma) const;

  // All occurrences, sorted.
  std::vector<IntegerPoint> Points() const;

 private:
  IntegerPoint center_;
  int64_t center_count_ = 0;
  int64_t size_ = 0;
  // counts_[dim][value] for value in 1..m_dim; the center value stays 0.
  std::vector<std::vector<int64_t>> counts_;
};

// Runs the DA pipeline for query `x`. `rects` are the expert rectangles of
// `forest` over `table`. Fails with FailedPrecondition when F(x) > 0.5 and
// with NotFound when no rectangle survives pruning.
absl::StatusOr<FeedbackAction> FormulateFeedback(
    const RandomForest& forest, const PartitionTable& table,
    std::span<const IntRect> rects, std::span<const double> x,
    const DAConfig& config);

inline absl::StatusOr<FeedbackAction> FormulateFeedback(
    const RandomForest& forest, const ForestGeometry& geometry,
    std::span<const double> x, const DAConfig& config) {
  return FormulateFeedback(forest, geometry.table, geometry.expert_rects, x,
                           config);
}

}  // namespace rfrecourse

#endif  // RFRECOURSE_DISCRETE_APPROXIMATION_H_
