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
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "absl/strings/str_cat.h"

namespace rfrecourse {

absl::Status ValidateDAConfig(const DAConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be in (0, 1], got ", config.alpha));
  }
  if (!(config.gamma >= 0.0) || !std::isfinite(config.gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be >= 0, got ", config.gamma));
  }
  return absl::OkStatus();
}

IntRect PrunedRect::AsRect() const {
  IntRect rect;
  rect.lower = lower;
  rect.upper = upper;
  return rect;
}

Violation FindViolations(const IntRect& rect, const IntegerPoint& q) {
  Violation violation;
  for (int i = 0; i < rect.size(); ++i) {
    if (q[i] > rect.lower[i] && q[i] <= rect.upper[i]) continue;
    if (++violation.count == 2) return violation;
    violation.dim = i;
  }
  return violation;
}

std::vector<PrunedRect> PruneRects(std::span<const IntRect> rects,
                                   const IntegerPoint& q) {
  std::vector<PrunedRect> pruned;
  for (size_t k = 0; k < rects.size(); ++k) {
    const IntRect& rect = rects[k];
    const Violation violation = FindViolations(rect, q);
    if (violation.count >= 2) continue;

    PrunedRect out;
    out.source = static_cast<int>(k);
    out.lower.resize(q.size());
    out.upper.resize(q.size());
    for (int i = 0; i < q.size(); ++i) {
      out.lower[i] = q[i] - 1;
      out.upper[i] = q[i];
    }
    if (violation.count == 1) {
      out.free_dim = violation.dim;
      out.lower[violation.dim] = rect.lower[violation.dim];
      out.upper[violation.dim] = rect.upper[violation.dim];
    }
    pruned.push_back(std::move(out));
  }
  return pruned;
}

int RepresentativesPerDim(int l, int r, double alpha) {
  const int width = r - l;
  if (width <= 2) return width;
  // The slack keeps products such as 0.1 * 30 from rounding up past 3.
  return static_cast<int>(std::ceil(alpha * width - 1e-9)) + 2;
}

namespace {

template <typename Fn>
void ForEachRepresentativeValue(int l, int r, double alpha, Fn&& fn) {
  const int width = r - l;
  const int n = RepresentativesPerDim(l, r, alpha);
  if (n >= width) {
    for (int v = l + 1; v <= r; ++v) fn(v);
    return;
  }
  // n < width keeps the spacing (width - 1) / (n - 1) above 1, so the rounded
  // positions are strictly increasing.
  // Offsets (2 k span + segments) / (2 segments), stepped without division.
  const int64_t span = width - 1;
  const int64_t segments = n - 1;
  const int64_t denominator = 2 * segments;
  const int64_t whole_step = (2 * span) / denominator;
  const int64_t fraction_step = (2 * span) % denominator;
  int64_t offset = 0;
  int64_t remainder = segments;
  for (int k = 0; k < n; ++k) {
    fn(l + 1 + static_cast<int>(offset));
    offset += whole_step;
    remainder += fraction_step;
    if (remainder >= denominator) {
      remainder -= denominator;
      ++offset;
    }
  }
}

}  // namespace

std::vector<int> RepresentativeValues(int l, int r, double alpha) {
  std::vector<int> values;
  ForEachRepresentativeValue(l, r, alpha, [&](int v) { values.push_back(v); });
  return values;
}

std::vector<IntegerPoint> SelectRepresentatives(const PrunedRect& rect,
                                                double alpha) {
  const int d = static_cast<int>(rect.lower.size());
  std::vector<std::vector<int>> values(d);
  for (int i = 0; i < d; ++i) {
    values[i] = RepresentativeValues(rect.lower[i], rect.upper[i], alpha);
  }
  std::vector<IntegerPoint> points = {IntegerPoint{std::vector<int>(d)}};
  for (int i = 0; i < d; ++i) {
    std::vector<IntegerPoint> next;
    next.reserve(points.size() * values[i].size());
    for (const IntegerPoint& prefix : points) {
      for (int v : values[i]) {
        next.push_back(prefix);
        next.back()[i] = v;
      }
    }
    points = std::move(next);
  }
  return points;
}

namespace {

// Tie-break on the sum of distances, then lexicographic order. Sums within a
// relative 1e-9 are treated as equal so that different summation orders agree.
bool PreferOnTie(double sum_a, const IntegerPoint& a, double sum_b,
                 const IntegerPoint& b) {
  const double tolerance = 1e-9 * std::max({1.0, sum_a, sum_b});
  if (sum_a < sum_b - tolerance) return true;
  if (sum_b < sum_a - tolerance) return false;
  return a < b;
}

int64_t SquaredDistance(const IntegerPoint& a, const IntegerPoint& b) {
  int64_t sum = 0;
  for (int i = 0; i < a.size(); ++i) {
    const int64_t delta = a[i] - b[i];
    sum += delta * delta;
  }
  return sum;
}

}  // namespace

absl::StatusOr<IntegerPoint> DensestCenter(std::span<const IntegerPoint> points,
                                           double gamma) {
  if (points.empty()) {
    return absl::NotFoundError("no solution: empty candidate set");
  }
  std::vector<IntegerPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<IntegerPoint, int64_t>> distinct;
  for (IntegerPoint& p : sorted) {
    if (!distinct.empty() && distinct.back().first == p) {
      ++distinct.back().second;
    } else {
      distinct.emplace_back(std::move(p), 1);
    }
  }

  const size_t n = distinct.size();
  std::vector<int64_t> neighbours(n, 0);
  for (size_t a = 0; a < n; ++a) {
    neighbours[a] += distinct[a].second - 1;
    for (size_t b = a + 1; b < n; ++b) {
      if (WithinRadius(SquaredDistance(distinct[a].first, distinct[b].first),
                       gamma)) {
        neighbours[a] += distinct[b].second;
        neighbours[b] += distinct[a].second;
      }
    }
  }
  const int64_t best = *std::max_element(neighbours.begin(), neighbours.end());

  int chosen = -1;
  double chosen_sum = 0.0;
  for (size_t a = 0; a < n; ++a) {
    if (neighbours[a] != best) continue;
    double sum = 0.0;
    for (size_t b = 0; b < n; ++b) {
      sum += distinct[b].second *
             std::sqrt(static_cast<double>(
                 SquaredDistance(distinct[a].first, distinct[b].first)));
    }
    if (chosen < 0 ||
        PreferOnTie(sum, distinct[a].first, chosen_sum,
                    distinct[chosen].first)) {
      chosen = static_cast<int>(a);
      chosen_sum = sum;
    }
  }
  return distinct[chosen].first;
}

CrossPool::CrossPool(IntegerPoint center,
                     std::span<const int> partitions_per_dim)
    : center_(std::move(center)), counts_(partitions_per_dim.size()) {
  for (size_t i = 0; i < partitions_per_dim.size(); ++i) {
    counts_[i].assign(partitions_per_dim[i] + 1, 0);
  }
}

void CrossPool::Add(int dim, int value, int64_t count) {
  size_ += count;
  if (value == center_[dim]) {
    center_count_ += count;
  } else {
    counts_[dim][value] += count;
  }
}

absl::Status CrossPool::AddPoint(const IntegerPoint& p) {
  if (p.size() != center_.size()) {
    return absl::InvalidArgumentError("point dimension mismatch");
  }
  int dim = -1;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == center_[i]) continue;
    if (dim >= 0) {
      return absl::InvalidArgumentError(
          "point differs from the center in more than one coordinate");
    }
    dim = i;
  }
  if (dim < 0) {
    AddCenter();
  } else {
    if (p[dim] < 1 || p[dim] >= static_cast<int>(counts_[dim].size())) {
      return absl::OutOfRangeError("point outside the partition range");
    }
    Add(dim, p[dim]);
  }
  return absl::OkStatus();
}

std::vector<IntegerPoint> CrossPool::Points() const {
  std::vector<IntegerPoint> points(center_count_, center_);
  for (int dim = 0; dim < static_cast<int>(counts_.size()); ++dim) {
    for (int v = 1; v < static_cast<int>(counts_[dim].size()); ++v) {
      for (int64_t c = 0; c < counts_[dim][v]; ++c) {
        points.push_back(center_);
        points.back()[dim] = v;
      }
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

absl::StatusOr<IntegerPoint> CrossPool::DensestCenter(double gamma) const {
  if (size_ == 0) {
    return absl::NotFoundError("no solution: empty candidate set");
  }
  const int d = center_.size();

  // Largest integer offset within the radius. No two points on the cross are
  // further apart than max_offset along one axis.
  int max_offset = 0;
  for (const std::vector<int64_t>& counts : counts_) {
    max_offset = std::max(max_offset, static_cast<int>(counts.size()));
  }
  int reach = 0;
  while (reach < max_offset &&
         WithinRadius(static_cast<int64_t>(reach + 1) * (reach + 1), gamma)) {
    ++reach;
  }

  std::vector<std::vector<int64_t>> prefix(d);
  for (int dim = 0; dim < d; ++dim) {
    const std::vector<int64_t>& counts = counts_[dim];
    prefix[dim].assign(counts.size(), 0);
    for (size_t v = 1; v < counts.size(); ++v) {
      prefix[dim][v] = prefix[dim][v - 1] + counts[v];
    }
  }
  auto window = [&](int dim, int64_t lo, int64_t hi) -> int64_t {
    const int64_t top = static_cast<int64_t>(prefix[dim].size()) - 1;
    lo = std::max<int64_t>(lo, 1);
    hi = std::min(hi, top);
    if (lo > hi) return 0;
    return prefix[dim][hi] - prefix[dim][lo - 1];
  };

  // near[dim][b]: occurrences on axis `dim` at offsets 1..b from the center.
  std::vector<std::vector<int64_t>> near(d, std::vector<int64_t>(reach + 1));
  std::vector<int64_t> near_all(reach + 1, 0);
  for (int dim = 0; dim < d; ++dim) {
    for (int b = 0; b <= reach; ++b) {
      near[dim][b] = window(dim, center_[dim] - b, center_[dim] + b);
      near_all[b] += near[dim][b];
    }
  }
  // cross_reach[a]: largest b with a^2 + b^2 within the radius.
  std::vector<int> cross_reach(reach + 1, 0);
  for (int a = 0; a <= reach; ++a) {
    int b = 0;
    while (b < reach && WithinRadius(static_cast<int64_t>(a) * a +
                                         static_cast<int64_t>(b + 1) * (b + 1),
                                     gamma)) {
      ++b;
    }
    cross_reach[a] = b;
  }

  struct Candidate {
    int dim;  // -1 for the center
    int value;
  };
  std::vector<Candidate> tied;
  int64_t best = -1;
  auto consider = [&](Candidate candidate, int64_t neighbours) {
    if (neighbours > best) {
      best = neighbours;
      tied.clear();
    }
    if (neighbours == best) tied.push_back(candidate);
  };

  if (center_count_ > 0) {
    consider({-1, 0}, center_count_ - 1 + near_all[reach]);
  }
  for (int dim = 0; dim < d; ++dim) {
    for (int v = 1; v < static_cast<int>(counts_[dim].size()); ++v) {
      if (counts_[dim][v] == 0) continue;
      const int offset = std::abs(v - center_[dim]);
      int64_t neighbours = window(dim, int64_t{v} - reach, int64_t{v} + reach);
      if (offset <= reach) {
        neighbours += center_count_;
        const int b = cross_reach[offset];
        neighbours += near_all[b] - near[dim][b];
      }
      consider({dim, v}, neighbours - 1);
    }
  }

  auto to_point = [&](const Candidate& c) {
    IntegerPoint p = center_;
    if (c.dim >= 0) p[c.dim] = c.value;
    return p;
  };
  if (tied.size() == 1) return to_point(tied.front());

  auto distance_sum = [&](const Candidate& c) {
    const int own_offset = c.dim >= 0 ? std::abs(c.value - center_[c.dim]) : 0;
    double sum = static_cast<double>(center_count_) * own_offset;
    for (int dim = 0; dim < d; ++dim) {
      const std::vector<int64_t>& counts = counts_[dim];
      for (int v = 1; v < static_cast<int>(counts.size()); ++v) {
        if (counts[v] == 0) continue;
        double distance;
        if (dim == c.dim) {
          distance = std::abs(v - c.value);
        } else {
          const int64_t b = v - center_[dim];
          distance = std::sqrt(static_cast<double>(
              static_cast<int64_t>(own_offset) * own_offset + b * b));
        }
        sum += counts[v] * distance;
      }
    }
    return sum;
  };

  IntegerPoint chosen = to_point(tied.front());
  double chosen_sum = distance_sum(tied.front());
  for (size_t k = 1; k < tied.size(); ++k) {
    IntegerPoint p = to_point(tied[k]);
    const double sum = distance_sum(tied[k]);
    if (PreferOnTie(sum, p, chosen_sum, chosen)) {
      chosen = std::move(p);
      chosen_sum = sum;
    }
  }
  return chosen;
}

absl::StatusOr<FeedbackAction> FormulateFeedback(
    const RandomForest& forest, const PartitionTable& table,
    std::span<const IntRect> rects, std::span<const double> x,
    const DAConfig& config) {
  if (absl::Status s = ValidateDAConfig(config); !s.ok()) return s;
  if (absl::Status s = CheckQuery(forest.schema, x); !s.ok()) return s;
  const auto start = std::chrono::steady_clock::now();

  if (2 * forest.ExpertVotes(x) > forest.num_trees()) {
    return absl::FailedPreconditionError(
        "query is already classified expert");
  }
  const IntegerPoint q = DiscretizePointUnchecked(x, table);

  std::vector<int> partitions(table.num_features());
  for (int i = 0; i < table.num_features(); ++i) {
    partitions[i] = table.num_partitions(i);
  }
  CrossPool pool(q, partitions);
  for (const IntRect& rect : rects) {
    const Violation violation = FindViolations(rect, q);
    if (violation.count == 0) {
      pool.AddCenter();
    } else if (violation.count == 1) {
      const int dim = violation.dim;
      ForEachRepresentativeValue(rect.lower[dim], rect.upper[dim],
                                 config.alpha,
                                 [&](int v) { pool.Add(dim, v); });
    }
  }
  if (pool.size() == 0) {
    return absl::NotFoundError("no solution: no expert rectangle survives");
  }

  absl::StatusOr<IntegerPoint> center = pool.DensestCenter(config.gamma);
  if (!center.ok()) return center.status();
  int feature = -1;
  for (int i = 0; i < q.size(); ++i) {
    if ((*center)[i] != q[i]) feature = i;
  }
  FeedbackAction action = MakeAction(forest, table, x, q, feature,
                                     feature >= 0 ? (*center)[feature] : 0);
  action.elapsed = std::chrono::steady_clock::now() - start;
  return action;
}

}  // namespace rfrecourse
