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

#include "rfrecourse/forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "rfrecourse/seeding.h"

namespace rfrecourse {

absl::Status ValidateSchema(const Schema& schema) {
  if (schema.empty()) {
    return absl::InvalidArgumentError("schema error: no features");
  }
  std::set<std::string> names;
  for (const FeatureSpec& spec : schema) {
    if (!(spec.lower < spec.upper)) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema error: feature '", spec.name,
                       "' needs lower < upper, got [", spec.lower, ", ",
                       spec.upper, "]"));
    }
    if (!names.insert(spec.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema error: duplicate feature name '", spec.name,
                       "'"));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckQuery(const Schema& schema, std::span<const double> x) {
  if (x.size() != schema.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema error: expected ", schema.size(),
                     " features, got ", x.size()));
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= schema[i].lower && x[i] <= schema[i].upper)) {
      return absl::OutOfRangeError(
          absl::StrCat("domain error: feature '", schema[i].name, "' value ",
                       x[i], " outside [", schema[i].lower, ", ",
                       schema[i].upper, "]"));
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateDataset(const Dataset& dataset) {
  if (absl::Status s = ValidateSchema(dataset.schema); !s.ok()) return s;
  if (dataset.instances.empty()) {
    return absl::InvalidArgumentError("dataset has no instances");
  }
  for (size_t row = 0; row < dataset.instances.size(); ++row) {
    const Instance& instance = dataset.instances[row];
    if (absl::Status s = CheckQuery(dataset.schema, instance.features);
        !s.ok()) {
      return absl::Status(s.code(),
                          absl::StrCat("instance ", row, ": ", s.message()));
    }
    if (instance.label != kNovice && instance.label != kExpert) {
      return absl::InvalidArgumentError(
          absl::StrCat("instance ", row, ": label must be 0 or 1"));
    }
  }
  return absl::OkStatus();
}

int Tree::FindLeaf(std::span<const double> x) const {
  int index = 0;
  while (!nodes[index].is_leaf()) {
    const TreeNode& node = nodes[index];
    index = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return index;
}

int Tree::Depth() const {
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    const auto [index, level] = stack.back();
    stack.pop_back();
    const TreeNode& node = nodes[index];
    if (node.is_leaf()) {
      depth = std::max(depth, level);
    } else {
      stack.emplace_back(node.left, level + 1);
      stack.emplace_back(node.right, level + 1);
    }
  }
  return depth;
}

int Tree::NumLeaves() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const TreeNode& node) { return node.is_leaf(); }));
}

int RandomForest::ExpertVotes(std::span<const double> x) const {
  int votes = 0;
  for (const Tree& tree : trees) {
    votes += tree.nodes[tree.FindLeaf(x)].label == kExpert;
  }
  return votes;
}

absl::Status ValidateForest(const RandomForest& forest) {
  if (absl::Status s = ValidateSchema(forest.schema); !s.ok()) return s;
  if (forest.trees.empty()) {
    return absl::InvalidArgumentError("forest has no trees");
  }
  const int d = forest.num_features();
  for (size_t t = 0; t < forest.trees.size(); ++t) {
    const std::vector<TreeNode>& nodes = forest.trees[t].nodes;
    if (nodes.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("tree ", t, " is empty"));
    }
    const int n = static_cast<int>(nodes.size());
    for (int i = 0; i < n; ++i) {
      const TreeNode& node = nodes[i];
      if (node.is_leaf()) {
        if (node.label != kNovice && node.label != kExpert) {
          return absl::InvalidArgumentError(
              absl::StrCat("tree ", t, " node ", i, ": bad leaf label"));
        }
        continue;
      }
      if (node.feature >= d) {
        return absl::InvalidArgumentError(
            absl::StrCat("tree ", t, " node ", i, ": split feature ",
                         node.feature, " >= d = ", d));
      }
      // Children always follow their parent in the flat layout, which rules
      // out cycles.
      if (node.left <= i || node.left >= n || node.right <= i ||
          node.right >= n) {
        return absl::InvalidArgumentError(
            absl::StrCat("tree ", t, " node ", i, ": bad child index"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<TrainConfig> ResolveTrainConfig(const TrainConfig& config,
                                               int d) {
  TrainConfig resolved = config;
  if (resolved.features_per_tree == 0) {
    resolved.features_per_tree =
        static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  }
  if (resolved.n_trees < 1) {
    return absl::InvalidArgumentError("config error: n_trees must be >= 1");
  }
  if (resolved.max_depth < 1) {
    return absl::InvalidArgumentError("config error: max_depth must be >= 1");
  }
  if (resolved.min_leaf_samples < 1) {
    return absl::InvalidArgumentError(
        "config error: min_leaf_samples must be >= 1");
  }
  if (resolved.features_per_tree < 1 || resolved.features_per_tree > d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config error: features_per_tree must be in [1, ", d, "], got ",
        resolved.features_per_tree));
  }
  return resolved;
}

namespace {

// Sum of squared class counts over the count, as an exact fraction. The Gini
// impurity of a split is minimized when the sum of these over both children is
// maximized.
struct Purity {
  __int128 numerator = 0;
  __int128 denominator = 1;
};

bool Greater(const Purity& a, const Purity& b) {
  return a.numerator * b.denominator > b.numerator * a.denominator;
}

Purity SplitPurity(int64_t left_expert, int64_t left_n, int64_t right_expert,
                   int64_t right_n) {
  const int64_t left_novice = left_n - left_expert;
  const int64_t right_novice = right_n - right_expert;
  const __int128 left_sq =
      left_expert * left_expert + left_novice * left_novice;
  const __int128 right_sq =
      right_expert * right_expert + right_novice * right_novice;
  return {left_sq * right_n + right_sq * left_n,
          static_cast<__int128>(left_n) * right_n};
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& dataset, const TrainConfig& config,
              std::vector<int> features)
      : dataset_(dataset), config_(config), features_(std::move(features)) {}

  Tree Build(std::vector<int> samples) {
    Tree tree;
    nodes_ = &tree.nodes;
    Grow(std::move(samples), 0);
    nodes_ = nullptr;
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
  };

  int Grow(std::vector<int> samples, int depth) {
    const int n = static_cast<int>(samples.size());
    int experts = 0;
    for (int index : samples) experts += dataset_.instances[index].label;

    const int node_index = static_cast<int>(nodes_->size());
    nodes_->emplace_back();

    Split split;
    if (depth < config_.max_depth && experts > 0 && experts < n &&
        n >= 2 * config_.min_leaf_samples) {
      split = FindBestSplit(samples, experts);
    }
    if (split.feature < 0) {
      TreeNode& leaf = (*nodes_)[node_index];
      leaf.expert_fraction = n > 0 ? static_cast<double>(experts) / n : 0.0;
      // An even split stays novice.
      leaf.label = 2 * experts > n ? kExpert : kNovice;
      leaf.sample_count = n;
      return node_index;
    }

    std::vector<int> left_samples;
    std::vector<int> right_samples;
    for (int index : samples) {
      const double value = dataset_.instances[index].features[split.feature];
      (value <= split.threshold ? left_samples : right_samples)
          .push_back(index);
    }
    samples.clear();
    samples.shrink_to_fit();

    const int left = Grow(std::move(left_samples), depth + 1);
    const int right = Grow(std::move(right_samples), depth + 1);
    TreeNode& node = (*nodes_)[node_index];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return node_index;
  }

  // Exhaustive search over midpoints between consecutive distinct values.
  // Ties resolve to the lowest feature, then the lowest threshold.
  Split FindBestSplit(const std::vector<int>& samples, int experts) const {
    const int64_t n = static_cast<int64_t>(samples.size());
    const int64_t novices = n - experts;
    Purity best = {static_cast<__int128>(experts) * experts +
                       static_cast<__int128>(novices) * novices,
                   n};
    Split best_split;

    std::vector<std::pair<double, int>> column(samples.size());
    for (int feature : features_) {
      for (size_t k = 0; k < samples.size(); ++k) {
        const Instance& instance = dataset_.instances[samples[k]];
        column[k] = {instance.features[feature], instance.label};
      }
      std::sort(column.begin(), column.end());
      int64_t left_experts = 0;
      for (int64_t k = 0; k + 1 < n; ++k) {
        left_experts += column[k].second;
        const double value = column[k].first;
        const double next = column[k + 1].first;
        if (!(value < next)) continue;
        const int64_t left_n = k + 1;
        const int64_t right_n = n - left_n;
        if (left_n < config_.min_leaf_samples ||
            right_n < config_.min_leaf_samples) {
          continue;
        }
        const Purity purity = SplitPurity(left_experts, left_n,
                                          experts - left_experts, right_n);
        if (Greater(purity, best)) {
          best = purity;
          double threshold = 0.5 * (value + next);
          if (!(threshold < next)) threshold = value;
          best_split = {feature, threshold};
        }
      }
    }
    return best_split;
  }

  const Dataset& dataset_;
  const TrainConfig& config_;
  const std::vector<int> features_;
  std::vector<TreeNode>* nodes_ = nullptr;
};

}  // namespace

absl::StatusOr<RandomForest> TrainForest(const Dataset& dataset,
                                         const TrainConfig& config) {
  std::vector<int> indices(dataset.instances.size());
  std::iota(indices.begin(), indices.end(), 0);
  return TrainForest(dataset, indices, config);
}

absl::StatusOr<RandomForest> TrainForest(const Dataset& dataset,
                                         std::span<const int> indices,
                                         const TrainConfig& config) {
  if (absl::Status s = ValidateDataset(dataset); !s.ok()) return s;
  const int d = dataset.num_features();
  absl::StatusOr<TrainConfig> resolved = ResolveTrainConfig(config, d);
  if (!resolved.ok()) return resolved.status();

  bool has_expert = false;
  bool has_novice = false;
  for (int index : indices) {
    if (index < 0 || index >= static_cast<int>(dataset.instances.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("training index ", index, " out of range"));
    }
    (dataset.instances[index].label == kExpert ? has_expert : has_novice) =
        true;
  }
  if (!has_expert || !has_novice) {
    return absl::InvalidArgumentError(
        "degenerate training set: both classes are required");
  }

  RandomForest forest;
  forest.schema = dataset.schema;
  forest.train_config = *resolved;
  forest.trees.reserve(resolved->n_trees);

  const int n = static_cast<int>(indices.size());
  for (int t = 0; t < resolved->n_trees; ++t) {
    std::mt19937_64 rng(DeriveSeed(resolved->seed, SeedStream::kTree, t));

    std::vector<int> features(d);
    std::iota(features.begin(), features.end(), 0);
    for (int k = 0; k < resolved->features_per_tree; ++k) {
      std::uniform_int_distribution<int> pick(k, d - 1);
      std::swap(features[k], features[pick(rng)]);
    }
    features.resize(resolved->features_per_tree);
    std::sort(features.begin(), features.end());

    std::vector<int> samples;
    if (resolved->bootstrap) {
      samples.resize(n);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int& sample : samples) sample = indices[pick(rng)];
    } else {
      samples.assign(indices.begin(), indices.end());
    }

    TreeBuilder builder(dataset, *resolved, std::move(features));
    forest.trees.push_back(builder.Build(std::move(samples)));
  }
  return forest;
}

absl::StatusOr<double> PredictProba(const RandomForest& forest,
                                    std::span<const double> x) {
  if (x.size() != forest.schema.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema error: expected ", forest.schema.size(),
                     " features, got ", x.size()));
  }
  return PredictProbaUnchecked(forest, x);
}

double Accuracy(const RandomForest& forest, const Dataset& dataset) {
  if (dataset.instances.empty()) return 0.0;
  int correct = 0;
  for (const Instance& instance : dataset.instances) {
    const int predicted =
        PredictProbaUnchecked(forest, instance.features) > 0.5 ? kExpert
                                                               : kNovice;
    correct += predicted == instance.label;
  }
  return static_cast<double>(correct) / dataset.instances.size();
}

}  // namespace rfrecourse
