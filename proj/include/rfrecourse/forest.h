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

// Binary random forest classifier over numeric feature vectors.
//
// Trees are axis-aligned CART trees grown with the Gini criterion. Each tree
// sees a bootstrap sample of the instances and a random subset of the
// features. The forest output F(x) is the fraction of trees whose reached leaf
// carries the expert label (hard votes), so that F(x) * num_trees is always an
// integer.

#ifndef RFRECOURSE_FOREST_H_
#define RFRECOURSE_FOREST_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace rfrecourse {

// Class labels. Expert is the desired class.
inline constexpr int kNovice = 0;
inline constexpr int kExpert = 1;

struct FeatureSpec {
  std::string name;
  // Inclusive domain bounds.
  double lower = 0.0;
  double upper = 1.0;

  bool operator==(const FeatureSpec&) const = default;
};

using Schema = std::vector<FeatureSpec>;

// Checks lower < upper and unique names.
absl::Status ValidateSchema(const Schema& schema);

struct Instance {
  std::vector<double> features;
  int label = kNovice;
  // Cross-validation group (e.g. the trainee who produced the instance).
  int group = 0;

  bool operator==(const Instance&) const = default;
};

struct Dataset {
  Schema schema;
  std::vector<Instance> instances;

  int num_features() const { return static_cast<int>(schema.size()); }
  bool operator==(const Dataset&) const = default;
};

// Checks the schema and that every instance conforms to it.
absl::Status ValidateDataset(const Dataset& dataset);

// Checks that `x` has the schema dimension and lies inside the domain.
absl::Status CheckQuery(const Schema& schema, std::span<const double> x);

struct TrainConfig {
  int n_trees = 100;
  int max_depth = 5;
  // Size of the random feature subset drawn per tree. 0 selects ceil(sqrt(d)).
  int features_per_tree = 0;
  bool bootstrap = true;
  int min_leaf_samples = 1;
  uint64_t seed = 1;

  bool operator==(const TrainConfig&) const = default;
};

// A node of a tree stored in a flat array. Split nodes send x to `left` when
// x[feature] <= threshold and to `right` otherwise. Leaves have feature == -1.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;

  // Leaf payload.
  int label = kNovice;
  double expert_fraction = 0.0;
  int sample_count = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Nodes of one tree; nodes[0] is the root.
struct Tree {
  std::vector<TreeNode> nodes;

  // Returns the index of the leaf reached by `x`.
  int FindLeaf(std::span<const double> x) const;
  // Number of split nodes on the longest root-to-leaf path.
  int Depth() const;
  int NumLeaves() const;

  bool operator==(const Tree&) const = default;
};

struct RandomForest {
  Schema schema;
  // Snapshot of the configuration used for training, with features_per_tree
  // resolved.
  TrainConfig train_config;
  std::vector<Tree> trees;

  int num_trees() const { return static_cast<int>(trees.size()); }
  int num_features() const { return static_cast<int>(schema.size()); }

  // Number of trees voting expert at `x`. `x` is not validated.
  int ExpertVotes(std::span<const double> x) const;

  bool operator==(const RandomForest&) const = default;
};

// Checks tree structure: indices in range, split features below d, T >= 1.
absl::Status ValidateForest(const RandomForest& forest);

// Resolves defaults and checks the configuration against dimension `d`.
absl::StatusOr<TrainConfig> ResolveTrainConfig(const TrainConfig& config,
                                               int d);

// Trains a forest. Deterministic for a fixed (dataset, config) pair.
absl::StatusOr<RandomForest> TrainForest(const Dataset& dataset,
                                         const TrainConfig& config);

// Same as TrainForest, restricted to the instances at `indices` (repetitions
// allowed).
absl::StatusOr<RandomForest> TrainForest(const Dataset& dataset,
                                         std::span<const int> indices,
                                         const TrainConfig& config);

// F(x): fraction of trees voting expert. Validates `x` against the schema.
absl::StatusOr<double> PredictProba(const RandomForest& forest,
                                    std::span<const double> x);

// F(x) without validation, for inner loops.
inline double PredictProbaUnchecked(const RandomForest& forest,
                                    std::span<const double> x) {
  return static_cast<double>(forest.ExpertVotes(x)) / forest.num_trees();
}

// Fraction of `dataset` instances whose predicted class (F > 0.5) matches the
// label.
double Accuracy(const RandomForest& forest, const Dataset& dataset);

}  // namespace rfrecourse

#endif  // RFRECOURSE_FOREST_H_
