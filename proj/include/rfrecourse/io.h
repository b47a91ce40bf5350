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

// Dataset CSV and forest JSON formats.
//
// Dataset CSV: header `f_<name>,...,label,group`, one instance per row.
// The CSV carries no domain bounds; they are inferred as the observed
// [min, max] of every column when loading.
//
// Forest JSON:
//   {"schema": [{"name", "lower", "upper"}],
//    "config": {"n_trees", "max_depth", "features_per_tree", "bootstrap",
//               "min_leaf_samples", "seed"},
//    "trees": [node]}
// where node is {"split": {"f", "t", "l", "r"}} or
// {"leaf": {"label", "frac", "count"}}.

#ifndef RFRECOURSE_IO_H_
#define RFRECOURSE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "rfrecourse/forest.h"

namespace rfrecourse {

// Shortest representation that parses back to the same double.
std::string FormatReal(double value);

std::string DatasetToCsv(const Dataset& dataset);
absl::StatusOr<Dataset> DatasetFromCsv(std::string_view text);

// Infers [min, max] bounds per column. A constant column gets [v - 0.5,
// v + 0.5].
Schema InferSchema(const std::vector<std::string>& names,
                   const std::vector<Instance>& instances);

std::string SaveForest(const RandomForest& forest);
// Errors name the offending node path, e.g. "trees[3].split.l.leaf.frac".
absl::StatusOr<RandomForest> LoadForest(std::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace rfrecourse

#endif  // RFRECOURSE_IO_H_
