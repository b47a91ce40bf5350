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

#include "rfrecourse/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace rfrecourse {

using json = nlohmann::json;

std::string FormatReal(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

bool ParseDouble(absl::string_view text, double* value) {
  text = absl::StripAsciiWhitespace(text);
  if (text.empty()) return false;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

bool ParseInt(absl::string_view text, int* value) {
  text = absl::StripAsciiWhitespace(text);
  if (text.empty()) return false;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

}  // namespace

std::string DatasetToCsv(const Dataset& dataset) {
  std::string out;
  for (const FeatureSpec& spec : dataset.schema) {
    absl::StrAppend(&out, "f_", spec.name, ",");
  }
  out += "label,group\n";
  for (const Instance& instance : dataset.instances) {
    for (double value : instance.features) {
      absl::StrAppend(&out, FormatReal(value), ",");
    }
    absl::StrAppend(&out, instance.label, ",", instance.group, "\n");
  }
  return out;
}

Schema InferSchema(const std::vector<std::string>& names,
                   const std::vector<Instance>& instances) {
  Schema schema;
  for (size_t i = 0; i < names.size(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Instance& instance : instances) {
      lo = std::min(lo, instance.features[i]);
      hi = std::max(hi, instance.features[i]);
    }
    if (!(lo < hi)) {
      const double center = instances.empty() ? 0.0 : lo;
      lo = center - 0.5;
      hi = center + 0.5;
    }
    schema.push_back({names[i], lo, hi});
  }
  return schema;
}

absl::StatusOr<Dataset> DatasetFromCsv(std::string_view input) {
  const absl::string_view text(input.data(), input.size());
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  while (!lines.empty() && absl::StripAsciiWhitespace(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.empty()) {
    return absl::InvalidArgumentError("csv: missing header row");
  }

  std::vector<std::string> names;
  {
    std::vector<absl::string_view> header = absl::StrSplit(lines[0], ',');
    for (auto& cell : header) cell = absl::StripAsciiWhitespace(cell);
    if (header.size() < 3 || header[header.size() - 2] != "label" ||
        header.back() != "group") {
      return absl::InvalidArgumentError(
          "csv line 1: header must be f_<name>,...,label,group");
    }
    for (size_t i = 0; i + 2 < header.size(); ++i) {
      if (!absl::ConsumePrefix(&header[i], "f_") || header[i].empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "csv line 1: feature column ", i + 1, " must be named f_<name>"));
      }
      names.emplace_back(header[i]);
    }
  }

  const size_t d = names.size();
  std::vector<Instance> instances;
  instances.reserve(lines.size() - 1);
  for (size_t row = 1; row < lines.size(); ++row) {
    std::vector<absl::string_view> cells = absl::StrSplit(lines[row], ',');
    if (cells.size() != d + 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("csv line ", row + 1, ": expected ", d + 2,
                       " columns, got ", cells.size()));
    }
    Instance instance;
    instance.features.resize(d);
    for (size_t i = 0; i < d; ++i) {
      if (!ParseDouble(cells[i], &instance.features[i]) ||
          !std::isfinite(instance.features[i])) {
        return absl::InvalidArgumentError(
            absl::StrCat("csv line ", row + 1, ": bad value '", cells[i],
                         "' for f_", names[i]));
      }
    }
    if (!ParseInt(cells[d], &instance.label) ||
        (instance.label != kNovice && instance.label != kExpert)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "csv line ", row + 1, ": label must be 0 or 1, got '", cells[d],
          "'"));
    }
    if (!ParseInt(cells[d + 1], &instance.group)) {
      return absl::InvalidArgumentError(
          absl::StrCat("csv line ", row + 1, ": bad group '", cells[d + 1],
                       "'"));
    }
    instances.push_back(std::move(instance));
  }

  Dataset dataset;
  dataset.schema = InferSchema(names, instances);
  dataset.instances = std::move(instances);
  if (absl::Status s = ValidateDataset(dataset); !s.ok()) return s;
  return dataset;
}

namespace {

json NodeToJson(const Tree& tree, int index) {
  const TreeNode& node = tree.nodes[index];
  if (node.is_leaf()) {
    return {{"leaf",
             {{"label", node.label},
              {"frac", node.expert_fraction},
              {"count", node.sample_count}}}};
  }
  return {{"split",
           {{"f", node.feature},
            {"t", node.threshold},
            {"l", NodeToJson(tree, node.left)},
            {"r", NodeToJson(tree, node.right)}}}};
}

class ForestParser {
 public:
  absl::StatusOr<RandomForest> Parse(std::string_view text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      return absl::InvalidArgumentError("forest json: parse error");
    }
    if (!doc.is_object()) return Error("$", "expected an object");

    RandomForest forest;
    const json* schema = Member(doc, "schema", "$");
    if (schema == nullptr || !schema->is_array()) {
      return Error("schema", "expected an array");
    }
    for (size_t i = 0; i < schema->size(); ++i) {
      const std::string path = absl::StrCat("schema[", i, "]");
      const json& entry = (*schema)[i];
      FeatureSpec spec;
      if (!entry.is_object()) return Error(path, "expected an object");
      if (!GetString(entry, "name", path, &spec.name) ||
          !GetReal(entry, "lower", path, &spec.lower) ||
          !GetReal(entry, "upper", path, &spec.upper)) {
        return error_;
      }
      forest.schema.push_back(std::move(spec));
    }

    const json* config = Member(doc, "config", "$");
    if (config == nullptr || !config->is_object()) {
      return Error("config", "expected an object");
    }
    TrainConfig& tc = forest.train_config;
    if (!GetInt(*config, "n_trees", "config", &tc.n_trees) ||
        !GetInt(*config, "max_depth", "config", &tc.max_depth) ||
        !GetInt(*config, "features_per_tree", "config",
                &tc.features_per_tree) ||
        !GetInt(*config, "min_leaf_samples", "config",
                &tc.min_leaf_samples)) {
      return error_;
    }
    const json* bootstrap = Member(*config, "bootstrap", "config");
    if (bootstrap == nullptr || !bootstrap->is_boolean()) {
      return Error("config.bootstrap", "expected a boolean");
    }
    tc.bootstrap = bootstrap->get<bool>();
    const json* seed = Member(*config, "seed", "config");
    if (seed == nullptr || !seed->is_number_unsigned()) {
      return Error("config.seed", "expected an unsigned integer");
    }
    tc.seed = seed->get<uint64_t>();

    const json* trees = Member(doc, "trees", "$");
    if (trees == nullptr || !trees->is_array()) {
      return Error("trees", "expected an array");
    }
    for (size_t t = 0; t < trees->size(); ++t) {
      Tree tree;
      if (!ParseNode((*trees)[t], absl::StrCat("trees[", t, "]"), &tree)) {
        return error_;
      }
      forest.trees.push_back(std::move(tree));
    }
    if (absl::Status s = ValidateForest(forest); !s.ok()) return s;
    return forest;
  }

 private:
  void SetError(absl::string_view path, absl::string_view message) {
    error_ = absl::InvalidArgumentError(
        absl::StrCat("forest json at ", path, ": ", message));
  }

  absl::Status Error(absl::string_view path, absl::string_view message) {
    error_ = absl::InvalidArgumentError(
        absl::StrCat("forest json at ", path, ": ", message));
    return error_;
  }

  const json* Member(const json& object, const char* key,
                     absl::string_view path) {
    auto it = object.find(key);
    if (it == object.end()) {
      SetError(path, absl::StrCat("missing '", key, "'"));
      return nullptr;
    }
    return &*it;
  }

  bool GetReal(const json& object, const char* key, absl::string_view path,
               double* value) {
    const json* member = Member(object, key, path);
    if (member == nullptr) return false;
    if (!member->is_number()) {
      SetError(absl::StrCat(path, ".", key), "expected a number");
      return false;
    }
    *value = member->get<double>();
    return true;
  }

  bool GetInt(const json& object, const char* key, absl::string_view path,
              int* value) {
    const json* member = Member(object, key, path);
    if (member == nullptr) return false;
    if (!member->is_number_integer()) {
      SetError(absl::StrCat(path, ".", key), "expected an integer");
      return false;
    }
    *value = member->get<int>();
    return true;
  }

  bool GetString(const json& object, const char* key, absl::string_view path,
                 std::string* value) {
    const json* member = Member(object, key, path);
    if (member == nullptr) return false;
    if (!member->is_string()) {
      SetError(absl::StrCat(path, ".", key), "expected a string");
      return false;
    }
    *value = member->get<std::string>();
    return true;
  }

  // Appends the subtree rooted at `node` in pre-order and returns false on
  // error.
  bool ParseNode(const json& node, const std::string& path, Tree* tree) {
    if (!node.is_object() || node.size() != 1) {
      SetError(path, "expected {\"split\": ...} or {\"leaf\": ...}");
      return false;
    }
    const int index = static_cast<int>(tree->nodes.size());
    tree->nodes.emplace_back();
    if (auto leaf = node.find("leaf"); leaf != node.end()) {
      const std::string leaf_path = path + ".leaf";
      TreeNode parsed;
      if (!leaf->is_object() ||
          !GetInt(*leaf, "label", leaf_path, &parsed.label) ||
          !GetReal(*leaf, "frac", leaf_path, &parsed.expert_fraction) ||
          !GetInt(*leaf, "count", leaf_path, &parsed.sample_count)) {
        if (error_.ok()) SetError(leaf_path, "expected an object");
        return false;
      }
      if (parsed.label != kNovice && parsed.label != kExpert) {
        SetError(leaf_path + ".label", "must be 0 or 1");
        return false;
      }
      tree->nodes[index] = parsed;
      return true;
    }
    auto split = node.find("split");
    if (split == node.end() || !split->is_object()) {
      SetError(path, "expected {\"split\": ...} or {\"leaf\": ...}");
      return false;
    }
    const std::string split_path = path + ".split";
    int feature = 0;
    double threshold = 0.0;
    if (!GetInt(*split, "f", split_path, &feature) ||
        !GetReal(*split, "t", split_path, &threshold)) {
      return false;
    }
    if (feature < 0) {
      SetError(split_path + ".f", "must be >= 0");
      return false;
    }
    const json* left = Member(*split, "l", split_path);
    if (left == nullptr) return false;
    const json* right = Member(*split, "r", split_path);
    if (right == nullptr) return false;
    const int left_index = static_cast<int>(tree->nodes.size());
    if (!ParseNode(*left, split_path + ".l", tree)) return false;
    const int right_index = static_cast<int>(tree->nodes.size());
    if (!ParseNode(*right, split_path + ".r", tree)) return false;
    TreeNode& parsed = tree->nodes[index];
    parsed.feature = feature;
    parsed.threshold = threshold;
    parsed.left = left_index;
    parsed.right = right_index;
    return true;
  }

  absl::Status error_;
};

}  // namespace

std::string SaveForest(const RandomForest& forest) {
  json schema = json::array();
  for (const FeatureSpec& spec : forest.schema) {
    schema.push_back(
        {{"name", spec.name}, {"lower", spec.lower}, {"upper", spec.upper}});
  }
  const TrainConfig& tc = forest.train_config;
  json config = {{"n_trees", tc.n_trees},
                 {"max_depth", tc.max_depth},
                 {"features_per_tree", tc.features_per_tree},
                 {"bootstrap", tc.bootstrap},
                 {"min_leaf_samples", tc.min_leaf_samples},
                 {"seed", tc.seed}};
  json trees = json::array();
  for (const Tree& tree : forest.trees) trees.push_back(NodeToJson(tree, 0));
  json doc = {{"schema", std::move(schema)},
              {"config", std::move(config)},
              {"trees", std::move(trees)}};
  return doc.dump() + "\n";
}

absl::StatusOr<RandomForest> LoadForest(std::string_view text) {
  ForestParser parser;
  return parser.Parse(text);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot open ", path, " for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

}  // namespace rfrecourse
