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

#include "rfrecourse/synthetic.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "rfrecourse/io.h"
#include "rfrecourse/seeding.h"

namespace rfrecourse {

namespace {

constexpr const char* kStrokeMetrics[] = {"length",   "speed",
                                          "acceleration", "duration",
                                          "straightness", "force"};

std::string FeatureName(int i) {
  if (i < 6) return kStrokeMetrics[i];
  return absl::StrCat("x", i + 1);
}

}  // namespace

absl::Status ValidateSyntheticConfig(const SyntheticConfig& config) {
  if (config.d < 1) {
    return absl::InvalidArgumentError("config error: d must be >= 1");
  }
  if (config.n_per_class < 1) {
    return absl::InvalidArgumentError("config error: n must be >= 1 per class");
  }
  if (!(config.separation >= 0.0) || !std::isfinite(config.separation)) {
    return absl::InvalidArgumentError("config error: separation must be >= 0");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    return absl::InvalidArgumentError("config error: sigma must be > 0");
  }
  if (config.n_groups < 2) {
    return absl::InvalidArgumentError("config error: groups must be >= 2");
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticConfig& config) {
  if (absl::Status s = ValidateSyntheticConfig(config); !s.ok()) return s;
  std::mt19937_64 rng(DeriveSeed(config.seed, SeedStream::kData));
  std::normal_distribution<double> noise(0.0, config.sigma);
  const double offset =
      config.separation * config.sigma / std::sqrt(static_cast<double>(config.d));

  std::vector<Instance> instances;
  instances.reserve(2 * config.n_per_class);
  for (int k = 0; k < config.n_per_class; ++k) {
    for (int label : {kNovice, kExpert}) {
      Instance instance;
      instance.label = label;
      instance.group = label == kExpert ? config.n_groups : k % config.n_groups;
      instance.features.resize(config.d);
      const double center = label == kExpert ? offset : 0.0;
      for (double& value : instance.features) value = center + noise(rng);
      instances.push_back(std::move(instance));
    }
  }

  std::vector<std::string> names;
  for (int i = 0; i < config.d; ++i) names.push_back(FeatureName(i));
  Dataset dataset;
  dataset.schema = InferSchema(names, instances);
  dataset.instances = std::move(instances);
  return dataset;
}

}  // namespace rfrecourse
