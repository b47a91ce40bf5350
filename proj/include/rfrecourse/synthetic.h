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

// Seeded two-cluster Gaussian data standing in for labelled stroke metrics.

#ifndef RFRECOURSE_SYNTHETIC_H_
#define RFRECOURSE_SYNTHETIC_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "rfrecourse/forest.h"

namespace rfrecourse {

struct SyntheticConfig {
  int n_per_class = 2500;
  int d = 6;
  // Euclidean distance between the class centers, in units of sigma.
  double separation = 2.6;
  double sigma = 1.0;
  // Number of simulated novices. Novice instances are dealt round-robin to
  // groups 0..n_groups-1; all expert instances share group n_groups.
  int n_groups = 12;
  uint64_t seed = 7;
};

absl::Status ValidateSyntheticConfig(const SyntheticConfig& config);

// Novice center at the origin, expert center at separation * sigma / sqrt(d)
// on every axis, isotropic noise sigma. Feature domains are the observed
// [min, max] per column, as a CSV round trip would infer them. The first six
// features are named length, speed, acceleration, duration, straightness and
// force; further ones x7, x8, ...
absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticConfig& config);

}  // namespace rfrecourse

#endif  // RFRECOURSE_SYNTHETIC_H_
