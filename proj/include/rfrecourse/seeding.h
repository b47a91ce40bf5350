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

// Seed derivation for independent, schedule-free random streams.

#ifndef RFRECOURSE_SEEDING_H_
#define RFRECOURSE_SEEDING_H_

#include <cstdint>

namespace rfrecourse {

// SplitMix64 finalizer.
constexpr uint64_t MixBits(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Named sub-streams of a single user seed.
enum class SeedStream : uint64_t {
  kData = 1,
  kTrain = 2,
  kMethod = 3,
  kTree = 4,
  kSample = 5,
};

// Derives the seed of element `index` of `stream` from `seed`.
constexpr uint64_t DeriveSeed(uint64_t seed, SeedStream stream,
                              uint64_t index = 0) {
  return MixBits(MixBits(seed ^ MixBits(static_cast<uint64_t>(stream))) +
                 index);
}

}  // namespace rfrecourse

#endif  // RFRECOURSE_SEEDING_H_
