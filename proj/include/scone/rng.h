/*
 * Copyright 2026 The SCoNE Authors.
 *
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

#ifndef SCONE_RNG_H_
#define SCONE_RNG_H_

#include <cstdint>
#include <random>

namespace scone {

using Rng = std::mt19937_64;

// Independent stream domains so that, e.g., member 3 of a fit and trial 3 of
// a Monte Carlo probe never share a stream for the same user seed.
enum class StreamDomain : std::uint64_t {
  kEnsembleMember = 1,
  kClusterData = 2,
  kAttributeInjection = 3,
  kClassInjection = 4,
  kClassAttributeInjection = 5,
  kViewSplit = 6,
  kMonteCarloTrial = 7,
  kSelection = 8,
  kBenchmark = 9,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of stream `index` in `domain`; a pure function of its arguments.
constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamDomain domain,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(domain))) + index);
}

inline Rng make_rng(std::uint64_t seed, StreamDomain domain,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(seed, domain, index));
}

}  // namespace scone

#endif  // SCONE_RNG_H_
