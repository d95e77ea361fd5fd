// Copyright (c) 2026 The ctts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTTS_COMMON_RANDOM_H_
#define CTTS_COMMON_RANDOM_H_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace ctts {

// 64-bit FNV-1a over bytes. Used to key random streams by string ids.
uint64_t Fnv1a64(std::string_view bytes);

// SplitMix64 finalizer; a good avalanche mix for combining seeds.
uint64_t Mix64(uint64_t x);

inline uint64_t CombineSeeds(uint64_t a, uint64_t b) {
  return Mix64(a ^ (Mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

template <typename... Rest>
uint64_t CombineSeeds(uint64_t a, uint64_t b, Rest... rest) {
  return CombineSeeds(CombineSeeds(a, b), static_cast<uint64_t>(rest)...);
}

// Portable pseudo-random generator (SplitMix64 stream). Unlike the standard
// <random> distributions, every draw here is specified bit-for-bit, so
// datasets and checkpoints reproduce across standard library vendors.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();
  // Uniform integer in [0, bound). bound must be > 0.
  uint64_t Uniform(uint64_t bound);
  // Uniform double in [0, 1).
  double UniformDouble();
  // Standard normal via Box-Muller.
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>* items) {
    for (size_t i = items->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Uniform(i));
      std::swap((*items)[i - 1], (*items)[j]);
    }
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ctts

#endif  // CTTS_COMMON_RANDOM_H_
