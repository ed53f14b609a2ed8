// Copyright 2026 The Guidegraph Authors.
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

#ifndef GUIDEGRAPH_BASE_RNG_H_
#define GUIDEGRAPH_BASE_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace guidegraph {

// Mixes a base seed with stream identifiers (splitmix64 finalizer), so that
// independent consumers of one user seed get decorrelated streams.
uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0);

// Seeded generator whose output is identical on every platform. The standard
// distributions are implementation-defined, so every draw here is computed
// directly from the raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  // Uniform integer in [lo, hi].
  int UniformInt(int lo, int hi) {
    return lo + static_cast<int>(Below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1).
  double NextDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextDouble(); }

  bool Bernoulli(double p) { return NextDouble() < p; }

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  const T &Pick(const std::vector<T> &items) {
    return items[static_cast<size_t>(Below(items.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace guidegraph

#endif  // GUIDEGRAPH_BASE_RNG_H_
