//
// Copyright 2026 The Privtruth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVTRUTH_RANDOM_HPP_
#define PRIVTRUTH_RANDOM_HPP_

#include <cstdint>

namespace privtruth {

// 64-bit avalanche mix (splitmix64 finalizer).
uint64_t Mix64(uint64_t x);

// Collapses (seed, key components) into one well-mixed stream key. Streams
// with distinct keys are decorrelated, so samplers can be keyed by e.g.
// (seed, user) or (seed, user, object) and evaluated in any order.
uint64_t DeriveKey(uint64_t seed, uint64_t a);
uint64_t DeriveKey(uint64_t seed, uint64_t a, uint64_t b);
uint64_t DeriveKey(uint64_t seed, uint64_t a, uint64_t b, uint64_t c);

// Deterministic counter-style random stream over a splitmix64 state walk.
// The same key always reproduces the same draw sequence, independent of any
// other stream, which keeps parallel sampling schedule-independent.
class RandomStream {
 public:
  explicit RandomStream(uint64_t key) : state_(key) {}

  uint64_t NextU64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double NextUnit();

  double NextUniform(double lo, double hi);

  // Exponential with the given rate (mean 1/rate), via inverse CDF.
  double NextExponential(double rate);

  // Gaussian via Box-Muller; consumes two uniforms per draw.
  double NextGaussian(double mean, double stddev);

 private:
  uint64_t state_;
};

}  // namespace privtruth

#endif  // PRIVTRUTH_RANDOM_HPP_
