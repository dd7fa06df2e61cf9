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

#include "privtruth/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace privtruth {

namespace {
constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace

uint64_t Mix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveKey(uint64_t seed, uint64_t a) {
  return Mix64(seed ^ Mix64(a + 1));
}

uint64_t DeriveKey(uint64_t seed, uint64_t a, uint64_t b) {
  return Mix64(DeriveKey(seed, a) ^ Mix64(b + 2));
}

uint64_t DeriveKey(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return Mix64(DeriveKey(seed, a, b) ^ Mix64(c + 3));
}

uint64_t RandomStream::NextU64() {
  state_ += kGolden;
  uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double RandomStream::NextUnit() {
  // 53 mantissa bits, shifted into (0, 1): never exactly 0 or 1, so logs
  // below are always finite.
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::NextUniform(double lo, double hi) {
  return lo + (hi - lo) * NextUnit();
}

double RandomStream::NextExponential(double rate) {
  if (!(rate > 0)) {
    throw std::invalid_argument("RandomStream: exponential rate must be > 0");
  }
  return -std::log(NextUnit()) / rate;
}

double RandomStream::NextGaussian(double mean, double stddev) {
  const double u1 = NextUnit();
  const double u2 = NextUnit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace privtruth
