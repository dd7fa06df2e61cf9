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

#include "privtruth/perturb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "privtruth/random.hpp"

namespace privtruth {

namespace {
// Stream tags keep variance sampling and entry noise on disjoint substreams
// of the same seed.
constexpr uint64_t kVarianceStream = 0x5641524eULL;   // "VARN"
constexpr uint64_t kEntryNoiseStream = 0x4e4f4953ULL;  // "NOIS"
}  // namespace

NoiseProfile SampleNoiseVariances(double lambda2, int n_users,
                                  uint64_t seed) {
  if (!(lambda2 > 0) || !std::isfinite(lambda2)) {
    throw std::invalid_argument(
        "SampleNoiseVariances: lambda2 must be positive and finite");
  }
  if (n_users < 1) {
    throw std::invalid_argument("SampleNoiseVariances: need n_users >= 1");
  }
  NoiseProfile profile;
  profile.lambda2 = lambda2;
  profile.seed = seed;
  profile.per_user_variance.resize(n_users);
  for (int s = 0; s < n_users; ++s) {
    RandomStream stream(DeriveKey(seed, kVarianceStream, s));
    profile.per_user_variance[s] = stream.NextExponential(lambda2);
  }
  return profile;
}

ObservationTable PerturbTable(const ObservationTable& table,
                              const NoiseProfile& profile) {
  if (profile.per_user_variance.size() <
      static_cast<size_t>(table.n_users())) {
    throw std::invalid_argument(
        "PerturbTable: profile covers " +
        std::to_string(profile.per_user_variance.size()) +
        " users but the table has " + std::to_string(table.n_users()));
  }
  for (double v : profile.per_user_variance) {
    if (!std::isfinite(v) || v < 0) {
      throw std::invalid_argument(
          "PerturbTable: variances must be finite and >= 0");
    }
  }

  std::vector<Observation> perturbed = table.entries();
  for (Observation& e : perturbed) {
    const double variance = profile.per_user_variance[e.user];
    if (variance == 0) continue;
    RandomStream stream(
        DeriveKey(profile.seed, kEntryNoiseStream, e.user, e.object));
    e.value += stream.NextGaussian(0.0, std::sqrt(variance));
  }
  return ObservationTable(table.n_objects(), table.n_users(),
                          std::move(perturbed));
}

NoiseLevel NoiseLevelFromRates(double lambda1, double lambda2) {
  if (!(lambda1 > 0) || !(lambda2 > 0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2)) {
    throw std::invalid_argument(
        "NoiseLevelFromRates: rates must be positive and finite");
  }
  return NoiseLevel{lambda1 / lambda2};
}

}  // namespace privtruth
