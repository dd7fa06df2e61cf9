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

#include "privtruth/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "privtruth/discovery.hpp"
#include "privtruth/random.hpp"

namespace privtruth {

namespace {
constexpr uint64_t kTruthStream = 0x54525554ULL;     // "TRUT"
constexpr uint64_t kErrorVarStream = 0x45565552ULL;  // "EVAR"
constexpr uint64_t kErrorStream = 0x45525253ULL;     // "ERRS"
}  // namespace

SynthData GenerateSyntheticData(const SynthConfig& config) {
  if (config.n_objects < 1 || config.n_users < 1) {
    throw std::invalid_argument(
        "GenerateSyntheticData: need at least one object and one user");
  }
  if (!(config.lambda1 > 0) || !std::isfinite(config.lambda1)) {
    throw std::invalid_argument(
        "GenerateSyntheticData: lambda1 must be positive and finite");
  }
  if (!(config.truth_low <= config.truth_high) ||
      !std::isfinite(config.truth_low) || !std::isfinite(config.truth_high)) {
    throw std::invalid_argument(
        "GenerateSyntheticData: invalid truth range");
  }

  std::vector<double> truths(config.n_objects);
  for (int n = 0; n < config.n_objects; ++n) {
    RandomStream stream(DeriveKey(config.seed, kTruthStream, n));
    truths[n] = stream.NextUniform(config.truth_low, config.truth_high);
  }

  std::vector<double> variances(config.n_users);
  for (int s = 0; s < config.n_users; ++s) {
    RandomStream stream(DeriveKey(config.seed, kErrorVarStream, s));
    variances[s] = stream.NextExponential(config.lambda1);
  }

  std::vector<Observation> entries;
  entries.reserve(static_cast<size_t>(config.n_objects) * config.n_users);
  for (int n = 0; n < config.n_objects; ++n) {
    for (int s = 0; s < config.n_users; ++s) {
      RandomStream stream(DeriveKey(config.seed, kErrorStream, s, n));
      entries.push_back(Observation{
          n, s, truths[n] + stream.NextGaussian(0.0, std::sqrt(variances[s]))});
    }
  }

  return SynthData{
      ObservationTable(config.n_objects, config.n_users, std::move(entries)),
      GroundTruth(std::move(truths)), std::move(variances)};
}

WeightVector TrueWeights(const ObservationTable& table,
                         const GroundTruth& truth, double distance_floor) {
  if (truth.size() != table.n_objects()) {
    throw std::invalid_argument(
        "TrueWeights: truth must cover every object");
  }
  return CrhWeights(table, truth.values(), distance_floor);
}

}  // namespace privtruth
