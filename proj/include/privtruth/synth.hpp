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

#ifndef PRIVTRUTH_SYNTH_HPP_
#define PRIVTRUTH_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "privtruth/core.hpp"

namespace privtruth {

// Synthetic crowd: per-object ground truths drawn uniformly from
// [truth_low, truth_high], per-user error variances sigma_s^2 ~
// Exponential(lambda1), and dense observations x_n^s = truth_n +
// N(0, sigma_s^2).
struct SynthConfig {
  int n_objects = 30;
  int n_users = 150;
  double lambda1 = 1.0;
  double truth_low = 0.0;
  double truth_high = 10.0;
  uint64_t seed = 0;
};

struct SynthData {
  ObservationTable table;
  GroundTruth truth;
  std::vector<double> error_variances;
};

// Deterministic for a given config: truths, variances and entry errors each
// come from substreams keyed by (seed, role, index).
SynthData GenerateSyntheticData(const SynthConfig& config);

// Reference weights computed by the CRH update with the ground truth
// substituted for the aggregate.
WeightVector TrueWeights(const ObservationTable& table,
                         const GroundTruth& truth, double distance_floor);

}  // namespace privtruth

#endif  // PRIVTRUTH_SYNTH_HPP_
