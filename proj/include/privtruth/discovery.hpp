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

#ifndef PRIVTRUTH_DISCOVERY_HPP_
#define PRIVTRUTH_DISCOVERY_HPP_

#include <vector>

#include "privtruth/core.hpp"

namespace privtruth {

enum class WeightUpdate {
  kCrh,      // negative-log share of total squared distance
  kUniform,  // fixed 1/S weights (plain mean)
};

struct DiscoveryConfig {
  int max_iterations = 100;
  // Convergence: mean absolute change of the aggregate vector between two
  // consecutive iterations falls below this.
  double convergence_threshold = 1e-6;
  // Floor applied to a user's total distance before the logarithm, so a
  // user matching the aggregate exactly keeps a finite (maximal) weight.
  double distance_floor = 1e-12;
  WeightUpdate weight_update = WeightUpdate::kCrh;
  // Scale each object's squared distances by that object's observation
  // variance. Off by default; useful when objects mix measurement scales.
  bool standardize = false;
};

// Per-object weighted mean x*_n = sum_s w_s x_n^s / sum_s w_s over the
// observers of n. Throws if any object's total observer weight is zero.
// Each output lies within [min, max] of that object's observed values.
std::vector<double> WeightedAggregate(const ObservationTable& table,
                                      const WeightVector& weights);

// CRH weight update: with t_s = max(sum_n (x_n^s - x*_n)^2, floor), returns
// w_s = -log(t_s / sum_{s'} t_{s'}). All weights are >= 0 and order-reversed
// against the distances. Requires at least two users; with a single user the
// lone ratio is 1 and the weight collapses to zero.
WeightVector CrhWeights(const ObservationTable& table,
                        std::span<const double> aggregate,
                        double distance_floor);

// Iterative truth discovery: initialize weights at 1/S, then alternate
// aggregation and weight estimation until the aggregate stabilizes or
// max_iterations is reached. Deterministic for a given table.
AggregateResult RunTruthDiscovery(const ObservationTable& table,
                                  const DiscoveryConfig& config);

enum class Baseline { kMean, kMedian };

// Unweighted per-object mean or median over observers. Median of an even
// observer count is the average of the two middle values.
std::vector<double> BaselineAggregate(const ObservationTable& table,
                                      Baseline kind);

}  // namespace privtruth

#endif  // PRIVTRUTH_DISCOVERY_HPP_
