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

#include "privtruth/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace privtruth {

namespace {

// Population variance of each object's observed values, floored at 1 for
// near-constant objects so standardized distances stay well-defined.
std::vector<double> ObjectVariances(const ObservationTable& table) {
  std::vector<double> variances(table.n_objects(), 1.0);
  for (int n = 0; n < table.n_objects(); ++n) {
    const auto entries = table.object_entries(n);
    double mean = 0.0;
    for (const Observation& e : entries) mean += e.value;
    mean /= static_cast<double>(entries.size());
    double var = 0.0;
    for (const Observation& e : entries) {
      var += (e.value - mean) * (e.value - mean);
    }
    var /= static_cast<double>(entries.size());
    if (var > 1e-24) variances[n] = var;
  }
  return variances;
}

WeightVector CrhWeightsImpl(const ObservationTable& table,
                            std::span<const double> aggregate,
                            double distance_floor,
                            const std::vector<double>* object_variances) {
  if (aggregate.size() != static_cast<size_t>(table.n_objects())) {
    throw std::invalid_argument(
        "CrhWeights: aggregate must have one value per object");
  }
  if (table.n_users() < 2) {
    throw std::invalid_argument(
        "CrhWeights: at least two users required; a single user's weight is "
        "degenerate");
  }
  if (!(distance_floor > 0)) {
    throw std::invalid_argument("CrhWeights: distance floor must be > 0");
  }

  std::vector<double> distances(table.n_users(), 0.0);
  for (const Observation& e : table.entries()) {
    const double residual = e.value - aggregate[e.object];
    double d = residual * residual;
    if (object_variances != nullptr) d /= (*object_variances)[e.object];
    distances[e.user] += d;
  }
  double total = 0.0;
  for (double& t : distances) {
    t = std::max(t, distance_floor);
    total += t;
  }
  if (!(total > 0) || !std::isfinite(total)) {
    throw std::invalid_argument("CrhWeights: invalid total distance");
  }

  std::vector<double> weights(table.n_users());
  for (int s = 0; s < table.n_users(); ++s) {
    weights[s] = -std::log(distances[s] / total);
  }
  return WeightVector(std::move(weights));
}

}  // namespace

std::vector<double> WeightedAggregate(const ObservationTable& table,
                                      const WeightVector& weights) {
  if (weights.size() != table.n_users()) {
    throw std::invalid_argument("WeightedAggregate: weight count " +
                                std::to_string(weights.size()) +
                                " does not match user count " +
                                std::to_string(table.n_users()));
  }
  const std::vector<double>& w = weights.weights();
  std::vector<double> result(table.n_objects());
  for (int n = 0; n < table.n_objects(); ++n) {
    const auto entries = table.object_entries(n);
    double weighted_sum = 0.0;
    double weight_sum = 0.0;
    double lo = entries.front().value;
    double hi = entries.front().value;
    for (const Observation& e : entries) {
      weighted_sum += w[e.user] * e.value;
      weight_sum += w[e.user];
      lo = std::min(lo, e.value);
      hi = std::max(hi, e.value);
    }
    if (!(weight_sum > 0)) {
      throw std::invalid_argument("WeightedAggregate: object " +
                                  std::to_string(n) +
                                  " has zero total observer weight");
    }
    // Clamp away rounding spill so the weighted mean stays inside the
    // observed range exactly.
    result[n] = std::clamp(weighted_sum / weight_sum, lo, hi);
  }
  return result;
}

WeightVector CrhWeights(const ObservationTable& table,
                        std::span<const double> aggregate,
                        double distance_floor) {
  return CrhWeightsImpl(table, aggregate, distance_floor, nullptr);
}

AggregateResult RunTruthDiscovery(const ObservationTable& table,
                                  const DiscoveryConfig& config) {
  if (config.max_iterations < 1) {
    throw std::invalid_argument(
        "RunTruthDiscovery: max_iterations must be >= 1");
  }
  if (!(config.convergence_threshold > 0) || !(config.distance_floor > 0)) {
    throw std::invalid_argument(
        "RunTruthDiscovery: thresholds must be > 0");
  }

  std::vector<double> variances;
  if (config.standardize && config.weight_update == WeightUpdate::kCrh) {
    variances = ObjectVariances(table);
  }

  WeightVector weights(std::vector<double>(
      table.n_users(), 1.0 / static_cast<double>(table.n_users())));
  std::vector<double> aggregate = WeightedAggregate(table, weights);
  int iterations = 1;
  bool converged = false;

  while (iterations < config.max_iterations) {
    if (config.weight_update == WeightUpdate::kCrh) {
      weights = CrhWeightsImpl(table, aggregate, config.distance_floor,
                               variances.empty() ? nullptr : &variances);
    }
    std::vector<double> next = WeightedAggregate(table, weights);
    ++iterations;
    const double change = MeanAbsoluteError(aggregate, next);
    aggregate = std::move(next);
    if (change < config.convergence_threshold) {
      converged = true;
      break;
    }
  }

  return AggregateResult{std::move(aggregate), std::move(weights), iterations,
                         converged};
}

std::vector<double> BaselineAggregate(const ObservationTable& table,
                                      Baseline kind) {
  std::vector<double> result(table.n_objects());
  std::vector<double> scratch;
  for (int n = 0; n < table.n_objects(); ++n) {
    const auto entries = table.object_entries(n);
    if (kind == Baseline::kMean) {
      double sum = 0.0;
      for (const Observation& e : entries) sum += e.value;
      result[n] = sum / static_cast<double>(entries.size());
    } else {
      scratch.clear();
      for (const Observation& e : entries) scratch.push_back(e.value);
      std::sort(scratch.begin(), scratch.end());
      const size_t m = scratch.size();
      result[n] = (m % 2 == 1)
                      ? scratch[m / 2]
                      : 0.5 * (scratch[m / 2 - 1] + scratch[m / 2]);
    }
  }
  return result;
}

}  // namespace privtruth
