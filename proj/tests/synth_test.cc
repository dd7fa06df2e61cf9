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

#include "gtest/gtest.h"
#include "privtruth/core.hpp"
#include "test_util.hpp"

namespace privtruth {
namespace {

TEST(GenerateSyntheticData, DeterministicGivenSeed) {
  SynthConfig config;
  config.n_objects = 25;
  config.n_users = 40;
  config.seed = 99;
  const SynthData a = GenerateSyntheticData(config);
  const SynthData b = GenerateSyntheticData(config);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_EQ(a.error_variances, b.error_variances);

  config.seed = 100;
  const SynthData c = GenerateSyntheticData(config);
  EXPECT_NE(a.table, c.table);
}

TEST(GenerateSyntheticData, TableIsDense) {
  SynthConfig config;
  config.n_objects = 13;
  config.n_users = 7;
  config.seed = 5;
  const SynthData data = GenerateSyntheticData(config);
  EXPECT_EQ(data.table.entries().size(), 13u * 7u);
  EXPECT_EQ(data.truth.size(), 13);
  EXPECT_EQ(data.error_variances.size(), 7u);
}

TEST(GenerateSyntheticData, ErrorVariancesFollowExponentialMean) {
  SynthConfig config;
  config.n_objects = 1;
  config.n_users = 100000;
  config.lambda1 = 1.0;
  config.seed = 21;
  const SynthData data = GenerateSyntheticData(config);
  double mean = 0.0;
  for (double v : data.error_variances) mean += v;
  mean /= config.n_users;
  EXPECT_GT(mean, 0.99);
  EXPECT_LT(mean, 1.01);
}

TEST(GenerateSyntheticData, PerUserNoiseStdMatchesSampledVariance) {
  SynthConfig config;
  config.n_objects = 100000;
  config.n_users = 1;
  config.lambda1 = 1.0;
  config.seed = 22;
  const SynthData data = GenerateSyntheticData(config);
  const double sigma = std::sqrt(data.error_variances[0]);
  double var = 0.0;
  for (const Observation& e : data.table.entries()) {
    const double err = e.value - data.truth.values()[e.object];
    var += err * err;
  }
  const double sample_std = std::sqrt(var / (config.n_objects - 1));
  EXPECT_NEAR(sample_std, sigma, 0.02 * sigma);
}

TEST(GenerateSyntheticData, PerUserEmpiricalVarianceConverges) {
  SynthConfig config;
  config.n_objects = 10000;
  config.n_users = 5;
  config.lambda1 = 0.5;
  config.seed = 23;
  const SynthData data = GenerateSyntheticData(config);
  std::vector<double> sums(config.n_users, 0.0);
  for (const Observation& e : data.table.entries()) {
    const double err = e.value - data.truth.values()[e.object];
    sums[e.user] += err * err;
  }
  for (int s = 0; s < config.n_users; ++s) {
    const double empirical = sums[s] / config.n_objects;
    const double expected = data.error_variances[s];
    EXPECT_LT(std::abs(empirical - expected) / expected, 0.05);
  }
}

TEST(GenerateSyntheticData, TruthsStayInRange) {
  SynthConfig config;
  config.n_objects = 1000;
  config.n_users = 2;
  config.truth_low = -3.0;
  config.truth_high = 7.0;
  config.seed = 24;
  const SynthData data = GenerateSyntheticData(config);
  for (double t : data.truth.values()) {
    EXPECT_GT(t, -3.0);
    EXPECT_LT(t, 7.0);
  }
}

TEST(GenerateSyntheticData, RejectsInvalidConfig) {
  SynthConfig config;
  config.n_objects = 0;
  EXPECT_THROW(GenerateSyntheticData(config), std::invalid_argument);
  config = SynthConfig{};
  config.lambda1 = 0.0;
  EXPECT_THROW(GenerateSyntheticData(config), std::invalid_argument);
  config = SynthConfig{};
  config.truth_low = 1.0;
  config.truth_high = 0.0;
  EXPECT_THROW(GenerateSyntheticData(config), std::invalid_argument);
}

TEST(TrueWeights, ExactTruthUserGetsMaxWeight) {
  const GroundTruth truth({2.0, 3.0});
  const ObservationTable table =
      testing::DenseTable({{2.0, 2.5, 1.0}, {3.0, 3.5, 4.5}});
  const WeightVector weights = TrueWeights(table, truth, 1e-12);
  EXPECT_GT(weights.weights()[0], weights.weights()[1]);
  EXPECT_GT(weights.weights()[0], weights.weights()[2]);
}

TEST(TrueWeights, IdenticalUsersGetIdenticalWeights) {
  const GroundTruth truth({2.0, 3.0});
  const ObservationTable table =
      testing::DenseTable({{2.5, 2.5, 9.0}, {3.5, 3.5, 1.0}});
  const WeightVector weights = TrueWeights(table, truth, 1e-12);
  EXPECT_EQ(weights.weights()[0], weights.weights()[1]);
}

TEST(TrueWeights, MatchesClosedFormForTwoUsers) {
  // Squared-error totals 1 and 3 give weights -log(1/4) and -log(3/4).
  const GroundTruth truth({0.0});
  const ObservationTable table =
      testing::DenseTable({{1.0, std::sqrt(3.0)}});
  const WeightVector weights = TrueWeights(table, truth, 1e-12);
  EXPECT_NEAR(weights.weights()[0], 1.3863, 1e-4);
  EXPECT_NEAR(weights.weights()[1], 0.2877, 1e-4);
}

TEST(TrueWeights, RejectsTruthLengthMismatch) {
  const GroundTruth truth({1.0});
  const ObservationTable table = testing::DenseTable({{1.0, 2.0}, {3.0, 4.0}});
  EXPECT_THROW(TrueWeights(table, truth, 1e-12), std::invalid_argument);
}

}  // namespace
}  // namespace privtruth
