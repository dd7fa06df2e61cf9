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

#ifndef PRIVTRUTH_HARNESS_HPP_
#define PRIVTRUTH_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privtruth/bounds.hpp"
#include "privtruth/discovery.hpp"
#include "privtruth/synth.hpp"

// Deterministic batch jobs reproducing the utility-privacy experiments:
// noise-level / lambda1 / user-count sweeps, the weight-comparison study,
// and the efficiency benchmark. Every job is reproducible bit for bit from
// its spec and master seed; trial seeds are derived as
// DeriveKey(master_seed, point_index, trial_index) so adding points never
// perturbs existing ones. Wall-clock measurement is opt-in: with timing
// disabled (the default) all report fields are deterministic.

namespace privtruth {

// One end-to-end pipeline run: generate data, discover on the original
// table, perturb at noise level c (lambda2 = lambda1 / c; c == 0 skips
// perturbation), re-discover, compare the aggregates.
struct TrialResult {
  double mae_utility = 0.0;     // MAE(original aggregate, perturbed aggregate)
  double mean_abs_noise = 0.0;  // empirical mean |noise| over all entries
  int iters_orig = 0;
  int iters_pert = 0;
  double wall_ms = 0.0;  // perturbed-data discovery time; 0 unless measured
};

TrialResult RunTrial(const SynthConfig& synth, double c,
                     const DiscoveryConfig& discovery, uint64_t seed,
                     bool measure_time = false);

enum class SweepVariable { kNoiseLevelC, kLambda1, kNUsers };

std::string SweepVariableName(SweepVariable variable);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kNoiseLevelC;
  std::vector<double> values;  // non-empty, strictly increasing
  int trials = 20;
  SynthConfig synth;          // base config; seed acts as the master seed
  DiscoveryConfig discovery;
  // Noise level for sweeps where c is not the swept variable. For lambda1
  // sweeps with epsilon_target set, c is derived per point from the privacy
  // floor instead.
  double c = 1.0;
  std::optional<double> epsilon_target;
  double delta = 0.05;
  SensitivityParams sens;
  int workers = 1;
  bool measure_time = false;
};

struct SweepRow {
  double value = 0.0;
  int trial = 0;
  uint64_t seed = 0;
  double epsilon = 0.0;  // +inf at c == 0 (no perturbation)
  TrialResult result;
  bool failed = false;
  std::string error;
};

struct SweepPoint {
  double value = 0.0;
  double c = 0.0;
  double epsilon = 0.0;
  double mae_mean = 0.0;
  double mae_median = 0.0;
  double mae_stddev = 0.0;
  double noise_mean = 0.0;
  double iters_orig_median = 0.0;
  double iters_pert_median = 0.0;
  double wall_ms_median = 0.0;
  int failed_trials = 0;
};

struct SweepReport {
  SweepSpec spec;
  std::vector<SweepRow> rows;     // |values| x trials, ordered (point, trial)
  std::vector<SweepPoint> points;
};

SweepReport RunSweep(const SweepSpec& spec);

// Raw rows: header
// variable,value,trial,seed,mae,mean_abs_noise,epsilon,iters_orig,iters_pert,wall_ms
// (failed trials are summarized in the JSON, not written as rows).
void WriteSweepRawCsv(const SweepReport& report, const std::string& path);
std::string SweepSummaryJson(const SweepReport& report);
SweepSpec ParseSweepSpecJson(const std::string& text);

// Weight-comparison study: run the pipeline with one user's sampled noise
// variance multiplied by boost_factor, and report per user the true weight
// (CRH against ground truth), the weight estimated on original data, and
// the weight estimated on perturbed data.
struct WeightComparisonSpec {
  SynthConfig synth;
  DiscoveryConfig discovery;
  double c = 1.0;
  int boosted_user = 0;
  double boost_factor = 1.0;  // >= 1
  int trials = 1;
  int workers = 1;
};

struct WeightComparisonTrial {
  uint64_t seed = 0;
  std::vector<double> sigma2;            // per-user error variance
  std::vector<double> noise_variance;    // per-user delta^2 after boost
  std::vector<double> true_weight;
  std::vector<double> weight_original;
  std::vector<double> weight_perturbed;
  double rank_correlation = 0.0;  // true vs original-data weights (Spearman)
};

struct WeightComparisonReport {
  WeightComparisonSpec spec;
  std::vector<WeightComparisonTrial> trials;
  double median_rank_correlation = 0.0;
  // Trials where the boosted user's perturbed-data weight fell below the
  // original-data weight.
  int boosted_drop_count = 0;
};

WeightComparisonReport RunWeightComparison(const WeightComparisonSpec& spec);

// Raw rows: header
// trial,seed,user,sigma2,noise_variance,true_weight,weight_original,weight_perturbed
void WriteWeightComparisonRawCsv(const WeightComparisonReport& report,
                                 const std::string& path);
std::string WeightComparisonSummaryJson(const WeightComparisonReport& report);
WeightComparisonSpec ParseWeightComparisonSpecJson(const std::string& text);

// Efficiency benchmark: a noise-level sweep whose focus is iteration counts
// and (optionally) discovery wall time per noise level.
SweepReport RunEfficiencyBench(const SynthConfig& synth,
                               const DiscoveryConfig& discovery,
                               const std::vector<double>& c_values, int trials,
                               int workers = 1, bool measure_time = false);
SweepSpec ParseBenchSpecJson(const std::string& text);

double Median(std::vector<double> values);

// Spearman rank correlation with average ranks on ties.
double SpearmanRankCorrelation(const std::vector<double>& a,
                               const std::vector<double>& b);

}  // namespace privtruth

#endif  // PRIVTRUTH_HARNESS_HPP_
