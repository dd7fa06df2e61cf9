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

#include "privtruth/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "privtruth/csv.hpp"
#include "privtruth/perturb.hpp"
#include "privtruth/random.hpp"

namespace privtruth {

namespace {

using nlohmann::json;

// Perturbation inside a trial draws from a stream disjoint from the
// generator's streams for the same seed.
constexpr uint64_t kTrialPerturbStream = 0x50455254ULL;  // "PERT"

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double Stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = Mean(values);
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

// Runs jobs [0, count) across `workers` threads; each job writes only its
// own slot, so results are identical regardless of scheduling.
void RunJobs(int count, int workers,
             const std::function<void(int)>& job) {
  workers = std::clamp(workers, 1, count == 0 ? 1 : count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        job(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

struct PointSetup {
  SynthConfig synth;
  double c = 0.0;
  double epsilon = 0.0;
};

PointSetup SetupPoint(const SweepSpec& spec, double value) {
  PointSetup point;
  point.synth = spec.synth;
  switch (spec.variable) {
    case SweepVariable::kNoiseLevelC:
      point.c = value;
      break;
    case SweepVariable::kLambda1:
      point.synth.lambda1 = value;
      point.c = spec.epsilon_target.has_value()
                    ? PrivacyNoiseFloor(
                          value, PrivacyTarget(*spec.epsilon_target,
                                               spec.delta),
                          spec.sens)
                    : spec.c;
      break;
    case SweepVariable::kNUsers: {
      const double rounded = std::round(value);
      if (rounded != value || rounded < 1) {
        throw std::invalid_argument(
            "sweep: n_users values must be positive integers");
      }
      point.synth.n_users = static_cast<int>(rounded);
      point.c = spec.c;
      break;
    }
  }
  point.epsilon =
      point.c > 0
          ? EpsilonForNoiseLevel(point.synth.lambda1, point.c, spec.delta,
                                 spec.sens)
          : std::numeric_limits<double>::infinity();
  return point;
}

void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.values.empty()) {
    throw std::invalid_argument("sweep: values must be non-empty");
  }
  for (size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      throw std::invalid_argument(
          "sweep: values must be strictly increasing");
    }
  }
  if (spec.trials < 1) {
    throw std::invalid_argument("sweep: trials must be >= 1");
  }
}

json SynthConfigJson(const SynthConfig& synth) {
  return json{{"objects", synth.n_objects},   {"users", synth.n_users},
              {"lambda1", synth.lambda1},     {"truth_low", synth.truth_low},
              {"truth_high", synth.truth_high}, {"seed", synth.seed}};
}

json DiscoveryConfigJson(const DiscoveryConfig& config) {
  return json{{"max_iterations", config.max_iterations},
              {"convergence_threshold", config.convergence_threshold},
              {"distance_floor", config.distance_floor},
              {"weight_update",
               config.weight_update == WeightUpdate::kCrh ? "crh" : "uniform"},
              {"standardize", config.standardize}};
}

const json& RequireKey(const json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw std::runtime_error("spec: missing required key '" + key + "'");
  }
  return j.at(key);
}

SynthConfig ParseSynthConfig(const json& j) {
  SynthConfig synth;
  synth.n_objects = RequireKey(j, "objects").get<int>();
  synth.n_users = RequireKey(j, "users").get<int>();
  synth.lambda1 = RequireKey(j, "lambda1").get<double>();
  synth.truth_low = j.value("truth_low", 0.0);
  synth.truth_high = j.value("truth_high", 10.0);
  return synth;
}

DiscoveryConfig ParseDiscoveryConfig(const json& j) {
  DiscoveryConfig config;
  if (j.is_null()) return config;
  config.max_iterations = j.value("max_iterations", 100);
  config.convergence_threshold = j.value("convergence_threshold", 1e-6);
  config.distance_floor = j.value("distance_floor", 1e-12);
  config.standardize = j.value("standardize", false);
  const std::string update = j.value("weight_update", std::string("crh"));
  if (update == "crh") {
    config.weight_update = WeightUpdate::kCrh;
  } else if (update == "uniform") {
    config.weight_update = WeightUpdate::kUniform;
  } else {
    throw std::runtime_error("spec: unknown weight_update '" + update + "'");
  }
  return config;
}

json ParseJsonText(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw std::runtime_error("spec: invalid JSON");
  }
  return j;
}

}  // namespace

TrialResult RunTrial(const SynthConfig& synth, double c,
                     const DiscoveryConfig& discovery, uint64_t seed,
                     bool measure_time) {
  if (!(c >= 0) || !std::isfinite(c)) {
    throw std::invalid_argument("RunTrial: noise level c must be >= 0");
  }
  SynthConfig config = synth;
  config.seed = seed;
  const SynthData data = GenerateSyntheticData(config);

  const AggregateResult original = RunTruthDiscovery(data.table, discovery);

  TrialResult result;
  result.iters_orig = original.iterations;

  ObservationTable perturbed = data.table;
  if (c > 0) {
    const double lambda2 = config.lambda1 / c;
    NoiseProfile profile = SampleNoiseVariances(
        lambda2, config.n_users, DeriveKey(seed, kTrialPerturbStream));
    perturbed = PerturbTable(data.table, profile);

    double total_noise = 0.0;
    for (size_t i = 0; i < perturbed.entries().size(); ++i) {
      total_noise += std::abs(perturbed.entries()[i].value -
                              data.table.entries()[i].value);
    }
    result.mean_abs_noise =
        total_noise / static_cast<double>(perturbed.entries().size());
  }

  const auto start = std::chrono::steady_clock::now();
  const AggregateResult after = RunTruthDiscovery(perturbed, discovery);
  if (measure_time) result.wall_ms = ElapsedMs(start);

  result.iters_pert = after.iterations;
  result.mae_utility = MeanAbsoluteError(original.values, after.values);
  return result;
}

std::string SweepVariableName(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::kNoiseLevelC:
      return "noise_level_c";
    case SweepVariable::kLambda1:
      return "lambda1";
    case SweepVariable::kNUsers:
      return "n_users";
  }
  return "unknown";
}

SweepReport RunSweep(const SweepSpec& spec) {
  ValidateSweepSpec(spec);
  const int n_points = static_cast<int>(spec.values.size());
  const int n_jobs = n_points * spec.trials;

  SweepReport report;
  report.spec = spec;
  report.rows.resize(n_jobs);

  std::vector<PointSetup> setups(n_points);
  for (int p = 0; p < n_points; ++p) {
    setups[p] = SetupPoint(spec, spec.values[p]);
  }

  RunJobs(n_jobs, spec.workers, [&](int i) {
    const int p = i / spec.trials;
    const int trial = i % spec.trials;
    SweepRow& row = report.rows[i];
    row.value = spec.values[p];
    row.trial = trial;
    row.seed = DeriveKey(spec.synth.seed, p, trial);
    row.epsilon = setups[p].epsilon;
    try {
      row.result = RunTrial(setups[p].synth, setups[p].c, spec.discovery,
                            row.seed, spec.measure_time);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  report.points.resize(n_points);
  for (int p = 0; p < n_points; ++p) {
    SweepPoint& point = report.points[p];
    point.value = spec.values[p];
    point.c = setups[p].c;
    point.epsilon = setups[p].epsilon;
    std::vector<double> maes, noises, iters_orig, iters_pert, walls;
    for (int t = 0; t < spec.trials; ++t) {
      const SweepRow& row = report.rows[p * spec.trials + t];
      if (row.failed) {
        ++point.failed_trials;
        continue;
      }
      maes.push_back(row.result.mae_utility);
      noises.push_back(row.result.mean_abs_noise);
      iters_orig.push_back(row.result.iters_orig);
      iters_pert.push_back(row.result.iters_pert);
      walls.push_back(row.result.wall_ms);
    }
    point.mae_mean = Mean(maes);
    point.mae_median = maes.empty() ? 0.0 : Median(maes);
    point.mae_stddev = Stddev(maes);
    point.noise_mean = Mean(noises);
    point.iters_orig_median = iters_orig.empty() ? 0.0 : Median(iters_orig);
    point.iters_pert_median = iters_pert.empty() ? 0.0 : Median(iters_pert);
    point.wall_ms_median = walls.empty() ? 0.0 : Median(walls);
  }
  return report;
}

void WriteSweepRawCsv(const SweepReport& report, const std::string& path) {
  std::string out =
      "variable,value,trial,seed,mae,mean_abs_noise,epsilon,iters_orig,"
      "iters_pert,wall_ms\n";
  const std::string variable = SweepVariableName(report.spec.variable);
  for (const SweepRow& row : report.rows) {
    if (row.failed) continue;
    out += variable;
    out += ',';
    out += FormatDouble(row.value);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += FormatDouble(row.result.mae_utility);
    out += ',';
    out += FormatDouble(row.result.mean_abs_noise);
    out += ',';
    out += FormatDouble(row.epsilon);
    out += ',';
    out += std::to_string(row.result.iters_orig);
    out += ',';
    out += std::to_string(row.result.iters_pert);
    out += ',';
    out += FormatDouble(row.result.wall_ms);
    out += '\n';
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error(path + ": cannot open for writing");
  file << out;
  if (!file) throw std::runtime_error(path + ": write failed");
}

std::string SweepSummaryJson(const SweepReport& report) {
  json spec_json{
      {"variable", SweepVariableName(report.spec.variable)},
      {"values", report.spec.values},
      {"trials", report.spec.trials},
      {"synth", SynthConfigJson(report.spec.synth)},
      {"discovery", DiscoveryConfigJson(report.spec.discovery)},
      {"c", report.spec.c},
      {"delta", report.spec.delta},
      {"b", report.spec.sens.b},
      {"eta", report.spec.sens.eta},
      {"timing", report.spec.measure_time},
  };
  spec_json["epsilon_target"] = report.spec.epsilon_target.has_value()
                                    ? json(*report.spec.epsilon_target)
                                    : json(nullptr);

  json points = json::array();
  for (const SweepPoint& point : report.points) {
    points.push_back(json{{"value", point.value},
                          {"c", point.c},
                          {"epsilon", point.epsilon},
                          {"mae_mean", point.mae_mean},
                          {"mae_median", point.mae_median},
                          {"mae_stddev", point.mae_stddev},
                          {"noise_mean", point.noise_mean},
                          {"iters_orig_median", point.iters_orig_median},
                          {"iters_pert_median", point.iters_pert_median},
                          {"wall_ms_median", point.wall_ms_median},
                          {"failed_trials", point.failed_trials}});
  }
  return json{{"spec", spec_json}, {"points", points}}.dump(2) + "\n";
}

SweepSpec ParseSweepSpecJson(const std::string& text) {
  const json j = ParseJsonText(text);
  SweepSpec spec;
  const std::string variable = RequireKey(j, "variable").get<std::string>();
  if (variable == "noise_level_c") {
    spec.variable = SweepVariable::kNoiseLevelC;
  } else if (variable == "lambda1") {
    spec.variable = SweepVariable::kLambda1;
  } else if (variable == "n_users") {
    spec.variable = SweepVariable::kNUsers;
  } else {
    throw std::runtime_error("spec: unknown variable '" + variable + "'");
  }
  spec.values = RequireKey(j, "values").get<std::vector<double>>();
  spec.trials = j.value("trials", 20);
  spec.synth = ParseSynthConfig(RequireKey(j, "synth"));
  spec.synth.seed = RequireKey(j, "seed").get<uint64_t>();
  spec.discovery =
      ParseDiscoveryConfig(j.contains("discovery") ? j.at("discovery")
                                                   : json(nullptr));
  spec.c = j.value("c", 1.0);
  if (j.contains("epsilon_target") && !j.at("epsilon_target").is_null()) {
    spec.epsilon_target = j.at("epsilon_target").get<double>();
  }
  spec.delta = j.value("delta", 0.05);
  spec.sens = SensitivityParams(j.value("b", 2.0), j.value("eta", 0.99));
  ValidateSweepSpec(spec);
  return spec;
}

WeightComparisonReport RunWeightComparison(const WeightComparisonSpec& spec) {
  if (spec.boost_factor < 1.0) {
    throw std::invalid_argument(
        "weight comparison: boost_factor must be >= 1");
  }
  if (spec.boosted_user < 0 || spec.boosted_user >= spec.synth.n_users) {
    throw std::invalid_argument(
        "weight comparison: boosted_user out of range");
  }
  if (!(spec.c > 0) || !std::isfinite(spec.c)) {
    throw std::invalid_argument("weight comparison: c must be > 0");
  }
  if (spec.trials < 1) {
    throw std::invalid_argument("weight comparison: trials must be >= 1");
  }

  WeightComparisonReport report;
  report.spec = spec;
  report.trials.resize(spec.trials);

  RunJobs(spec.trials, spec.workers, [&](int t) {
    WeightComparisonTrial& trial = report.trials[t];
    trial.seed = DeriveKey(spec.synth.seed, 0, t);

    SynthConfig config = spec.synth;
    config.seed = trial.seed;
    const SynthData data = GenerateSyntheticData(config);
    trial.sigma2 = data.error_variances;

    const double lambda2 = config.lambda1 / spec.c;
    NoiseProfile profile = SampleNoiseVariances(
        lambda2, config.n_users, DeriveKey(trial.seed, kTrialPerturbStream));
    profile.per_user_variance[spec.boosted_user] *= spec.boost_factor;
    trial.noise_variance = profile.per_user_variance;

    const ObservationTable perturbed = PerturbTable(data.table, profile);

    trial.true_weight =
        TrueWeights(data.table, data.truth, spec.discovery.distance_floor)
            .weights();
    trial.weight_original =
        RunTruthDiscovery(data.table, spec.discovery).weights.weights();
    trial.weight_perturbed =
        RunTruthDiscovery(perturbed, spec.discovery).weights.weights();
    trial.rank_correlation =
        SpearmanRankCorrelation(trial.true_weight, trial.weight_original);
  });

  std::vector<double> correlations;
  for (const WeightComparisonTrial& trial : report.trials) {
    correlations.push_back(trial.rank_correlation);
    if (trial.weight_perturbed[spec.boosted_user] <
        trial.weight_original[spec.boosted_user]) {
      ++report.boosted_drop_count;
    }
  }
  report.median_rank_correlation = Median(std::move(correlations));
  return report;
}

void WriteWeightComparisonRawCsv(const WeightComparisonReport& report,
                                 const std::string& path) {
  std::string out =
      "trial,seed,user,sigma2,noise_variance,true_weight,weight_original,"
      "weight_perturbed\n";
  for (size_t t = 0; t < report.trials.size(); ++t) {
    const WeightComparisonTrial& trial = report.trials[t];
    for (size_t s = 0; s < trial.sigma2.size(); ++s) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(trial.seed);
      out += ',';
      out += std::to_string(s);
      out += ',';
      out += FormatDouble(trial.sigma2[s]);
      out += ',';
      out += FormatDouble(trial.noise_variance[s]);
      out += ',';
      out += FormatDouble(trial.true_weight[s]);
      out += ',';
      out += FormatDouble(trial.weight_original[s]);
      out += ',';
      out += FormatDouble(trial.weight_perturbed[s]);
      out += '\n';
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error(path + ": cannot open for writing");
  file << out;
  if (!file) throw std::runtime_error(path + ": write failed");
}

std::string WeightComparisonSummaryJson(
    const WeightComparisonReport& report) {
  json trials = json::array();
  for (const WeightComparisonTrial& trial : report.trials) {
    const int boosted = report.spec.boosted_user;
    trials.push_back(json{
        {"seed", trial.seed},
        {"rank_correlation", trial.rank_correlation},
        {"boosted_weight_original", trial.weight_original[boosted]},
        {"boosted_weight_perturbed", trial.weight_perturbed[boosted]},
        {"boosted_dropped", trial.weight_perturbed[boosted] <
                                trial.weight_original[boosted]},
    });
  }
  return json{
      {"spec",
       json{{"synth", SynthConfigJson(report.spec.synth)},
            {"discovery", DiscoveryConfigJson(report.spec.discovery)},
            {"c", report.spec.c},
            {"boosted_user", report.spec.boosted_user},
            {"boost_factor", report.spec.boost_factor},
            {"trials", report.spec.trials}}},
      {"trials", trials},
      {"median_rank_correlation", report.median_rank_correlation},
      {"boosted_drop_count", report.boosted_drop_count}}
             .dump(2) +
         "\n";
}

WeightComparisonSpec ParseWeightComparisonSpecJson(const std::string& text) {
  const json j = ParseJsonText(text);
  WeightComparisonSpec spec;
  spec.synth = ParseSynthConfig(RequireKey(j, "synth"));
  spec.synth.seed = RequireKey(j, "seed").get<uint64_t>();
  spec.discovery =
      ParseDiscoveryConfig(j.contains("discovery") ? j.at("discovery")
                                                   : json(nullptr));
  spec.c = j.value("c", 1.0);
  spec.boosted_user = RequireKey(j, "boosted_user").get<int>();
  spec.boost_factor = RequireKey(j, "boost_factor").get<double>();
  spec.trials = j.value("trials", 1);
  return spec;
}

SweepReport RunEfficiencyBench(const SynthConfig& synth,
                               const DiscoveryConfig& discovery,
                               const std::vector<double>& c_values,
                               int trials, int workers, bool measure_time) {
  SweepSpec spec;
  spec.variable = SweepVariable::kNoiseLevelC;
  spec.values = c_values;
  spec.trials = trials;
  spec.synth = synth;
  spec.discovery = discovery;
  spec.workers = workers;
  spec.measure_time = measure_time;
  return RunSweep(spec);
}

SweepSpec ParseBenchSpecJson(const std::string& text) {
  const json j = ParseJsonText(text);
  SweepSpec spec;
  spec.variable = SweepVariable::kNoiseLevelC;
  spec.values = RequireKey(j, "c_values").get<std::vector<double>>();
  spec.trials = j.value("trials", 20);
  spec.synth = ParseSynthConfig(RequireKey(j, "synth"));
  spec.synth.seed = RequireKey(j, "seed").get<uint64_t>();
  spec.discovery =
      ParseDiscoveryConfig(j.contains("discovery") ? j.at("discovery")
                                                   : json(nullptr));
  ValidateSweepSpec(spec);
  return spec;
}

double Median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("Median: empty input");
  }
  std::sort(values.begin(), values.end());
  const size_t m = values.size();
  return (m % 2 == 1) ? values[m / 2]
                      : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

double SpearmanRankCorrelation(const std::vector<double>& a,
                               const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument(
        "SpearmanRankCorrelation: need two equal-length vectors of size >= "
        "2");
  }
  const auto ranks = [](const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> rank(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double average = 0.5 * static_cast<double>(i + j) + 1.0;
      for (size_t k = i; k <= j; ++k) rank[order[k]] = average;
      i = j + 1;
    }
    return rank;
  };

  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double mean_a = Mean(ra);
  const double mean_b = Mean(rb);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean_a;
    const double db = rb[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0 || var_b == 0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace privtruth
