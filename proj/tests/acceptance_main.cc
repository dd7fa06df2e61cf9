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

// Acceptance suite: one pass/fail line per criterion, non-zero exit if any
// criterion fails or overruns its time budget. Each criterion pins its
// thresholds in code; nothing is calibrated at run time.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "privtruth/bounds.hpp"
#include "privtruth/csv.hpp"
#include "privtruth/discovery.hpp"
#include "privtruth/harness.hpp"
#include "privtruth/perturb.hpp"
#include "privtruth/random.hpp"
#include "privtruth/synth.hpp"

namespace {

using namespace privtruth;
namespace fs = std::filesystem;

struct Check {
  bool ok = true;
  std::string detail;
};

#define REQUIRE(cond, message)                                   \
  do {                                                           \
    if (!(cond)) {                                               \
      std::ostringstream oss_;                                   \
      oss_ << message;                                           \
      return Check{false, oss_.str()};                           \
    }                                                            \
  } while (0)

SynthConfig Synth(int objects, int users, double lambda1) {
  SynthConfig config;
  config.n_objects = objects;
  config.n_users = users;
  config.lambda1 = lambda1;
  return config;
}

// Criterion 1: with lambda1=1, S=150, N=30 and the noise level tuned so the
// empirical mean |noise| is about 1 (c=2 makes E|noise| exactly 1), the
// median utility loss over 20 seeds stays at or below 0.15.
Check NoiseSuppressionHeadline() {
  const double c = 2.0;
  std::vector<double> maes, noises;
  for (int trial = 0; trial < 20; ++trial) {
    const TrialResult result = RunTrial(Synth(30, 150, 1.0), c,
                                        DiscoveryConfig{},
                                        DeriveKey(1001, 0, trial));
    maes.push_back(result.mae_utility);
    noises.push_back(result.mean_abs_noise);
  }
  const double mean_noise =
      std::accumulate(noises.begin(), noises.end(), 0.0) / noises.size();
  const double median_mae = Median(maes);
  REQUIRE(mean_noise >= 0.9 && mean_noise <= 1.1,
          "mean |noise| " << mean_noise << " outside [0.9, 1.1] at c=" << c);
  REQUIRE(median_mae <= 0.15,
          "median MAE " << median_mae << " exceeds 0.15");
  std::ostringstream detail;
  detail << "median MAE " << median_mae << " with mean |noise| "
         << mean_noise;
  return Check{true, detail.str()};
}

// Criterion 2: the weighted-mean lemma holds on 1000 fuzzed instances for
// three monotone-decreasing weight families.
Check LemmaSuite() {
  RandomStream rng(2002);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const int size = 2 + static_cast<int>(rng.NextUniform(0, 30));
    std::vector<double> t(size);
    for (double& x : t) x = rng.NextUniform(1e-3, 100.0);

    const int family = i % 3;
    bool holds = false;
    if (family == 0) {
      holds = WeightedMeanLemmaHolds(t, [](double x) { return 1.0 / x; });
    } else if (family == 1) {
      const double k = rng.NextUniform(0.001, 1.0);
      holds = WeightedMeanLemmaHolds(
          t, [k](double x) { return std::exp(-k * x); });
    } else {
      double max_t = 0.0;
      for (double x : t) max_t = std::max(max_t, x);
      const double offset = max_t + rng.NextUniform(0.1, 10.0);
      holds = WeightedMeanLemmaHolds(
          t, [offset](double x) { return offset - x; });
    }
    REQUIRE(holds, "lemma failed on instance " << i);
    ++checked;
  }
  return Check{true, std::to_string(checked) + " fuzzed instances held"};
}

// Criterion 3: at the privacy floor, the exponential tail identity is exact
// and Monte-Carlo coverage reaches 1 - delta.
Check PrivacyFloorExactness() {
  const double lambda1 = 1.0;
  const double epsilon = 1.0;
  const double delta = 1.0 - std::exp(-0.5);
  const SensitivityParams sens(1.0, delta);  // Gamma() == 1
  const double c =
      PrivacyNoiseFloor(lambda1, PrivacyTarget(epsilon, delta), sens);
  const double lambda2 = lambda1 / c;
  const double sensitivity = sens.Gamma() / lambda1;

  const double identity =
      std::exp(-lambda2 * sensitivity * sensitivity / (2.0 * epsilon));
  REQUIRE(std::abs(identity - (1.0 - delta)) <= 1e-9,
          "analytic identity off by " << std::abs(identity - (1.0 - delta)));

  const int n = 100000;
  RandomStream rng(3003);
  int covered = 0;
  for (int i = 0; i < n; ++i) {
    if (LdpRatioHolds(0.0, sensitivity, rng.NextExponential(lambda2),
                      epsilon)) {
      ++covered;
    }
  }
  const double coverage = static_cast<double>(covered) / n;
  REQUIRE(coverage >= 1.0 - delta - 0.01,
          "Monte-Carlo coverage " << coverage << " below "
                                  << 1.0 - delta - 0.01);
  std::ostringstream detail;
  detail << "identity gap " << std::abs(identity - (1.0 - delta))
         << ", coverage " << coverage << " (target " << 1.0 - delta << ")";
  return Check{true, detail.str()};
}

// Criterion 4: empirical utility check of the (alpha, beta) guarantee at
// c = min(1, cap/2) with alpha=2, beta=0.2, S=50, N=100.
Check UtilityGuaranteeEmpirical() {
  const double lambda1 = 1.0;
  const double alpha = 2.0;
  const double beta = 0.2;
  const int users = 50;
  const double cap = UtilityNoiseCap(lambda1, UtilityTarget(alpha, beta),
                                     users);
  const double c = std::min(1.0, cap / 2.0);
  int exceeded = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const TrialResult result = RunTrial(Synth(100, users, lambda1), c,
                                        DiscoveryConfig{},
                                        DeriveKey(4004, 0, trial));
    if (result.mae_utility >= alpha) ++exceeded;
  }
  const double fraction = static_cast<double>(exceeded) / trials;
  REQUIRE(fraction <= beta,
          "empirical failure fraction " << fraction << " exceeds beta "
                                        << beta);
  std::ostringstream detail;
  detail << "failure fraction " << fraction << " <= beta " << beta
         << " at c=" << c;
  return Check{true, detail.str()};
}

// Criterion 5: at fixed c=1, more users means lower utility loss while the
// injected noise stays flat.
Check EffectOfUserCount() {
  const double c = 1.0;
  std::vector<double> mae_small, mae_large, noise_small, noise_large;
  for (int trial = 0; trial < 20; ++trial) {
    const TrialResult small = RunTrial(Synth(30, 50, 1.0), c,
                                       DiscoveryConfig{},
                                       DeriveKey(5005, 0, trial));
    const TrialResult large = RunTrial(Synth(30, 300, 1.0), c,
                                       DiscoveryConfig{},
                                       DeriveKey(5005, 1, trial));
    mae_small.push_back(small.mae_utility);
    mae_large.push_back(large.mae_utility);
    noise_small.push_back(small.mean_abs_noise);
    noise_large.push_back(large.mean_abs_noise);
  }
  const double median_small = Median(mae_small);
  const double median_large = Median(mae_large);
  const double mean_noise_small =
      std::accumulate(noise_small.begin(), noise_small.end(), 0.0) / 20.0;
  const double mean_noise_large =
      std::accumulate(noise_large.begin(), noise_large.end(), 0.0) / 20.0;
  REQUIRE(median_large < median_small,
          "median MAE at S=300 (" << median_large
                                  << ") not below S=50 (" << median_small
                                  << ")");
  const double noise_gap =
      std::abs(mean_noise_large - mean_noise_small) / mean_noise_small;
  REQUIRE(noise_gap < 0.05, "mean |noise| differs by " << noise_gap);
  std::ostringstream detail;
  detail << "median MAE " << median_small << " (S=50) vs " << median_large
         << " (S=300); noise gap " << noise_gap;
  return Check{true, detail.str()};
}

// Criterion 6: at a fixed privacy target (epsilon=5, delta=0.05, b=2,
// eta=0.99), lower-quality data (lambda1=0.5) needs a larger noise level
// and pays more utility than high-quality data (lambda1=2).
Check EffectOfLambda1() {
  const double epsilon = 5.0;
  const double delta = 0.05;
  const SensitivityParams sens(2.0, 0.99);
  const PrivacyTarget target(epsilon, delta);
  const double c_low = PrivacyNoiseFloor(0.5, target, sens);
  const double c_high = PrivacyNoiseFloor(2.0, target, sens);
  REQUIRE(c_low > c_high, "required c not larger at lambda1=0.5");

  std::vector<double> mae_low, mae_high;
  for (int trial = 0; trial < 20; ++trial) {
    mae_low.push_back(RunTrial(Synth(30, 150, 0.5), c_low, DiscoveryConfig{},
                               DeriveKey(6006, 0, trial))
                          .mae_utility);
    mae_high.push_back(RunTrial(Synth(30, 150, 2.0), c_high,
                                DiscoveryConfig{}, DeriveKey(6006, 1, trial))
                           .mae_utility);
  }
  const double median_low = Median(mae_low);
  const double median_high = Median(mae_high);
  REQUIRE(median_low > median_high,
          "median MAE at lambda1=0.5 (" << median_low
                                        << ") not above lambda1=2 ("
                                        << median_high << ")");
  std::ostringstream detail;
  detail << "required c " << c_low << " vs " << c_high << "; median MAE "
         << median_low << " vs " << median_high;
  return Check{true, detail.str()};
}

// Criterion 7: multiplying one user's sampled noise variance by 100 drags
// that user's estimated weight below its original-data value in at least
// 18 of 20 seeds, while estimated weights track true weights (median
// Spearman > 0.8).
Check WeightAdjustment() {
  WeightComparisonSpec spec;
  spec.synth = Synth(30, 150, 1.0);
  spec.synth.seed = 7007;
  spec.c = 1.0;
  spec.boosted_user = 0;
  spec.boost_factor = 100.0;
  spec.trials = 20;
  const WeightComparisonReport report = RunWeightComparison(spec);
  REQUIRE(report.boosted_drop_count >= 18,
          "boosted user's weight dropped in only "
              << report.boosted_drop_count << " of 20 seeds");
  REQUIRE(report.median_rank_correlation > 0.8,
          "median rank correlation " << report.median_rank_correlation
                                     << " not above 0.8");
  std::ostringstream detail;
  detail << "drops " << report.boosted_drop_count
         << "/20, median rank correlation "
         << report.median_rank_correlation;
  return Check{true, detail.str()};
}

// Criterion 8: the median discovery iteration count is flat (spread <= 2)
// across noise levels {0, 0.5, 1, 2} at convergence threshold 1e-6.
Check EfficiencyFlatness() {
  SynthConfig synth = Synth(30, 150, 1.0);
  synth.seed = 8008;
  DiscoveryConfig discovery;
  discovery.convergence_threshold = 1e-6;
  const SweepReport report =
      RunEfficiencyBench(synth, discovery, {0.0, 0.5, 1.0, 2.0}, 20);
  double lo = report.points[0].iters_pert_median;
  double hi = lo;
  std::ostringstream medians;
  for (const SweepPoint& point : report.points) {
    lo = std::min(lo, point.iters_pert_median);
    hi = std::max(hi, point.iters_pert_median);
    medians << " " << point.iters_pert_median;
  }
  REQUIRE(hi - lo <= 2.0,
          "iteration medians spread " << hi - lo << " exceeds 2 (medians:"
                                      << medians.str() << ")");
  return Check{true, "iteration medians:" + medians.str()};
}

// Criterion 9: closed-form regression values, each pre-verified against an
// independent direct-arithmetic oracle (see bounds_test.cc).
Check ClosedFormRegression() {
  const double cap = UtilityNoiseCap(1.0, UtilityTarget(1.0, 0.1), 10);
  REQUIRE(std::abs(cap - 5.29838) <= 1e-4,
          "utility cap " << cap << " not within 1e-4 of 5.29838");
  const double floor = UtilityAlphaFloor(1.0, 0.25);
  REQUIRE(std::abs(floor - 2.0506) <= 1e-3,
          "alpha floor " << floor << " not within 1e-3 of 2.0506");
  const double tail = UnitNoiseCaseBounds(1.0, 100, 3.0).tail_bound;
  REQUIRE(std::abs(tail - 9.13e-5) <= 1e-6,
          "tail bound " << tail << " not within 1e-6 of 9.13e-5");
  std::ostringstream detail;
  detail << "cap " << cap << ", alpha floor " << floor << ", tail " << tail;
  return Check{true, detail.str()};
}

// Criterion 10: every CLI subcommand, run twice with identical flags,
// produces byte-identical output files.
class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("privtruth_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

int RunCli(const std::string& args) {
  const std::string command =
      std::string(PRIVTRUTH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Check CliDeterminism() {
  TempDir dir;
  {
    std::ofstream out(dir.File("sweep_spec.json"));
    out << R"({"variable":"noise_level_c","values":[0.5,1.0],"trials":2,
               "seed":11,"synth":{"objects":8,"users":12,"lambda1":1.0}})";
  }
  {
    std::ofstream out(dir.File("weights_spec.json"));
    out << R"({"synth":{"objects":8,"users":12,"lambda1":1.0},"seed":12,
               "c":1.0,"boosted_user":0,"boost_factor":50.0,"trials":2})";
  }
  {
    std::ofstream out(dir.File("bench_spec.json"));
    out << R"({"c_values":[0.0,1.0],"trials":2,"seed":13,
               "synth":{"objects":8,"users":12,"lambda1":1.0}})";
  }

  // Each entry: subcommand name, flag template, output file basenames. The
  // template's {run} expands to the run tag so the two runs write distinct
  // files from identical logical flags.
  struct Step {
    std::string name;
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Step> steps = {
      {"gen",
       "gen --objects 10 --users 6 --lambda1 1 --seed 21 --out-table "
       "{run}_t.csv --out-truth {run}_g.csv --out-sigma2 {run}_v.csv",
       {"_t.csv", "_g.csv", "_v.csv"}},
      {"perturb",
       "perturb --in-table run1_t.csv --lambda2 1 --seed 22 --out-table "
       "{run}_p.csv --out-variances {run}_pv.csv",
       {"_p.csv", "_pv.csv"}},
      {"discover",
       "discover --in-table run1_t.csv --out-aggregate {run}_a.csv "
       "--out-weights {run}_w.csv --out-summary {run}_s.json",
       {"_a.csv", "_w.csv", "_s.json"}},
      {"bounds",
       "bounds --lambda1 1 --users 10 --alpha 1 --beta 0.1 --epsilon 1 "
       "--delta 0.3934693402873666 --b 1 --eta 0.3934693402873666 --out "
       "{run}_b.json",
       {"_b.json"}},
      {"sweep",
       "sweep --spec sweep_spec.json --out-raw {run}_raw.csv --out-summary "
       "{run}_sum.json --workers 2",
       {"_raw.csv", "_sum.json"}},
      {"weights",
       "weights --spec weights_spec.json --out-raw {run}_wraw.csv "
       "--out-summary {run}_wsum.json --workers 2",
       {"_wraw.csv", "_wsum.json"}},
      {"bench",
       "bench --spec bench_spec.json --out-raw {run}_braw.csv --out-summary "
       "{run}_bsum.json",
       {"_braw.csv", "_bsum.json"}},
  };

  for (const Step& step : steps) {
    for (const std::string& run : {std::string("run1"), std::string("run2")}) {
      std::string args = step.args;
      size_t pos = 0;
      while ((pos = args.find("{run}", pos)) != std::string::npos) {
        args.replace(pos, 5, run);
      }
      // Paths are relative to the temp dir.
      pos = 0;
      std::string absolute;
      std::istringstream words(args);
      std::string word;
      while (words >> word) {
        if (word.find(".csv") != std::string::npos ||
            word.find(".json") != std::string::npos) {
          word = dir.File(word);
        }
        absolute += word + " ";
      }
      const int code = RunCli(absolute);
      REQUIRE(code == 0, step.name << " exited " << code);
    }
    for (const std::string& suffix : step.outputs) {
      const std::string a = ReadBytes(dir.File("run1" + suffix));
      const std::string b = ReadBytes(dir.File("run2" + suffix));
      REQUIRE(!a.empty(), step.name << " wrote empty " << suffix);
      REQUIRE(a == b,
              step.name << " output " << suffix << " differs between runs");
    }
  }
  return Check{true, std::to_string(steps.size()) + " subcommands compared"};
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "noise-suppression headline", 30.0, NoiseSuppressionHeadline},
      {2, "weighted-mean lemma suite", 5.0, LemmaSuite},
      {3, "privacy floor exactness", 5.0, PrivacyFloorExactness},
      {4, "utility guarantee empirical check", 60.0, UtilityGuaranteeEmpirical},
      {5, "effect of user count", 60.0, EffectOfUserCount},
      {6, "effect of lambda1", 60.0, EffectOfLambda1},
      {7, "weight adjustment under boosted noise", 30.0, WeightAdjustment},
      {8, "efficiency flatness", 60.0, EfficiencyFlatness},
      {9, "closed-form regression", 1.0, ClosedFormRegression},
      {10, "CLI determinism", 30.0, CliDeterminism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& e) {
      check = Check{false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (elapsed > criterion.budget_seconds) {
      check.ok = false;
      check.detail += " [over budget: " + std::to_string(elapsed) + " s]";
    }
    std::printf("[%s] criterion %2d: %s (%.2f s / %.0f s): %s\n",
                check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name.c_str(), elapsed, criterion.budget_seconds,
                check.detail.c_str());
    if (!check.ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  }
  return failures;
}
