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

// privtruth: privacy-preserving truth discovery pipeline.
//
//   gen       synthesize a crowd-sensing table with ground truths
//   perturb   add per-user Gaussian noise with privately sampled variances
//   discover  run iterative weighted truth discovery
//   bounds    evaluate the closed-form utility/privacy trade-off
//   sweep     run a utility-privacy experiment sweep from a JSON spec
//   weights   run the weight-comparison study from a JSON spec
//   bench     run the efficiency benchmark from a JSON spec
//
// Every randomized subcommand requires an explicit seed (either --seed or a
// "seed" key in the JSON spec); with timing disabled (the default for sweep
// and bench), identical invocations produce byte-identical output files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "privtruth/bounds.hpp"
#include "privtruth/csv.hpp"
#include "privtruth/discovery.hpp"
#include "privtruth/harness.hpp"
#include "privtruth/perturb.hpp"
#include "privtruth/synth.hpp"

namespace {

using namespace privtruth;

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

int ResolveWorkers(int workers_flag) {
  if (workers_flag > 0) return workers_flag;
  if (const char* env = std::getenv("LDP_TD_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

struct GenArgs {
  SynthConfig synth;
  std::string out_table;
  std::string out_truth;
  std::string out_sigma2;
};

struct PerturbArgs {
  std::string in_table;
  double lambda2 = 1.0;
  uint64_t seed = 0;
  std::string out_table;
  std::string out_variances;
};

struct DiscoverArgs {
  std::string in_table;
  DiscoveryConfig config;
  std::string weight_update = "crh";
  std::string out_aggregate;
  std::string out_weights;
  std::string out_summary;
};

struct BoundsArgs {
  double lambda1 = 1.0;
  int users = 1;
  double alpha = 1.0;
  double beta = 0.1;
  double epsilon = 1.0;
  double delta = 0.05;
  double b = 2.0;
  double eta = 0.99;
  std::string out;
};

struct JobArgs {
  std::string spec_path;
  std::string out_raw;
  std::string out_summary;
  int workers = 0;
  bool timing = false;
};

int RunGen(const GenArgs& args) {
  const SynthData data = GenerateSyntheticData(args.synth);
  WriteObservationsCsv(data.table, args.out_table);
  WriteObjectSeriesCsv("value", data.truth.values(), args.out_truth);
  if (!args.out_sigma2.empty()) {
    WriteUserSeriesCsv("sigma2", data.error_variances, args.out_sigma2);
  }
  return 0;
}

int RunPerturb(const PerturbArgs& args) {
  const ObservationTable table = ReadObservationsCsv(args.in_table);
  const NoiseProfile profile =
      SampleNoiseVariances(args.lambda2, table.n_users(), args.seed);
  WriteObservationsCsv(PerturbTable(table, profile), args.out_table);
  if (!args.out_variances.empty()) {
    WriteUserSeriesCsv("variance", profile.per_user_variance,
                       args.out_variances);
  }
  return 0;
}

int RunDiscover(const DiscoverArgs& args) {
  DiscoveryConfig config = args.config;
  config.weight_update = args.weight_update == "uniform"
                             ? WeightUpdate::kUniform
                             : WeightUpdate::kCrh;
  const ObservationTable table = ReadObservationsCsv(args.in_table);
  const AggregateResult result = RunTruthDiscovery(table, config);
  WriteObjectSeriesCsv("value", result.values, args.out_aggregate);
  if (!args.out_weights.empty()) {
    WriteUserSeriesCsv("weight", result.weights.weights(), args.out_weights);
  }
  if (!args.out_summary.empty()) {
    nlohmann::json summary{{"iterations", result.iterations},
                           {"converged", result.converged},
                           {"objects", table.n_objects()},
                           {"users", table.n_users()},
                           {"weight_update", args.weight_update}};
    WriteFileOrThrow(args.out_summary, summary.dump(2) + "\n");
  }
  return 0;
}

int RunBounds(const BoundsArgs& args) {
  const BoundReport report = ComputeTradeoff(
      args.lambda1, args.users, UtilityTarget(args.alpha, args.beta),
      PrivacyTarget(args.epsilon, args.delta),
      SensitivityParams(args.b, args.eta));
  const std::string out = BoundReportToJson(report);
  std::cout << out;
  if (!args.out.empty()) WriteFileOrThrow(args.out, out);
  return 0;
}

int RunSweepJob(const JobArgs& args) {
  SweepSpec spec = ParseSweepSpecJson(ReadFileOrThrow(args.spec_path));
  spec.workers = ResolveWorkers(args.workers);
  spec.measure_time = args.timing;
  const SweepReport report = RunSweep(spec);
  WriteSweepRawCsv(report, args.out_raw);
  WriteFileOrThrow(args.out_summary, SweepSummaryJson(report));
  return 0;
}

int RunWeightsJob(const JobArgs& args) {
  WeightComparisonSpec spec =
      ParseWeightComparisonSpecJson(ReadFileOrThrow(args.spec_path));
  spec.workers = ResolveWorkers(args.workers);
  const WeightComparisonReport report = RunWeightComparison(spec);
  WriteWeightComparisonRawCsv(report, args.out_raw);
  WriteFileOrThrow(args.out_summary, WeightComparisonSummaryJson(report));
  return 0;
}

int RunBenchJob(const JobArgs& args) {
  SweepSpec spec = ParseBenchSpecJson(ReadFileOrThrow(args.spec_path));
  spec.workers = ResolveWorkers(args.workers);
  spec.measure_time = args.timing;
  const SweepReport report = RunSweep(spec);
  WriteSweepRawCsv(report, args.out_raw);
  WriteFileOrThrow(args.out_summary, SweepSummaryJson(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-preserving truth discovery for crowd-sensed data"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cmd_gen =
      app.add_subcommand("gen", "generate a synthetic observation table");
  cmd_gen->add_option("--objects", gen.synth.n_objects, "number of objects")
      ->required();
  cmd_gen->add_option("--users", gen.synth.n_users, "number of users")
      ->required();
  cmd_gen->add_option("--lambda1", gen.synth.lambda1,
                      "rate of the error-variance exponential");
  cmd_gen->add_option("--truth-low", gen.synth.truth_low,
                      "ground-truth range lower bound");
  cmd_gen->add_option("--truth-high", gen.synth.truth_high,
                      "ground-truth range upper bound");
  cmd_gen->add_option("--seed", gen.synth.seed, "random seed")->required();
  cmd_gen->add_option("--out-table", gen.out_table, "observation CSV path")
      ->required();
  cmd_gen->add_option("--out-truth", gen.out_truth, "ground-truth CSV path")
      ->required();
  cmd_gen->add_option("--out-sigma2", gen.out_sigma2,
                      "per-user error-variance audit CSV path");

  PerturbArgs perturb;
  CLI::App* cmd_perturb = app.add_subcommand(
      "perturb", "add privately sampled Gaussian noise to a table");
  cmd_perturb->add_option("--in-table", perturb.in_table,
                          "input observation CSV")
      ->required();
  cmd_perturb
      ->add_option("--lambda2", perturb.lambda2,
                   "rate of the noise-variance exponential")
      ->required();
  cmd_perturb->add_option("--seed", perturb.seed, "random seed")->required();
  cmd_perturb
      ->add_option("--out-table", perturb.out_table, "perturbed CSV path")
      ->required();
  cmd_perturb->add_option("--out-variances", perturb.out_variances,
                          "per-user noise-variance audit CSV path");

  DiscoverArgs discover;
  CLI::App* cmd_discover =
      app.add_subcommand("discover", "run iterative truth discovery");
  cmd_discover
      ->add_option("--in-table", discover.in_table, "input observation CSV")
      ->required();
  cmd_discover->add_option("--max-iterations", discover.config.max_iterations,
                           "iteration cap");
  cmd_discover->add_option("--threshold",
                           discover.config.convergence_threshold,
                           "convergence threshold on the aggregate change");
  cmd_discover->add_option("--distance-floor", discover.config.distance_floor,
                           "floor on per-user total distance");
  cmd_discover
      ->add_option("--weight-update", discover.weight_update,
                   "weight update rule")
      ->check(CLI::IsMember({"crh", "uniform"}));
  cmd_discover->add_flag("--standardize", discover.config.standardize,
                         "scale distances by per-object variance");
  cmd_discover
      ->add_option("--out-aggregate", discover.out_aggregate,
                   "aggregate CSV path")
      ->required();
  cmd_discover->add_option("--out-weights", discover.out_weights,
                           "weights CSV path");
  cmd_discover->add_option("--out-summary", discover.out_summary,
                           "run summary JSON path");

  BoundsArgs bounds;
  CLI::App* cmd_bounds = app.add_subcommand(
      "bounds", "evaluate the utility/privacy feasibility interval");
  cmd_bounds->add_option("--lambda1", bounds.lambda1, "error-variance rate")
      ->required();
  cmd_bounds->add_option("--users", bounds.users, "number of users")
      ->required();
  cmd_bounds->add_option("--alpha", bounds.alpha, "utility alpha")
      ->required();
  cmd_bounds->add_option("--beta", bounds.beta, "utility beta")->required();
  cmd_bounds->add_option("--epsilon", bounds.epsilon, "privacy epsilon")
      ->required();
  cmd_bounds->add_option("--delta", bounds.delta, "privacy delta")
      ->required();
  cmd_bounds->add_option("--b", bounds.b, "sensitivity tail constant");
  cmd_bounds->add_option("--eta", bounds.eta,
                         "sensitivity confidence constant");
  cmd_bounds->add_option("--out", bounds.out, "also write the JSON here");

  JobArgs sweep_args, weights_args, bench_args;
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "run an experiment sweep from a JSON spec");
  cmd_sweep->add_option("--spec", sweep_args.spec_path, "sweep spec JSON")
      ->required();
  cmd_sweep->add_option("--out-raw", sweep_args.out_raw, "raw rows CSV path")
      ->required();
  cmd_sweep
      ->add_option("--out-summary", sweep_args.out_summary,
                   "summary JSON path")
      ->required();
  cmd_sweep->add_option("--workers", sweep_args.workers,
                        "parallel trial workers (env LDP_TD_WORKERS)");
  cmd_sweep->add_flag("--timing", sweep_args.timing,
                      "measure wall time (makes outputs non-reproducible)");

  CLI::App* cmd_weights = app.add_subcommand(
      "weights", "run the weight-comparison study from a JSON spec");
  cmd_weights->add_option("--spec", weights_args.spec_path, "spec JSON")
      ->required();
  cmd_weights
      ->add_option("--out-raw", weights_args.out_raw, "raw rows CSV path")
      ->required();
  cmd_weights
      ->add_option("--out-summary", weights_args.out_summary,
                   "summary JSON path")
      ->required();
  cmd_weights->add_option("--workers", weights_args.workers,
                          "parallel trial workers (env LDP_TD_WORKERS)");

  CLI::App* cmd_bench = app.add_subcommand(
      "bench", "run the efficiency benchmark from a JSON spec");
  cmd_bench->add_option("--spec", bench_args.spec_path, "spec JSON")
      ->required();
  cmd_bench->add_option("--out-raw", bench_args.out_raw, "raw rows CSV path")
      ->required();
  cmd_bench
      ->add_option("--out-summary", bench_args.out_summary,
                   "summary JSON path")
      ->required();
  cmd_bench->add_option("--workers", bench_args.workers,
                        "parallel trial workers (env LDP_TD_WORKERS)");
  cmd_bench->add_flag("--timing", bench_args.timing,
                      "measure wall time (makes outputs non-reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_gen)) return RunGen(gen);
    if (app.got_subcommand(cmd_perturb)) return RunPerturb(perturb);
    if (app.got_subcommand(cmd_discover)) return RunDiscover(discover);
    if (app.got_subcommand(cmd_bounds)) return RunBounds(bounds);
    if (app.got_subcommand(cmd_sweep)) return RunSweepJob(sweep_args);
    if (app.got_subcommand(cmd_weights)) return RunWeightsJob(weights_args);
    if (app.got_subcommand(cmd_bench)) return RunBenchJob(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
