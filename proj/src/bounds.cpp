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

#include "privtruth/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace privtruth {

namespace {

constexpr int kTradeoffGridPoints = 1000;
constexpr double kLemmaSlack = 1e-12;

void CheckLambda1(double lambda1) {
  if (!(lambda1 > 0) || !std::isfinite(lambda1)) {
    throw std::invalid_argument("lambda1 must be positive and finite");
  }
}

}  // namespace

UtilityTarget::UtilityTarget(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in) {
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("UtilityTarget: alpha must be > 0");
  }
  if (!(beta >= 0) || !(beta <= 1)) {
    throw std::invalid_argument("UtilityTarget: beta must be in [0, 1]");
  }
}

PrivacyTarget::PrivacyTarget(double epsilon_in, double delta_in)
    : epsilon(epsilon_in), delta(delta_in) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("PrivacyTarget: epsilon must be > 0");
  }
  if (!(delta > 0) || !(delta < 1)) {
    throw std::invalid_argument("PrivacyTarget: delta must be in (0, 1)");
  }
}

SensitivityParams::SensitivityParams(double b_in, double eta_in)
    : b(b_in), eta(eta_in) {
  if (!(b > 0) || !std::isfinite(b)) {
    throw std::invalid_argument("SensitivityParams: b must be > 0");
  }
  if (!(eta > 0) || !(eta < 1)) {
    throw std::invalid_argument("SensitivityParams: eta must be in (0, 1)");
  }
}

double SensitivityParams::Gamma() const {
  return b * std::sqrt(2.0 * std::log(1.0 / (1.0 - eta)));
}

double UtilityNoiseCap(double lambda1, const UtilityTarget& target,
                       int n_users) {
  CheckLambda1(lambda1);
  if (n_users < 1) {
    throw std::invalid_argument("UtilityNoiseCap: need n_users >= 1");
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double alpha = target.alpha;
  const double s = static_cast<double>(n_users);
  const double inner = alpha * alpha * target.beta * s * s /
                           (4.0 * std::numbers::sqrt2) +
                       alpha * alpha * sqrt_pi / 8.0 + alpha + 2.0 / sqrt_pi;
  return lambda1 * sqrt_pi * inner - 2.0;
}

double UtilityAlphaFloor(double lambda1, double c) {
  CheckLambda1(lambda1);
  if (!(c >= 0) || !std::isfinite(c)) {
    throw std::invalid_argument("UtilityAlphaFloor: c must be >= 0");
  }
  if (c == 1.0) {
    throw std::invalid_argument(
        "UtilityAlphaFloor: singular at c == 1; use UnitNoiseCaseBounds");
  }
  const double sqrt_c = std::sqrt(c);
  const double second =
      c * (c + sqrt_c + 1.0) / (std::numbers::sqrt2 * (1.0 + sqrt_c));
  return 2.0 * std::numbers::sqrt2 / (std::sqrt(lambda1) * (1.0 - c)) *
         (0.75 - second);
}

double PrivacyNoiseFloor(double lambda1, const PrivacyTarget& target,
                         const SensitivityParams& sens) {
  CheckLambda1(lambda1);
  const double gamma = sens.Gamma();
  return gamma * gamma /
         (2.0 * lambda1 * target.epsilon *
          std::log(1.0 / (1.0 - target.delta)));
}

double EpsilonForNoiseLevel(double lambda1, double c, double delta,
                            const SensitivityParams& sens) {
  CheckLambda1(lambda1);
  if (!(c > 0) || !std::isfinite(c)) {
    throw std::invalid_argument("EpsilonForNoiseLevel: c must be > 0");
  }
  if (!(delta > 0) || !(delta < 1)) {
    throw std::invalid_argument(
        "EpsilonForNoiseLevel: delta must be in (0, 1)");
  }
  const double gamma = sens.Gamma();
  return gamma * gamma /
         (2.0 * lambda1 * c * std::log(1.0 / (1.0 - delta)));
}

SensitivityBound ComputeSensitivityBound(double lambda1,
                                         const SensitivityParams& sens) {
  CheckLambda1(lambda1);
  SensitivityBound result;
  result.bound = sens.Gamma() / lambda1;
  result.confidence =
      sens.eta * (1.0 - 2.0 * std::exp(-sens.b * sens.b / 2.0) / sens.b);
  return result;
}

BoundReport ComputeTradeoff(double lambda1, int n_users,
                            const UtilityTarget& utility,
                            const PrivacyTarget& privacy,
                            const SensitivityParams& sens) {
  BoundReport report;
  report.c_lower = PrivacyNoiseFloor(lambda1, privacy, sens);
  report.c_upper = UtilityNoiseCap(lambda1, utility, n_users);
  report.alpha_floor = std::numeric_limits<double>::quiet_NaN();

  const bool interval_ok = std::isfinite(report.c_lower) &&
                           std::isfinite(report.c_upper) &&
                           report.c_lower <= report.c_upper;
  if (!interval_ok) {
    report.feasible = false;
    return report;
  }
  report.feasible_interval = {report.c_lower, report.c_upper};

  // The alpha condition holds interval-wide iff alpha clears the largest
  // floor over [c_lower, c_upper]; the floor has no interval-wide closed
  // form, so take the max over a dense grid (endpoints included).
  double max_floor = -std::numeric_limits<double>::infinity();
  const double span = report.c_upper - report.c_lower;
  for (int i = 0; i < kTradeoffGridPoints; ++i) {
    const double c =
        (i + 1 == kTradeoffGridPoints)
            ? report.c_upper
            : report.c_lower +
                  span * static_cast<double>(i) / (kTradeoffGridPoints - 1);
    const double floor =
        (c == 1.0) ? UnitNoiseCaseBounds(lambda1, n_users, utility.alpha)
                         .alpha_floor
                   : UtilityAlphaFloor(lambda1, c);
    max_floor = std::max(max_floor, floor);
    if (span == 0) break;
  }
  report.alpha_floor = max_floor;
  report.feasible = utility.alpha > max_floor;
  return report;
}

std::string BoundReportToJson(const BoundReport& report) {
  nlohmann::json j;
  j["c_lower"] = report.c_lower;
  j["c_upper"] = report.c_upper;
  j["alpha_floor"] = report.alpha_floor;
  j["feasible"] = report.feasible;
  return j.dump(2) + "\n";
}

UnitNoiseCase UnitNoiseCaseBounds(double lambda1, int n_users, double alpha) {
  CheckLambda1(lambda1);
  if (n_users < 1) {
    throw std::invalid_argument("UnitNoiseCaseBounds: need n_users >= 1");
  }
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("UnitNoiseCaseBounds: alpha must be > 0");
  }
  UnitNoiseCase result;
  result.alpha_floor = 15.0 * std::sqrt(2.0 * lambda1) / 8.0;
  const double s = static_cast<double>(n_users);
  const double raw = std::sqrt(2.0 / std::numbers::pi) *
                     (48.0 - 12.0 * lambda1 * lambda1 * std::numbers::pi) /
                     (s * s * alpha * alpha * lambda1);
  // The raw expression can leave [0, 1] (e.g. it goes negative once
  // lambda1 exceeds sqrt(4/pi)); it bounds a probability, so clamp.
  result.tail_bound = std::clamp(raw, 0.0, 1.0);
  return result;
}

bool WeightedMeanLemmaHolds(const std::vector<double>& t,
                            const std::function<double(double)>& f) {
  if (t.empty()) {
    throw std::invalid_argument("WeightedMeanLemmaHolds: empty input");
  }
  double weight_sum = 0.0;
  double weighted = 0.0;
  double plain = 0.0;
  for (double value : t) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("WeightedMeanLemmaHolds: non-finite t");
    }
    const double w = f(value);
    weight_sum += w;
    weighted += w * value;
    plain += value;
  }
  if (!(weight_sum > 0) || !std::isfinite(weight_sum)) {
    throw std::invalid_argument(
        "WeightedMeanLemmaHolds: weights must sum to a positive value");
  }
  return weighted / weight_sum <=
         plain / static_cast<double>(t.size()) + kLemmaSlack;
}

bool LdpRatioHolds(double x1, double x2, double variance, double epsilon) {
  if (!(variance > 0)) {
    throw std::invalid_argument("LdpRatioHolds: variance must be > 0");
  }
  const double gap = x1 - x2;
  return variance >= gap * gap / (2.0 * epsilon);
}

}  // namespace privtruth
