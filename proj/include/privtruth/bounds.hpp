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

#ifndef PRIVTRUTH_BOUNDS_HPP_
#define PRIVTRUTH_BOUNDS_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Closed-form utility and privacy bounds for the perturbed weighted
// aggregation mechanism, evaluated as pure double-precision arithmetic.
// The noise level c = lambda1/lambda2 compares the expected Gaussian noise
// variance (1/lambda2) against the expected per-user error variance
// (1/lambda1) of the original data.

namespace privtruth {

// (alpha, beta)-utility target: the probability that the mean per-object
// gap between the aggregates before and after perturbation reaches alpha
// must stay below beta.
struct UtilityTarget {
  UtilityTarget(double alpha, double beta);
  double alpha;
  double beta;
};

// (epsilon, delta)-local differential privacy target.
struct PrivacyTarget {
  PrivacyTarget(double epsilon, double delta);
  double epsilon;
  double delta;
};

// Parameters bounding a user's sensitive information (the spread between
// two values the user could report for the same object): with probability
// at least eta * (1 - 2 e^{-b^2/2} / b) the spread is at most Gamma()/lambda1,
// where Gamma() = b * sqrt(2 ln(1/(1-eta))).
struct SensitivityParams {
  SensitivityParams() : SensitivityParams(2.0, 0.99) {}
  SensitivityParams(double b, double eta);
  double b;
  double eta;
  double Gamma() const;
};

// Feasibility summary for a noise level c: the privacy floor, the utility
// cap, the binding alpha lower bound across the interval, and whether some
// c satisfies both constraints together with the alpha condition.
struct BoundReport {
  double c_lower = 0.0;
  double c_upper = 0.0;
  double alpha_floor = 0.0;
  bool feasible = false;
  std::optional<std::array<double, 2>> feasible_interval;
};

// Largest noise level compatible with the utility target:
//   C = lambda1 * sqrt(pi) * (alpha^2 beta S^2 / (4 sqrt(2))
//       + alpha^2 sqrt(pi)/8 + alpha + 2/sqrt(pi)) - 2.
// May be negative, meaning no positive noise level meets the target.
double UtilityNoiseCap(double lambda1, const UtilityTarget& target,
                       int n_users);

// Smallest alpha the utility guarantee can promise at noise level c != 1:
//   alpha = 2 sqrt(2) / (sqrt(lambda1) (1-c))
//           * (3/4 - c (c + sqrt(c) + 1) / (sqrt(2) (1 + sqrt(c)))).
// Throws at c == 1 (singular); use UnitNoiseCaseBounds there.
double UtilityAlphaFloor(double lambda1, double c);

// Smallest noise level compatible with the privacy target:
//   c = Gamma^2 / (2 lambda1 epsilon ln(1/(1-delta))).
double PrivacyNoiseFloor(double lambda1, const PrivacyTarget& target,
                         const SensitivityParams& sens);

// Inverse of PrivacyNoiseFloor in epsilon: the privacy level a given noise
// level c > 0 buys at the given delta.
double EpsilonForNoiseLevel(double lambda1, double c, double delta,
                            const SensitivityParams& sens);

struct SensitivityBound {
  double bound = 0.0;       // Gamma / lambda1
  double confidence = 0.0;  // eta * (1 - 2 e^{-b^2/2} / b)
};

SensitivityBound ComputeSensitivityBound(double lambda1,
                                         const SensitivityParams& sens);

// Composes the utility cap and the privacy floor into a feasibility
// interval for c, then verifies alpha > UtilityAlphaFloor(lambda1, c)
// across the interval on a dense grid (1000 points including endpoints;
// a grid point at exactly c == 1 uses the c == 1 special case floor).
BoundReport ComputeTradeoff(double lambda1, int n_users,
                            const UtilityTarget& utility,
                            const PrivacyTarget& privacy,
                            const SensitivityParams& sens);

// Flat JSON object with keys c_lower, c_upper, alpha_floor, feasible.
std::string BoundReportToJson(const BoundReport& report);

// Utility guarantee at the special noise level c == 1, where the generic
// alpha floor is singular: for alpha > 15 sqrt(2 lambda1) / 8 the failure
// probability is at most sqrt(2/pi) (48 - 12 lambda1^2 pi) / (S^2 alpha^2
// lambda1), clamped into [0, 1].
struct UnitNoiseCase {
  double alpha_floor = 0.0;
  double tail_bound = 0.0;
};

UnitNoiseCase UnitNoiseCaseBounds(double lambda1, int n_users, double alpha);

// Property-test oracle for the weighted-mean lemma: for weights w_s =
// f(t_s) with f monotone decreasing, the f-weighted mean of t never exceeds
// the plain mean (up to 1e-12 slack). Throws if the weights do not sum to a
// positive value.
bool WeightedMeanLemmaHolds(const std::vector<double>& t,
                            const std::function<double(double)>& f);

// Pointwise Gaussian density-ratio test: noise variance y keeps
// exp((x1-x2)^2 / (2y)) within e^epsilon iff y >= (x1-x2)^2 / (2 epsilon).
bool LdpRatioHolds(double x1, double x2, double variance, double epsilon);

}  // namespace privtruth

#endif  // PRIVTRUTH_BOUNDS_HPP_
