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

#ifndef PRIVTRUTH_PERTURB_HPP_
#define PRIVTRUTH_PERTURB_HPP_

#include <cstdint>
#include <vector>

#include "privtruth/core.hpp"

namespace privtruth {

// Per-user Gaussian noise variances, each privately sampled from an
// exponential distribution with the server-released rate lambda2 (so the
// mean variance is 1/lambda2). Reproducible from (lambda2, seed, S).
struct NoiseProfile {
  double lambda2 = 1.0;
  std::vector<double> per_user_variance;
  uint64_t seed = 0;
};

// Ratio c = lambda1 / lambda2 between the expected noise variance and the
// expected error variance of the original data; the single knob trading
// utility against privacy.
struct NoiseLevel {
  double c = 0.0;
};

// Draws per-user variances i.i.d. Exponential(lambda2), each from a
// substream keyed by (seed, user) so a user's draw is independent of every
// other user and of evaluation order.
NoiseProfile SampleNoiseVariances(double lambda2, int n_users, uint64_t seed);

// Adds zero-mean Gaussian noise with the user's variance to every entry.
// Entry noise is keyed by (seed, user, object), so perturbing one user's
// rows is invariant to the presence or data of any other user. The entry
// set is unchanged. A zero variance leaves that user's rows untouched
// (test hook; sampled variances are always positive).
ObservationTable PerturbTable(const ObservationTable& table,
                              const NoiseProfile& profile);

NoiseLevel NoiseLevelFromRates(double lambda1, double lambda2);

}  // namespace privtruth

#endif  // PRIVTRUTH_PERTURB_HPP_
