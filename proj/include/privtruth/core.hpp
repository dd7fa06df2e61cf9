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

#ifndef PRIVTRUTH_CORE_HPP_
#define PRIVTRUTH_CORE_HPP_

#include <span>
#include <vector>

namespace privtruth {

// One continuous reading: the value a user reports for an object. Objects
// and users are dense indices in [0, n_objects) and [0, n_users).
struct Observation {
  int object = 0;
  int user = 0;
  double value = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Sparse set of (object, user, value) readings, immutable after
// construction. Invariants enforced by the constructor:
//   - indices in range, at most one entry per (object, user) pair,
//   - every object has at least one observer, every user observes at least
//     one object,
//   - all values finite.
// Entries are kept sorted by (object, user) so iteration order, CSV output
// and downstream numerics are deterministic.
class ObservationTable {
 public:
  ObservationTable(int n_objects, int n_users,
                   std::vector<Observation> entries);

  int n_objects() const { return n_objects_; }
  int n_users() const { return n_users_; }
  const std::vector<Observation>& entries() const { return entries_; }

  // Contiguous entries for one object (non-empty by invariant).
  std::span<const Observation> object_entries(int object) const;

  friend bool operator==(const ObservationTable&, const ObservationTable&) =
      default;

 private:
  int n_objects_;
  int n_users_;
  std::vector<Observation> entries_;
  std::vector<int> object_offsets_;  // size n_objects_ + 1
};

// Per-object true values; finite, one per object.
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::vector<double> values_;
};

// Per-user reliability weights: all finite and >= 0, at least one > 0.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
};

// Output of a truth discovery run: per-object aggregated values plus the
// final weights and convergence metadata.
struct AggregateResult {
  std::vector<double> values;
  WeightVector weights;
  int iterations = 0;
  bool converged = false;
};

// Mean absolute error (1/N) * sum |a_n - b_n|. Throws on empty input,
// length mismatch, or non-finite values.
double MeanAbsoluteError(std::span<const double> a, std::span<const double> b);

}  // namespace privtruth

#endif  // PRIVTRUTH_CORE_HPP_
