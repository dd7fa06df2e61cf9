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

#include "privtruth/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace privtruth {

ObservationTable::ObservationTable(int n_objects, int n_users,
                                   std::vector<Observation> entries)
    : n_objects_(n_objects), n_users_(n_users), entries_(std::move(entries)) {
  if (n_objects_ < 1 || n_users_ < 1) {
    throw std::invalid_argument(
        "ObservationTable: need at least one object and one user");
  }
  for (const Observation& e : entries_) {
    if (e.object < 0 || e.object >= n_objects_) {
      throw std::invalid_argument("ObservationTable: object index " +
                                  std::to_string(e.object) + " out of range");
    }
    if (e.user < 0 || e.user >= n_users_) {
      throw std::invalid_argument("ObservationTable: user index " +
                                  std::to_string(e.user) + " out of range");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument(
          "ObservationTable: non-finite value for object " +
          std::to_string(e.object) + ", user " + std::to_string(e.user));
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Observation& a, const Observation& b) {
              return a.object != b.object ? a.object < b.object
                                          : a.user < b.user;
            });
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].object == entries_[i - 1].object &&
        entries_[i].user == entries_[i - 1].user) {
      throw std::invalid_argument(
          "ObservationTable: duplicate entry for object " +
          std::to_string(entries_[i].object) + ", user " +
          std::to_string(entries_[i].user));
    }
  }

  object_offsets_.assign(n_objects_ + 1, 0);
  std::vector<char> user_seen(n_users_, 0);
  for (const Observation& e : entries_) {
    ++object_offsets_[e.object + 1];
    user_seen[e.user] = 1;
  }
  for (int n = 0; n < n_objects_; ++n) {
    if (object_offsets_[n + 1] == 0) {
      throw std::invalid_argument("ObservationTable: object " +
                                  std::to_string(n) + " has no observations");
    }
    object_offsets_[n + 1] += object_offsets_[n];
  }
  for (int s = 0; s < n_users_; ++s) {
    if (!user_seen[s]) {
      throw std::invalid_argument("ObservationTable: user " +
                                  std::to_string(s) + " has no observations");
    }
  }
}

std::span<const Observation> ObservationTable::object_entries(
    int object) const {
  if (object < 0 || object >= n_objects_) {
    throw std::out_of_range("ObservationTable: object index out of range");
  }
  const int begin = object_offsets_[object];
  const int end = object_offsets_[object + 1];
  return {entries_.data() + begin, static_cast<size_t>(end - begin)};
}

GroundTruth::GroundTruth(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("GroundTruth: empty");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("GroundTruth: non-finite value");
    }
  }
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("WeightVector: empty");
  }
  bool any_positive = false;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0) {
      throw std::invalid_argument(
          "WeightVector: weights must be finite and >= 0");
    }
    any_positive = any_positive || w > 0;
  }
  if (!any_positive) {
    throw std::invalid_argument("WeightVector: all weights are zero");
  }
}

double MeanAbsoluteError(std::span<const double> a,
                         std::span<const double> b) {
  if (a.empty()) {
    throw std::invalid_argument("MeanAbsoluteError: empty input");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("MeanAbsoluteError: length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw std::invalid_argument("MeanAbsoluteError: non-finite value");
    }
    total += std::abs(a[i] - b[i]);
  }
  return total / static_cast<double>(a.size());
}

}  // namespace privtruth
