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

#ifndef PRIVTRUTH_CSV_HPP_
#define PRIVTRUTH_CSV_HPP_

#include <string>
#include <vector>

#include "privtruth/core.hpp"

// CSV formats used by the library and CLI. All files are UTF-8 with LF line
// endings; doubles are printed with 17 significant digits so they round-trip
// bit exactly. Malformed input is reported with the offending row number.
//
//   observations:  header "object,user,value", one row per entry
//   object series: header "object,<column>", rows dense 0..N-1 in order
//   user series:   header "user,<column>",   rows dense 0..S-1 in order

namespace privtruth {

// Shortest fixed formatting that round-trips doubles ("%.17g").
std::string FormatDouble(double v);

void WriteObservationsCsv(const ObservationTable& table,
                          const std::string& path);
ObservationTable ReadObservationsCsv(const std::string& path);

void WriteObjectSeriesCsv(const std::string& value_column,
                          const std::vector<double>& values,
                          const std::string& path);
std::vector<double> ReadObjectSeriesCsv(const std::string& value_column,
                                        const std::string& path);

void WriteUserSeriesCsv(const std::string& value_column,
                        const std::vector<double>& values,
                        const std::string& path);
std::vector<double> ReadUserSeriesCsv(const std::string& value_column,
                                      const std::string& path);

}  // namespace privtruth

#endif  // PRIVTRUTH_CSV_HPP_
