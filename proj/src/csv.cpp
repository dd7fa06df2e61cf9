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

#include "privtruth/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace privtruth {

namespace {

std::runtime_error RowError(const std::string& path, size_t row,
                            const std::string& message) {
  return std::runtime_error(path + ": row " + std::to_string(row) + ": " +
                            message);
}

// Splits file content into lines; tolerates a missing final newline.
std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string content = buffer.str();

  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= content.size()) {
    size_t end = content.find('\n', start);
    if (end == std::string::npos) {
      if (start < content.size()) lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t end = line.find(',', start);
    if (end == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

int ParseIndex(const std::string& field, const std::string& path, size_t row,
               const std::string& what) {
  if (field.empty()) throw RowError(path, row, "empty " + what + " field");
  char* end = nullptr;
  errno = 0;
  const long value = std::strtol(field.c_str(), &end, 10);
  if (errno != 0 || end != field.c_str() + field.size() || value < 0 ||
      value > 1000000000L) {
    throw RowError(path, row, "invalid " + what + " '" + field + "'");
  }
  return static_cast<int>(value);
}

double ParseDouble(const std::string& field, const std::string& path,
                   size_t row, const std::string& what) {
  if (field.empty()) throw RowError(path, row, "empty " + what + " field");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(field.c_str(), &end);
  // ERANGE with a finite result is subnormal underflow; those values still
  // round-trip exactly and are accepted.
  if (end != field.c_str() + field.size() || !std::isfinite(value)) {
    throw RowError(path, row, "invalid " + what + " '" + field + "'");
  }
  return value;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

// Generic dense-index series: header "<index_column>,<value_column>", rows
// 0..size-1 in order.
void WriteSeries(const std::string& index_column,
                 const std::string& value_column,
                 const std::vector<double>& values, const std::string& path) {
  std::string out = index_column + "," + value_column + "\n";
  for (size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += FormatDouble(values[i]);
    out += '\n';
  }
  WriteFile(path, out);
}

std::vector<double> ReadSeries(const std::string& index_column,
                               const std::string& value_column,
                               const std::string& path) {
  const std::vector<std::string> lines = ReadLines(path);
  const std::string expected_header = index_column + "," + value_column;
  if (lines.empty() || lines[0] != expected_header) {
    throw RowError(path, 1, "expected header '" + expected_header + "'");
  }
  std::vector<double> values;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const std::vector<std::string> fields = SplitFields(lines[i]);
    if (fields.size() != 2) {
      throw RowError(path, i + 1, "expected 2 fields, got " +
                                      std::to_string(fields.size()));
    }
    const int index = ParseIndex(fields[0], path, i + 1, index_column);
    if (static_cast<size_t>(index) != values.size()) {
      throw RowError(path, i + 1,
                     index_column + " indices must be dense and in order");
    }
    values.push_back(ParseDouble(fields[1], path, i + 1, value_column));
  }
  if (values.empty()) {
    throw std::runtime_error(path + ": no data rows");
  }
  return values;
}

}  // namespace

std::string FormatDouble(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void WriteObservationsCsv(const ObservationTable& table,
                          const std::string& path) {
  std::string out = "object,user,value\n";
  for (const Observation& e : table.entries()) {
    out += std::to_string(e.object);
    out += ',';
    out += std::to_string(e.user);
    out += ',';
    out += FormatDouble(e.value);
    out += '\n';
  }
  WriteFile(path, out);
}

ObservationTable ReadObservationsCsv(const std::string& path) {
  const std::vector<std::string> lines = ReadLines(path);
  if (lines.empty() || lines[0] != "object,user,value") {
    throw RowError(path, 1, "expected header 'object,user,value'");
  }
  std::vector<Observation> entries;
  int max_object = -1;
  int max_user = -1;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const std::vector<std::string> fields = SplitFields(lines[i]);
    if (fields.size() != 3) {
      throw RowError(path, i + 1, "expected 3 fields, got " +
                                      std::to_string(fields.size()));
    }
    Observation e;
    e.object = ParseIndex(fields[0], path, i + 1, "object");
    e.user = ParseIndex(fields[1], path, i + 1, "user");
    e.value = ParseDouble(fields[2], path, i + 1, "value");
    max_object = std::max(max_object, e.object);
    max_user = std::max(max_user, e.user);
    entries.push_back(e);
  }
  if (entries.empty()) {
    throw std::runtime_error(path + ": no data rows");
  }
  try {
    return ObservationTable(max_object + 1, max_user + 1, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void WriteObjectSeriesCsv(const std::string& value_column,
                          const std::vector<double>& values,
                          const std::string& path) {
  WriteSeries("object", value_column, values, path);
}

std::vector<double> ReadObjectSeriesCsv(const std::string& value_column,
                                        const std::string& path) {
  return ReadSeries("object", value_column, path);
}

void WriteUserSeriesCsv(const std::string& value_column,
                        const std::vector<double>& values,
                        const std::string& path) {
  WriteSeries("user", value_column, values, path);
}

std::vector<double> ReadUserSeriesCsv(const std::string& value_column,
                                      const std::string& path) {
  return ReadSeries("user", value_column, path);
}

}  // namespace privtruth
