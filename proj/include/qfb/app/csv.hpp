// Copyright 2026 The qfeedback Authors
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

#ifndef QFB_APP_CSV_HPP_
#define QFB_APP_CSV_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace qfb::app {

/// Scientific notation with 15 significant digits, '.' as the decimal point
/// regardless of locale.
std::string format_number(double v);

/// Accumulates rows in memory; LF line endings, no quoting (fields never
/// contain commas).
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& fields);
  const std::string& text() const { return text_; }
  std::size_t columns() const { return columns_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Writes text to path in binary mode; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);

/// Writes PATH.meta.json next to an output file.
void write_sidecar(const std::string& out_path, const nlohmann::json& meta);

}  // namespace qfb::app

#endif  // QFB_APP_CSV_HPP_
