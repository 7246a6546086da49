// Copyright 2026 The gnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON reports shared by all subcommands.

#include <string>
#include <vector>

#include "gnorm/hermitian.hpp"
#include "gnorm/norms.hpp"
#include "json.hpp"

namespace gnorm::cli {

using nlohmann::json;

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// A number, or "inf" / "-inf" / "nan" for non-finite values.
json number(double v);

json matrix_json(const HermitianMatrix& m);

/// value, bounds, gap, achieved tolerance and solver statistics.
json norm_json(const NormResult& r, double requested_tol);

class Report {
 public:
  explicit Report(std::string command);

  /// Reads a file, records its digest and returns the contents.
  std::string input(const std::string& path);
  json& operator[](const std::string& key) { return body_[key]; }
  void summary(std::string line) { summary_.push_back(std::move(line)); }

  /// Writes the summary (unless quiet) and the JSON document to stdout,
  /// and the JSON document to `path` when it is non-empty.
  void emit(bool quiet, const std::string& path) const;

 private:
  json body_;
  std::vector<std::string> summary_;
};

}  // namespace gnorm::cli
