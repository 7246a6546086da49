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

#include "report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "gnorm/errors.hpp"
#include "gnorm/json_io.hpp"

#ifndef GNORM_VERSION
#define GNORM_VERSION "0.0.0"
#endif

namespace gnorm::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json matrix_json(const HermitianMatrix& m) { return json::parse(write_matrix(m)); }

json norm_json(const NormResult& r, double requested_tol) {
  return {{"value", number(r.value)},
          {"upper_bound", number(r.primal_value)},
          {"lower_bound", number(r.dual_value)},
          {"gap", number(r.gap)},
          {"requested_tolerance", requested_tol},
          {"achieved_tolerance", number(r.achieved_tolerance())},
          {"method", to_string(r.method)},
          {"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"solves", r.solves}};
}

Report::Report(std::string command) {
  body_["command"] = std::move(command);
  body_["version"] = GNORM_VERSION;
  body_["inputs"] = json::array();
}

std::string Report::input(const std::string& path) {
  std::string text = read_text_file(path);
  body_["inputs"].push_back({{"path", path}, {"fnv1a", fnv1a_hex(text)}});
  return text;
}

void Report::emit(bool quiet, const std::string& path) const {
  const std::string doc = body_.dump(2);
  if (!quiet) {
    for (const auto& line : summary_) std::printf("%s\n", line.c_str());
  }
  std::printf("%s\n", doc.c_str());
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write report '" + path + "'");
    out << doc << '\n';
  }
}

}  // namespace gnorm::cli
