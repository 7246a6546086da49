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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnorm/choi.hpp"
#include "gnorm/decision.hpp"
#include "gnorm/section.hpp"

namespace gnorm {

// Readers throw InputError naming the offending field for malformed input.
// Matrices are read in strict mode: asymmetry above 1e-8 is rejected.

/// {"dims": [...], "matrix": [[[re, im], ...], ...]}; bare numbers are
/// accepted as real entries and "dims" is optional.
HermitianMatrix parse_matrix(std::string_view text);
HermitianMatrix read_matrix_file(const std::string& path);
/// Full-precision JSON for a matrix.
std::string write_matrix(const HermitianMatrix& m);
void write_matrix_file(const std::string& path, const HermitianMatrix& m);

/// A list of complex (rectangular) matrices, or {"kraus": [...]}.
KrausMap parse_kraus(std::string_view text);
KrausMap read_kraus_file(const std::string& path);

/// Section descriptor, e.g. {"kind": "channels", "dims": [2, 2]}.
///   states: dims [d]; singleton: matrix; channels: dims [dim_in, dim_out];
///   combs: dims [H_0, ..., H_n]; generalized: base, output_dim;
///   povm: base, outcomes; identity_tensor: base, copies; dual: base;
///   custom: basis, normalizer, optional interior and dims.
Section parse_section(std::string_view text);
Section read_section_file(const std::string& path);

struct ExperimentSpec {
  Experiment experiment;
  DecisionProblem problem;
};
/// {"section": ..., "family": [...], "prior": [...],
///  "payoff": {"kind": "classical", "table": [[...]]} |
///            {"kind": "quantum", "operators": [...]}}
ExperimentSpec parse_experiment(std::string_view text);
ExperimentSpec read_experiment_file(const std::string& path);

/// {"effects": [matrices]} or {"choi": matrix}.
struct Candidate {
  std::optional<std::vector<HermitianMatrix>> effects;
  std::optional<HermitianMatrix> choi;
};
Candidate parse_candidate(std::string_view text);
Candidate read_candidate_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace gnorm
