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

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "gnorm/errors.hpp"
#include "gnorm/json_io.hpp"
#include "oracles.hpp"

using namespace gnorm;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("json-io") {

TEST_CASE("matrices round-trip bit-exactly") {
  oracles::Rng rng(91);
  for (int d = 1; d <= 4; ++d) {
    const HermitianMatrix x = oracles::random_hermitian(d, rng).with_subsystem_dims(d == 4 ? std::vector<int>{2, 2}
                                                                                           : std::vector<int>{});
    const HermitianMatrix y = parse_matrix(write_matrix(x));
    CHECK(y.matrix() == x.matrix());
    CHECK(y.layout() == x.layout());
  }
  const auto path = (std::filesystem::temp_directory_path() / "gnorm_roundtrip.json").string();
  const HermitianMatrix x = oracles::random_density(3, rng);
  write_matrix_file(path, x);
  CHECK(read_matrix_file(path).matrix() == x.matrix());
  std::remove(path.c_str());
}

TEST_CASE("matrix entries may be real numbers") {
  const HermitianMatrix x = parse_matrix(R"({"matrix": [[1, [0, 1]], [[0, -1], 2]]})");
  CHECK(x.dim() == 2);
  CHECK(x(0, 1) == Complex(0.0, 1.0));
  CHECK(x(1, 1) == Complex(2.0, 0.0));
}

TEST_CASE("matrix errors name the field") {
  CHECK(error_of([] { parse_matrix(R"({"dims": [2]})"); }).find("'matrix'") != std::string::npos);
  CHECK(error_of([] { parse_matrix(R"({"matrix": [[1, 2], [3, 4]]})"); }).find("'matrix'") != std::string::npos);
  CHECK(error_of([] { parse_matrix(R"({"matrix": [[1, 0], [0]]})"); }).find("matrix") != std::string::npos);
  CHECK(error_of([] { parse_matrix(R"({"matrix": [[1, "a"], [0, 1]]})"); }).find("matrix[0][1]") !=
        std::string::npos);
  CHECK(error_of([] { parse_matrix(R"({"dims": [3], "matrix": [[1, 0], [0, 1]]})"); }).find("dims") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_matrix("{not json"), InputError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/gnorm.json"), InputError);
}

TEST_CASE("Kraus maps") {
  const KrausMap k = parse_kraus(R"({"kraus": [[[1, 0], [0, 1]]]})");
  CHECK(is_channel(choi_of_kraus(k)));
  const KrausMap l = parse_kraus(R"([[[1, 0], [0, -1]]])");
  CHECK(is_channel(choi_of_kraus(l)));
  CHECK_THROWS_AS(parse_kraus(R"({"kraus": 3})"), InputError);
}

TEST_CASE("section descriptors") {
  CHECK(parse_section(R"({"kind": "states", "dims": [3]})").ambient_dim() == 3);
  const Section ch = parse_section(R"({"kind": "channels", "dims": [2, 3]})");
  CHECK(ch.ambient_dim() == 6);
  CHECK(ch.span_dimension() == 33);
  CHECK(parse_section(R"({"kind": "combs", "dims": [2, 2, 2]})").ambient_dim() == 8);
  const Section pv = parse_section(R"({"kind": "povm", "base": {"kind": "states", "dims": [2]}, "outcomes": 3})");
  CHECK(pv.ambient_dim() == 6);
  const Section du = parse_section(R"({"kind": "dual", "base": {"kind": "states", "dims": [2]}})");
  CHECK(du.contains(HermitianMatrix::identity(2)));
  const Section cu = parse_section(
      R"({"kind": "custom", "basis": [{"matrix": [[1, 0], [0, 1]]}, {"matrix": [[1, 0], [0, -1]]}],
          "normalizer": {"matrix": [[1, 0], [0, 1]]}})");
  CHECK(cu.span_dimension() == 2);
  CHECK(error_of([] { parse_section(R"({"kind": "states"})"); }).find("dims") != std::string::npos);
  CHECK(error_of([] { parse_section(R"({"kind": "banana"})"); }).find("kind") != std::string::npos);
  CHECK(error_of([] { parse_section(R"({"kind": "povm", "base": {"kind": "states", "dims": [0]}, "outcomes": 2})"); })
            .find("base.dims[0]") != std::string::npos);
}

TEST_CASE("experiments and candidates") {
  const std::string text = R"({
    "section": {"kind": "states", "dims": [2]},
    "family": [{"matrix": [[1, 0], [0, 0]]}, {"matrix": [[0.5, 0.5], [0.5, 0.5]]}],
    "prior": [0.5, 0.5],
    "payoff": {"kind": "classical", "table": [[1, 0], [0, 1]]}})";
  const ExperimentSpec e = parse_experiment(text);
  CHECK(e.experiment.size() == 2);
  CHECK(e.problem.decision_dim() == 2);
  const std::string broken = R"({
    "section": {"kind": "states", "dims": [2]},
    "family": [{"matrix": [[1, 0], [0, 0]]}, {"matrix": [[0.5, 0.5], [0.4, 0.5]]}],
    "prior": [0.5, 0.5],
    "payoff": {"kind": "classical", "table": [[1, 0], [0, 1]]}})";
  CHECK(error_of([&] { parse_experiment(broken); }).find("family[1].matrix") != std::string::npos);
  CHECK(error_of([] { parse_experiment(R"({"section": {"kind": "states", "dims": [2]}})"); }).find("family") !=
        std::string::npos);
  const Candidate c = parse_candidate(R"({"effects": [{"matrix": [[1, 0], [0, 0]]}, {"matrix": [[0, 0], [0, 1]]}]})");
  REQUIRE(c.effects.has_value());
  CHECK(c.effects->size() == 2);
  CHECK_FALSE(c.choi.has_value());
  CHECK_THROWS_AS(parse_candidate(R"({"other": 1})"), InputError);
}

}  // TEST_SUITE
