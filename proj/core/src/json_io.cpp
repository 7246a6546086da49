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

#include "gnorm/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "gnorm/errors.hpp"
#include "json.hpp"

namespace gnorm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

json parse_text(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(path, "expected a positive integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of positive integers");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(positive_int(j[i], index(path, i)));
  return out;
}

Complex entry(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or a [re, im] pair");
}

CMatrix complex_rows(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(index(path, 0), "expected a non-empty row");
  const size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    const std::string rp = index(path, r);
    if (!j[r].is_array() || j[r].size() != cols) fail(rp, "row length differs from the first row");
    for (size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry(j[r][c], index(rp, c));
    }
  }
  return m;
}

HermitianMatrix matrix_value(const json& j, const std::string& path) {
  // Either a matrix object or a bare array of rows.
  const json* rows = &j;
  std::vector<int> dims;
  std::string rows_path = path;
  if (j.is_object()) {
    rows = &require(j, "matrix", path);
    rows_path = join(path, "matrix");
    if (j.contains("dims")) dims = int_list(j["dims"], join(path, "dims"));
  }
  CMatrix m = complex_rows(*rows, rows_path);
  if (m.rows() != m.cols()) fail(rows_path, "matrix is not square");
  if (!dims.empty()) {
    long prod = 1;
    for (int d : dims) prod *= d;
    if (prod != m.rows()) fail(join(path, "dims"), "product of dims does not match the matrix size");
  }
  try {
    return HermitianMatrix(std::move(m), std::move(dims), Strictness::strict);
  } catch (const ValidationError& e) {
    fail(rows_path, e.what());
  }
}

std::vector<HermitianMatrix> matrix_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of matrices");
  std::vector<HermitianMatrix> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(matrix_value(j[i], index(path, i)));
  return out;
}

Section section_value(const json& j, const std::string& path) {
  const json& kind_j = require(j, "kind", path);
  if (!kind_j.is_string()) fail(join(path, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  auto dims_or = [&](size_t n) {
    const std::vector<int> d = int_list(require(j, "dims", path), join(path, "dims"));
    if (n != 0 && d.size() != n) fail(join(path, "dims"), "expected " + std::to_string(n) + " entries");
    return d;
  };
  auto count = [&](const char* key) -> int {
    if (j.contains(key)) return positive_int(j[key], join(path, key));
    const std::vector<int> d = dims_or(1);
    return d[0];
  };
  auto base = [&] { return section_value(require(j, "base", path), join(path, "base")); };

  if (kind == "states") return states_section(dims_or(1)[0]);
  if (kind == "singleton") return singleton_section(matrix_value(require(j, "matrix", path), join(path, "matrix")));
  if (kind == "channels") {
    const auto d = dims_or(2);
    return channels_section(d[0], d[1]);
  }
  if (kind == "combs") {
    const auto d = dims_or(0);
    if (d.size() < 2) fail(join(path, "dims"), "a comb needs at least two systems");
    return comb_section(d);
  }
  if (kind == "generalized") return generalized_section(base(), count("output_dim"));
  if (kind == "povm") return povm_section(base(), count("outcomes"));
  if (kind == "identity_tensor") return identity_tensor_section(base(), count("copies"));
  if (kind == "dual") return dual_section(base());
  if (kind == "custom") {
    const auto basis = matrix_list(require(j, "basis", path), join(path, "basis"));
    const HermitianMatrix normalizer = matrix_value(require(j, "normalizer", path), join(path, "normalizer"));
    std::optional<HermitianMatrix> hint;
    if (j.contains("interior")) hint = matrix_value(j["interior"], join(path, "interior"));
    std::vector<int> dims;
    if (j.contains("dims")) dims = int_list(j["dims"], join(path, "dims"));
    return custom_section(basis, normalizer, hint, dims);
  }
  fail(join(path, "kind"), "unknown section kind '" + kind + "'");
}

json matrix_json(const HermitianMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dims", m.layout()}, {"matrix", std::move(rows)}};
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

HermitianMatrix parse_matrix(std::string_view text) { return matrix_value(parse_text(text, "matrix"), ""); }

HermitianMatrix read_matrix_file(const std::string& path) {
  return matrix_value(parse_text(read_text_file(path), path), path);
}

std::string write_matrix(const HermitianMatrix& m) {
  // Shortest round-trip representation of each double.
  return matrix_json(m).dump(-1, ' ', false, json::error_handler_t::strict);
}

void write_matrix_file(const std::string& path, const HermitianMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << write_matrix(m) << '\n';
}

KrausMap parse_kraus(std::string_view text) {
  const json j = parse_text(text, "kraus");
  const json* list = &j;
  std::string path;
  if (j.is_object()) {
    list = &require(j, "kraus", "");
    path = "kraus";
  }
  if (!list->is_array() || list->empty()) fail(path, "expected a non-empty array of matrices");
  std::vector<CMatrix> ops;
  for (size_t i = 0; i < list->size(); ++i) {
    const json& item = (*list)[i];
    const std::string p = index(path, i);
    ops.push_back(item.is_object() ? complex_rows(require(item, "matrix", p), join(p, "matrix")) : complex_rows(item, p));
  }
  try {
    return KrausMap(std::move(ops));
  } catch (const ShapeError& e) {
    fail(path, e.what());
  }
}

KrausMap read_kraus_file(const std::string& path) { return parse_kraus(read_text_file(path)); }

Section parse_section(std::string_view text) { return section_value(parse_text(text, "section"), ""); }

Section read_section_file(const std::string& path) { return parse_section(read_text_file(path)); }

ExperimentSpec parse_experiment(std::string_view text) {
  const json j = parse_text(text, "experiment");
  Section section = section_value(require(j, "section", ""), "section");
  std::vector<HermitianMatrix> family = matrix_list(require(j, "family", ""), "family");
  const json& prior_j = require(j, "prior", "");
  if (!prior_j.is_array()) fail("prior", "expected an array of numbers");
  std::vector<double> prior;
  for (size_t i = 0; i < prior_j.size(); ++i) prior.push_back(number(prior_j[i], index("prior", i)));

  const json& pay = require(j, "payoff", "");
  const json& kind_j = require(pay, "kind", "payoff");
  if (!kind_j.is_string()) fail("payoff.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  DecisionProblem problem;
  if (kind == "classical") {
    const json& t = require(pay, "table", "payoff");
    if (!t.is_array() || t.empty()) fail("payoff.table", "expected a non-empty array of rows");
    std::vector<std::vector<double>> table;
    for (size_t r = 0; r < t.size(); ++r) {
      const std::string rp = index("payoff.table", r);
      if (!t[r].is_array()) fail(rp, "expected an array of numbers");
      std::vector<double> row;
      for (size_t c = 0; c < t[r].size(); ++c) row.push_back(number(t[r][c], index(rp, c)));
      table.push_back(std::move(row));
    }
    problem = DecisionProblem::classical(std::move(table));
  } else if (kind == "quantum") {
    problem = DecisionProblem::quantum(matrix_list(require(pay, "operators", "payoff"), "payoff.operators"));
  } else {
    fail("payoff.kind", "expected 'classical' or 'quantum'");
  }
  if (problem.num_hypotheses() != static_cast<int>(family.size())) {
    fail("payoff", "number of hypotheses differs from the family size");
  }
  return {Experiment(std::move(section), std::move(family), std::move(prior)), std::move(problem)};
}

ExperimentSpec read_experiment_file(const std::string& path) { return parse_experiment(read_text_file(path)); }

Candidate parse_candidate(std::string_view text) {
  const json j = parse_text(text, "candidate");
  if (!j.is_object()) fail("", "expected an object with 'effects' or 'choi'");
  Candidate c;
  if (j.contains("effects")) c.effects = matrix_list(j["effects"], "effects");
  if (j.contains("choi")) c.choi = matrix_value(j["choi"], "choi");
  if (!c.effects && !c.choi) fail("effects", "missing (or give 'choi')");
  if (c.effects && c.choi) fail("choi", "give either 'effects' or 'choi', not both");
  return c;
}

Candidate read_candidate_file(const std::string& path) { return parse_candidate(read_text_file(path)); }

}  // namespace gnorm
