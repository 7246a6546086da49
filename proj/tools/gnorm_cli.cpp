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

// gnorm: base norms, decision problems and certificates from the shell.
//
// Exit codes: 0 success, 1 input error, 2 solver did not converge,
// 3 infeasible candidate or validation failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gnorm/decision.hpp"
#include "gnorm/errors.hpp"
#include "gnorm/json_io.hpp"
#include "gnorm/norms.hpp"
#include "report.hpp"

namespace gnorm::cli {
namespace {

enum Exit { kOk = 0, kInput = 1, kNoConvergence = 2, kInfeasible = 3 };

struct Common {
  double tol = default_tolerance();
  int max_iter = 50000;
  std::string report_path;
  bool quiet = false;
};

NormOptions options_of(const Common& c) { return {c.tol, c.max_iter}; }

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Parses a file recorded in the report; errors are prefixed with its path.
template <class F>
auto load(Report& r, const std::string& path, F parse) {
  const std::string text = r.input(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

HermitianMatrix load_matrix(Report& r, const std::string& path) {
  return load(r, path, [](const std::string& t) { return parse_matrix(t); });
}

// A channel given as a Choi matrix with dims [out, in] or as Kraus operators.
ChoiMatrix load_channel(Report& r, const std::string& path) {
  return load(r, path, [](const std::string& t) {
    const auto j = json::parse(t, nullptr, false);
    if (!j.is_discarded() && (j.is_array() || j.contains("kraus"))) return choi_of_kraus(parse_kraus(t));
    const HermitianMatrix x = parse_matrix(t);
    if (x.subsystem_dims().size() != 2) throw InputError("field 'dims': a Choi matrix needs [dim_out, dim_in]");
    return ChoiMatrix(x);
  });
}

void require_channel(const ChoiMatrix& x, const std::string& path) {
  if (!is_channel(x, 1e-8)) throw ValidationError(path + ": not the Choi matrix of a channel");
}

void require_state(const HermitianMatrix& x, const std::string& path) {
  if (!psd_check(x, 1e-8) || std::abs(x.trace() - 1.0) > 1e-8) {
    throw ValidationError(path + ": not a density matrix");
  }
}

int norm_exit(const NormResult& n) { return n.converged() ? kOk : kNoConvergence; }

void write_witnesses(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write witness file '" + path + "'");
  out << doc.dump(2) << '\n';
}

std::string status_line(const NormResult& n) {
  return "  gap " + fmt(n.gap) + ", achieved tolerance " + fmt(n.achieved_tolerance()) + ", method " +
         to_string(n.method) + ", status " + to_string(n.status) + ", " + std::to_string(n.iterations) +
         " iterations";
}

// --- subcommands -----------------------------------------------------------

struct NormArgs {
  std::string section, matrix, witness_out;
  bool dual = false;
};

int run_norm(const NormArgs& a, const Common& c) {
  Report r(a.dual ? "norm --dual" : "norm");
  const Section s = load(r, a.section, [](const std::string& t) { return parse_section(t); });
  const HermitianMatrix x = load_matrix(r, a.matrix);
  const NormResult n = a.dual ? dual_base_norm(s, x, options_of(c)) : base_norm(s, x, options_of(c));
  r["section"] = s.label().to_string();
  r["result"] = norm_json(n, c.tol);
  r.summary(std::string(a.dual ? "dual norm" : "norm") + " = " + fmt(n.value) + " on " + s.label().to_string());
  r.summary(status_line(n));
  if (!a.witness_out.empty()) {
    write_witnesses(a.witness_out, {{"primal", matrix_json(n.primal_witness)},
                                    {"dual_positive", matrix_json(n.dual_witness_pos)},
                                    {"dual_negative", matrix_json(n.dual_witness_neg)}});
    r["witness_file"] = a.witness_out;
  }
  r.emit(c.quiet, c.report_path);
  return norm_exit(n);
}

int run_dmax(const std::string& fa, const std::string& fb, const Common& c) {
  Report r("dmax");
  const HermitianMatrix a = load_matrix(r, fa);
  const HermitianMatrix b = load_matrix(r, fb);
  const double v = dmax(a, b);
  r["value"] = number(v);
  r.summary("D_max = " + fmt(v) + " bits");
  r.emit(c.quiet, c.report_path);
  return kOk;
}

int run_helstrom(const std::string& f0, const std::string& f1, double lambda, const Common& c) {
  Report r("helstrom");
  const HermitianMatrix r0 = load_matrix(r, f0);
  const HermitianMatrix r1 = load_matrix(r, f1);
  require_state(r0, f0);
  require_state(r1, f1);
  const TestResult t = helstrom(r0, r1, lambda);
  r["lambda"] = lambda;
  r["error"] = t.error;
  r["effects"] = {matrix_json(t.effects[0]), matrix_json(t.effects[1])};
  r.summary("minimal error = " + fmt(t.error) + " at lambda " + fmt(lambda));
  r.emit(c.quiet, c.report_path);
  return kOk;
}

int run_diamond(const std::string& f0, const std::string& f1, double lambda, const Common& c) {
  Report r("diamond");
  const ChoiMatrix x0 = load_channel(r, f0);
  const ChoiMatrix x1 = load_channel(r, f1);
  require_channel(x0, f0);
  require_channel(x1, f1);
  if (x0.dim_in() != x1.dim_in() || x0.dim_out() != x1.dim_out()) throw ShapeError("channels differ in shape");
  const HermitianMatrix diff = lambda * x0.matrix() - (1.0 - lambda) * x1.matrix();
  const NormResult n = diamond_norm(ChoiMatrix(diff, x0.dim_out(), x0.dim_in()), options_of(c));
  r["lambda"] = lambda;
  r["result"] = norm_json(n, c.tol);
  r["error"] = 0.5 * (1.0 - n.value);
  r.summary("norm of lambda X0 - (1 - lambda) X1 = " + fmt(n.value) + ", minimal error " + fmt(0.5 * (1.0 - n.value)));
  r.summary(status_line(n));
  r.emit(c.quiet, c.report_path);
  return norm_exit(n);
}

int run_comb_norm(const std::vector<int>& dims, const std::string& f, const Common& c) {
  Report r("comb-norm");
  const HermitianMatrix x = load_matrix(r, f);
  const NormResult n = ncomb_norm(dims, x, options_of(c));
  r["dims"] = dims;
  r["result"] = norm_json(n, c.tol);
  r.summary("comb norm = " + fmt(n.value));
  r.summary(status_line(n));
  r.emit(c.quiet, c.report_path);
  return norm_exit(n);
}

int run_hmin(const std::vector<int>& dims_arg, const std::string& f, const Common& c) {
  Report r("hmin");
  const HermitianMatrix sigma = load_matrix(r, f);
  std::vector<int> dims = dims_arg.empty() ? sigma.subsystem_dims() : dims_arg;
  if (dims.size() != 2) throw InputError("--dims: expected the two factors K,H of the state");
  const HminResult h = hmin(sigma, dims[1], dims[0], options_of(c));
  r["dims"] = dims;
  r["value"] = number(h.value);
  r["result"] = norm_json(h.norm, c.tol);
  r.summary("H_min(K|H) = " + fmt(h.value) + " bits");
  r.summary(status_line(h.norm));
  r.emit(c.quiet, c.report_path);
  return norm_exit(h.norm);
}

int run_certify(const std::string& fc, const std::string& fe, const std::string& witness_out, const Common& c) {
  Report r("certify");
  const Candidate cand = load(r, fc, [](const std::string& t) { return parse_candidate(t); });
  const ExperimentSpec setup = load(r, fe, [](const std::string& t) { return parse_experiment(t); });
  const Certificate cert = cand.effects ? certify_optimal(*cand.effects, setup.experiment, setup.problem, options_of(c))
                                        : certify_optimal(*cand.choi, setup.experiment, setup.problem, options_of(c));
  r["feasible"] = cert.feasible;
  r["slack"] = number(cert.slack);
  r["product_residual"] = number(cert.product_residual);
  r["optimum"] = number(cert.optimum);
  r["candidate_value"] = number(cert.candidate_value);
  r["requested_tolerance"] = c.tol;
  r.summary(std::string(cert.feasible ? "optimal" : "NOT optimal") + ": payoff " + fmt(cert.candidate_value) +
            " vs optimum " + fmt(cert.optimum) + ", slack " + fmt(cert.slack));
  if (!witness_out.empty() && cert.witness_q) {
    write_witnesses(witness_out, {{"q", matrix_json(*cert.witness_q)}});
    r["witness_file"] = witness_out;
  }
  r.emit(c.quiet, c.report_path);
  return cert.feasible ? kOk : kInfeasible;
}

int run_tester_check(const std::string& f0, const std::string& f1, double lambda, double tol, const Common& c) {
  Report r("tester-check");
  const ChoiMatrix x0 = load_channel(r, f0);
  const ChoiMatrix x1 = load_channel(r, f1);
  const TesterCheck t = max_entangled_tester_exists(x0, x1, lambda, tol);
  r["lambda"] = lambda;
  r["exists"] = t.exists;
  r["residual"] = t.residual;
  r["tolerance"] = tol;
  r["marginal"] = matrix_json(t.marginal);
  r.summary(std::string("maximally entangled optimal tester ") + (t.exists ? "exists" : "does not exist") +
            " (residual " + fmt(t.residual) + ")");
  r.emit(c.quiet, c.report_path);
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"gnorm: base norms on sections of the PSD cone"};
  app.set_version_flag("--version", GNORM_VERSION);
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool solver) {
    sub->add_option("--report", common.report_path, "Also write the JSON report to this file");
    sub->add_flag("--quiet", common.quiet, "Print only the JSON report");
    if (solver) {
      sub->add_option("--tol", common.tol, "Relative gap tolerance")->check(CLI::PositiveNumber);
      sub->add_option("--max-iter", common.max_iter, "Iteration cap per solve")->check(CLI::PositiveNumber);
    }
  };
  auto prob = CLI::Range(0.0, 1.0);

  NormArgs norm;
  auto* s_norm = app.add_subcommand("norm", "Base norm (or dual norm) of a matrix on a section");
  s_norm->add_option("section", norm.section, "Section descriptor file")->required();
  s_norm->add_option("matrix", norm.matrix, "Matrix file")->required();
  s_norm->add_flag("--dual", norm.dual, "Use the order-unit norm of the dual section");
  s_norm->add_option("--witness-out", norm.witness_out, "Write primal and dual witnesses to this file");
  add_common(s_norm, true);

  std::string fa, fb, witness;
  double lambda = 0.5, tester_tol = 1e-7;
  std::vector<int> dims;

  auto* s_dmax = app.add_subcommand("dmax", "Max-relative entropy D_max(a||b)");
  s_dmax->add_option("a", fa)->required();
  s_dmax->add_option("b", fb)->required();
  add_common(s_dmax, false);

  auto* s_hel = app.add_subcommand("helstrom", "Minimal error for two density matrices");
  s_hel->add_option("rho0", fa)->required();
  s_hel->add_option("rho1", fb)->required();
  s_hel->add_option("--lambda", lambda, "Prior of rho0")->check(prob);
  add_common(s_hel, false);

  auto* s_dia = app.add_subcommand("diamond", "Channel discrimination norm of lambda X0 - (1 - lambda) X1");
  s_dia->add_option("choi0", fa, "Choi matrix (dims [out, in]) or Kraus file")->required();
  s_dia->add_option("choi1", fb)->required();
  s_dia->add_option("--lambda", lambda, "Prior of the first channel")->check(prob);
  add_common(s_dia, true);

  auto* s_comb = app.add_subcommand("comb-norm", "Norm on deterministic combs");
  s_comb->add_option("matrix", fa)->required();
  s_comb->add_option("--dims", dims, "H_0,...,H_n")->required()->delimiter(',')->check(CLI::PositiveNumber);
  add_common(s_comb, true);

  auto* s_hmin = app.add_subcommand("hmin", "Conditional min-entropy H_min(K|H)");
  s_hmin->add_option("state", fa)->required();
  s_hmin->add_option("--dims", dims, "K,H (defaults to the matrix dims)")->delimiter(',')->check(CLI::PositiveNumber);
  add_common(s_hmin, true);

  auto* s_cert = app.add_subcommand("certify", "Check optimality of a procedure or POVM");
  s_cert->add_option("candidate", fa)->required();
  s_cert->add_option("experiment", fb)->required();
  s_cert->add_option("--witness-out", witness, "Write the slackness witness q to this file");
  add_common(s_cert, true);

  auto* s_test = app.add_subcommand("tester-check", "Is a maximally entangled input optimal?");
  s_test->add_option("choi0", fa)->required();
  s_test->add_option("choi1", fb)->required();
  s_test->add_option("--lambda", lambda)->check(prob);
  s_test->add_option("--tol", tester_tol, "Residual tolerance")->check(CLI::PositiveNumber);
  add_common(s_test, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*s_norm) return run_norm(norm, common);
    if (*s_dmax) return run_dmax(fa, fb, common);
    if (*s_hel) return run_helstrom(fa, fb, lambda, common);
    if (*s_dia) return run_diamond(fa, fb, lambda, common);
    if (*s_comb) return run_comb_norm(dims, fa, common);
    if (*s_hmin) return run_hmin(dims, fa, common);
    if (*s_cert) return run_certify(fa, fb, witness, common);
    if (*s_test) return run_tester_check(fa, fb, lambda, tester_tol, common);
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const ShapeError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kInfeasible;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kInfeasible;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kInput;
}

}  // namespace gnorm::cli

int main(int argc, char** argv) { return gnorm::cli::run(argc, argv); }
