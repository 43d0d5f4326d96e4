// Copyright 2026 The hamforge Authors
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

// Command-line front end: build, verify, evolve, count and primitive.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hamforge/assembly.hpp"
#include "hamforge/errors.hpp"
#include "hamforge/evolution.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/qsvt.hpp"
#include "hamforge/reference.hpp"
#include "hamforge/resources.hpp"
#include "hamforge/simulator.hpp"

using namespace hamforge;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Outputs are staged and written only once the command has succeeded.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;

  void add(const std::string& path, std::string content) {
    if (!path.empty()) files.emplace_back(path, std::move(content));
  }
  void commit() const {
    for (const auto& [path, content] : files) {
      const std::string tmp = path + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw SchemaError("cannot write '" + path + "'");
        out << content;
      }
      std::filesystem::rename(tmp, path);
    }
  }
};

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json descriptor_json(const BlockEncodingDescriptor& d) {
  return {{"scale", d.scale},
          {"flag_qubits", d.flag_qubits},
          {"error", d.error},
          {"data_register", d.data_register},
          {"flag_registers", d.flag_registers},
          {"pure_ancilla_registers", d.pure_ancilla_registers}};
}

json ledger_json(const NormalizationLedger& led) {
  json terms = json::array();
  for (const auto& t : led.terms) {
    json factors = json::array();
    for (const auto& f : t.factors)
      factors.push_back({{"l", f.l}, {"n_p", f.n_p}, {"c_x", f.c_x}, {"c_p", f.c_p}});
    terms.push_back({{"alpha", cplx_json(t.alpha)},
                     {"weight", t.weight},
                     {"amplitude", cplx_json(t.amplitude)},
                     {"factors", factors}});
  }
  return {{"n_h", led.n_h},
          {"scale", led.scale},
          {"l", led.h_pattern.l},
          {"bands", led.h_pattern.bands()},
          {"offsets", led.h_pattern.offsets},
          {"terms", terms}};
}

json manifest(const std::string& command, const std::string& spec_text, const json& tolerances,
              const std::vector<std::string>& outputs, double seconds) {
  return {{"command", command},
          {"spec_digest", digest(spec_text)},
          {"version", kVersion},
          {"tolerances", tolerances},
          {"outputs", outputs},
          {"wall_clock_s", seconds}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Qubits of the Hamiltonian encoding before the adder and ladder pool.
int qubit_floor(const HamiltonianSpec& spec) {
  int amax = 0;
  for (int y = 0; y < spec.num_dims(); ++y) amax = std::max(amax, spec.dim(y).n);
  return selector_qubits(spec) + 3 * spec.num_dims() + 2 * spec.data_qubits() + amax + 1;
}

void check_cap(int qubits, int cap, const std::string& what) {
  if (qubits > cap)
    throw TractabilityError(what + " needs " + std::to_string(qubits) + " simulated qubits, cap is " +
                            std::to_string(cap));
}

void emit(const std::string& path, const std::string& text, Outputs& out) {
  if (path.empty() || path == "-") std::cout << text;
  else out.add(path, text);
}

struct Common {
  std::string spec;
  std::string out;
  std::string report;
};

int cmd_build(const Common& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(o.spec);
  const auto spec = parse_spec(text);
  const auto he = build_U_H(spec);
  const auto audit = audit_hamiltonian(spec, he);
  Outputs out;
  out.add(o.out, export_gates(*he.enc.circuit));
  json rep;
  rep["manifest"] = manifest("build", text, json::object(), {o.out, o.report}, seconds_since(t0));
  rep["descriptor"] = descriptor_json(he.enc.desc);
  rep["qubits"] = he.enc.circuit->num_qubits();
  rep["ledger"] = ledger_json(he.ledger);
  rep["resources"] = json::parse(audit.to_json());
  rep["resources_failed"] = audit.failed();
  emit(o.report, rep.dump(2) + "\n", out);
  out.commit();
  return 0;
}

int cmd_verify(const Common& o, double tol, int cap, const std::string& gates) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(o.spec);
  const auto spec = parse_spec(text);
  check_cap(qubit_floor(spec), cap, "the Hamiltonian encoding");
  const auto he = build_U_H(spec);
  CircuitPtr circuit = he.enc.circuit;
  if (!gates.empty()) {
    circuit = parse_gates(read_file(gates));
    if (circuit->registers() != he.enc.circuit->registers())
      throw WidthMismatch("gate file registers differ from the encoding of this spec");
  }
  check_cap(Simulator(circuit).num_bits(), cap, "the Hamiltonian encoding");
  const DenseMatrix target = build_hamiltonian_dense(spec);
  const auto chk = assert_block_equals(circuit, he.enc.desc, target, tol);
  // A wrong block already decides the verdict; the purity sweep is skipped then.
  // Gate files are flat, so their purity sweep samples fewer inputs.
  const std::int64_t inputs = gates.empty() ? std::int64_t{1} << 12 : 256;
  const auto pur = chk.pass ? check_purity(circuit, inputs) : PurityReport{};
  const auto audit = audit_hamiltonian(spec, he);

  Eigen::Index wi = 0, wj = 0;
  const DenseMatrix diff = he.enc.desc.scale * chk.block - target;
  const double worst = diff.cwiseAbs().maxCoeff(&wi, &wj);
  const bool pure_ok = pur.strict_leak <= 1e-10 && pur.conditional_leak <= 1e-10;
  const bool pass = chk.pass && pure_ok && !audit.failed();

  json rep;
  rep["manifest"] = manifest("verify", text, {{"tol", tol}, {"purity", 1e-10}}, {o.report}, seconds_since(t0));
  rep["descriptor"] = descriptor_json(he.enc.desc);
  rep["block"] = {{"spectral", chk.spectral}, {"max_entry", chk.max_entry}, {"worst_entry", {wi, wj}}};
  rep["purity"] = {{"inputs", pur.inputs},
                   {"exhaustive", pur.exhaustive},
                   {"strict_leak", pur.strict_leak},
                   {"conditional_leak", pur.conditional_leak}};
  rep["resources"] = json::parse(audit.to_json());
  rep["pass"] = pass;
  Outputs out;
  emit(o.report, rep.dump(2) + "\n", out);
  out.commit();
  if (pass) return 0;
  if (!chk.pass)
    std::cerr << "verification failed: block entry (" << wi << ", " << wj << ") deviates by " << worst << "\n";
  else if (!pure_ok)
    std::cerr << "verification failed: pure ancilla residual " << std::max(pur.strict_leak, pur.conditional_leak)
              << "\n";
  else
    std::cerr << "verification failed: a strict resource bound is exceeded\n";
  return static_cast<int>(ErrorCategory::verification);
}

DenseMatrix exp_i(const DenseMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const Eigen::VectorXcd ph = (cplx(0, t) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

int cmd_evolve(const Common& o, double t, double eps, int cap) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(o.spec);
  const auto spec = parse_spec(text);
  const auto ev = build_evolution_be(spec, t, eps);
  Outputs out;
  out.add(o.out, export_gates(*ev.enc.circuit));
  json rep;
  rep["descriptor"] = descriptor_json(ev.enc.desc);
  rep["g"] = ev.trunc.g;
  rep["g_estimate"] = ev.trunc.estimate;
  rep["alpha_t"] = ev.ham.enc.desc.scale * std::abs(t);
  rep["queries"] = ev.queries;
  rep["even_scale"] = ev.polys.even_scale;
  rep["odd_scale"] = ev.polys.odd_scale;
  rep["counts"] = {{"one_qubit", ev.enc.circuit->counts().one_qubit},
                   {"cnot", ev.enc.circuit->counts().cnot},
                   {"pure_ancillas", ev.enc.circuit->counts().pure_ancillas}};
  bool pass = true;
  const int bits = Simulator(ev.enc.circuit).num_bits();
  if (bits <= cap) {
    const auto res = extract_block(ev.enc.circuit, ev.enc.desc);
    const double err = spectral_norm(2.0 * res.block - exp_i(build_hamiltonian_dense(spec), t));
    rep["measured_error"] = err;
    pass = err <= eps;
  } else {
    rep["measured_error"] = nullptr;
    rep["skipped"] = "simulation needs " + std::to_string(bits) + " qubits";
  }
  rep["pass"] = pass;
  rep["manifest"] = manifest("evolve", text, {{"eps", eps}, {"time", t}}, {o.out, o.report}, seconds_since(t0));
  emit(o.report, rep.dump(2) + "\n", out);
  out.commit();
  if (!pass) {
    std::cerr << "evolution error exceeds eps\n";
    return static_cast<int>(ErrorCategory::verification);
  }
  return 0;
}

int cmd_count(const Common& o, const std::string& sweep, const std::string& csv) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(o.spec);
  auto spec = parse_spec(text);
  Outputs out;
  if (!sweep.empty()) {
    int lo = 0, hi = 0;
    if (std::sscanf(sweep.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 2 || hi < lo)
      throw SchemaError("--sweep expects lo:hi with 2 <= lo <= hi");
    if (spec.multi()) throw DomainError("sweeps apply to one-mode specs");
    std::string rows = "n,one_qubit,cnot,pure_ancillas,qubits\n";
    for (int n = lo; n <= hi; ++n) {
      spec.grid.n = n;
      const auto he = build_U_H(spec);
      const auto& c = he.enc.circuit->counts();
      rows += std::to_string(n) + "," + std::to_string(c.one_qubit) + "," + std::to_string(c.cnot) + "," +
              std::to_string(c.pure_ancillas) + "," + std::to_string(he.enc.circuit->num_qubits()) + "\n";
    }
    emit(csv, rows, out);
    out.commit();
    return 0;
  }
  const auto he = build_U_H(spec);
  const auto audit = audit_hamiltonian(spec, he);
  json rep;
  rep["manifest"] = manifest("count", text, json::object(), {o.report}, seconds_since(t0));
  rep["counts"] = {{"one_qubit", he.enc.circuit->counts().one_qubit},
                   {"cnot", he.enc.circuit->counts().cnot},
                   {"pure_ancillas", he.enc.circuit->counts().pure_ancillas}};
  rep["resources"] = json::parse(audit.to_json());
  rep["resources_failed"] = audit.failed();
  emit(o.report, rep.dump(2) + "\n", out);
  out.commit();
  return audit.failed() ? static_cast<int>(ErrorCategory::verification) : 0;
}

struct PrimitiveArgs {
  std::string name;
  int n = 3;
  int m = 1;
  double a = -1.0;
  double b = 1.0;
  std::string pattern;
  std::vector<std::int64_t> offsets;
  std::vector<double> poly;
  std::string out;
  std::string report;
};

int cmd_primitive(const PrimitiveArgs& p) {
  const GridSpec grid{p.n, p.a, p.b};
  CircuitPtr c;
  json rep{{"primitive", p.name}};
  if (p.name == "adder") {
    c = build_modular_adder(p.n);
  } else if (p.name == "multicontrol") {
    std::vector<bool> pat;
    for (char ch : p.pattern) {
      if (ch != '0' && ch != '1') throw SchemaError("--pattern takes a string of 0 and 1");
      pat.push_back(ch == '1');
    }
    if (pat.empty()) throw SchemaError("--pattern is required");
    c = build_multicontrol_x(pat);
  } else if (p.name == "banded-access") {
    if (p.offsets.empty()) throw SchemaError("--offsets is required");
    c = build_banded_sparse_access(make_pattern(p.n, p.offsets));
  } else if (p.name == "momentum-oracle") {
    const auto bp = matrix_power_banded(build_p_matrix(grid), p.m);
    const auto mo = build_momentum_oracle(bp.pattern.l, bp.band_values, p.m);
    c = mo.circuit;
    rep["norm"] = mo.norm;
    rep["offsets"] = bp.pattern.offsets;
  } else if (p.name == "x-prep") {
    c = build_x_state_prep(grid, false);
  } else if (p.name == "x-oracle") {
    const auto ax = build_x_amplitude_oracle(grid);
    c = ax.enc.circuit;
    rep["descriptor"] = descriptor_json(ax.enc.desc);
    rep["nominal_scale"] = ax.nominal_scale;
  } else if (p.name == "poly-oracle") {
    const auto po = build_coordinate_polynomial_oracle(grid, Polynomial{p.poly});
    c = po.enc.circuit;
    rep["descriptor"] = descriptor_json(po.enc.desc);
    rep["c_x"] = po.c_x;
    rep["c_p"] = po.c_p;
  } else if (p.name == "phases") {
    Outputs out;
    emit(p.out, phases_to_json(solve_qsvt_phases(Polynomial{p.poly})) + "\n", out);
    out.commit();
    return 0;
  } else {
    throw SchemaError("unknown primitive '" + p.name + "'");
  }
  rep["counts"] = {{"one_qubit", c->counts().one_qubit},
                   {"cnot", c->counts().cnot},
                   {"pure_ancillas", c->counts().pure_ancillas}};
  rep["qubits"] = c->num_qubits();
  Outputs out;
  emit(p.out, export_gates(*c), out);
  if (!p.report.empty()) out.add(p.report, rep.dump(2) + "\n");
  out.commit();
  return 0;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("HAMFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
    if (n == 1) {
      auto opt = default_sim_options();
      opt.parallel = false;
      set_default_sim_options(opt);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-encodings of discretized one- and multi-mode Hamiltonians"};
  app.require_subcommand(1);
  Common common;
  double tol = 1e-9, time = 0.0, eps = 1e-3;
  int cap = 22;
  std::string gates, sweep, csv;
  PrimitiveArgs prim;

  auto add_spec = [&](CLI::App* sub) { sub->add_option("spec", common.spec, "spec JSON")->required(); };
  auto* build = app.add_subcommand("build", "emit the Hamiltonian encoding");
  add_spec(build);
  build->add_option("--out", common.out, "gate file");
  build->add_option("--report", common.report, "JSON report (stdout when absent)");

  auto* verify = app.add_subcommand("verify", "simulate and check the Hamiltonian encoding");
  add_spec(verify);
  verify->add_option("--tol", tol, "block tolerance")->capture_default_str();
  verify->add_option("--max-qubits", cap, "simulation cap")->capture_default_str();
  verify->add_option("--gates", gates, "verify this gate file instead of a fresh build");
  verify->add_option("--report", common.report, "JSON report (stdout when absent)");

  auto* evolve = app.add_subcommand("evolve", "encode exp(i t H)");
  add_spec(evolve);
  evolve->add_option("--time", time, "evolution time")->required();
  evolve->add_option("--eps", eps, "target error")->capture_default_str();
  evolve->add_option("--max-qubits", cap, "simulation cap for the error check")->capture_default_str();
  evolve->add_option("--out", common.out, "gate file");
  evolve->add_option("--report", common.report, "JSON report (stdout when absent)");

  auto* count = app.add_subcommand("count", "resource audit or grid-size sweep");
  add_spec(count);
  count->add_option("--sweep", sweep, "lo:hi range of grid qubits");
  count->add_option("--csv", csv, "CSV output of the sweep (stdout when absent)");
  count->add_option("--report", common.report, "JSON report (stdout when absent)");

  auto* primitive = app.add_subcommand("primitive", "export one building block");
  primitive
      ->add_option("name", prim.name,
                   "adder | multicontrol | banded-access | momentum-oracle | x-prep | x-oracle | poly-oracle | phases")
      ->required();
  primitive->add_option("--n", prim.n, "grid or register qubits")->capture_default_str();
  primitive->add_option("--m", prim.m, "momentum power")->capture_default_str();
  primitive->add_option("--a", prim.a, "grid start")->capture_default_str();
  primitive->add_option("--b", prim.b, "grid end")->capture_default_str();
  primitive->add_option("--pattern", prim.pattern, "control pattern, e.g. 101");
  primitive->add_option("--offsets", prim.offsets, "band offsets")->delimiter(',');
  primitive->add_option("--poly", prim.poly, "polynomial coefficients, lowest first")->delimiter(',');
  primitive->add_option("--out", prim.out, "gate file (stdout when absent)");
  primitive->add_option("--report", prim.report, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::schema);
  }

  apply_thread_cap();
  try {
    if (*build) return cmd_build(common);
    if (*verify) return cmd_verify(common, tol, cap, gates);
    if (*evolve) return cmd_evolve(common, time, eps, cap);
    if (*count) return cmd_count(common, sweep, csv);
    if (*primitive) return cmd_primitive(prim);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorCategory::construction);
  }
  return 0;
}
