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

#include "hamforge/qsvt.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/reference.hpp"
#include "hamforge/simulator.hpp"
#include "json.hpp"

namespace hamforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScaleTol = 1e-10;
// Largest sup-norm handed to the phase solver after down-scaling.
constexpr double kSolverCeiling = 0.999;

CircuitPtr hadamard_circuit() {
  static const CircuitPtr c = [] {
    CircuitBuilder b("h");
    b.add_register("t", 1, RegKind::data);
    b.h(0);
    return b.build();
  }();
  return c;
}

std::vector<int> range(int start, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = start + i;
  return v;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

CircuitPtr zero_controlled_of(const CircuitPtr& prep) {
  CircuitBuilder b("zc_" + prep->name());
  b.add_register("ctl", 1, RegKind::data);
  int width = 0;
  for (const auto& r : prep->registers()) {
    if (r.kind == RegKind::pure && r.strict) continue;
    b.add_register(r.name == "ctl" ? "ctl_inner" : r.name, r.width, r.kind, r.strict);
    width += r.width;
  }
  b.x(0);
  b.call(controlled_of(prep), range(0, width + 1));
  b.x(0);
  return b.build();
}

EncodedCircuit build_diag_amplitude_be(const CircuitPtr& zc_prep, bool real_only, double theta) {
  const int h = static_cast<int>(zc_prep->open_qubits().size()) - 1;
  if (h < 1) throw WidthMismatch("amplitude preparation needs at least one qubit");

  // W: superpose c, prepare on a when c = 0, copy data into a when c = 1, phase on c.
  CircuitBuilder wb("amp_w");
  const int p = real_only ? -1 : wb.add_register("p", 1, RegKind::data);
  const int a0 = wb.add_register("a", h, RegKind::pure, false);
  const int c = wb.add_register("c", 1, RegKind::pure, false);
  const int d0 = wb.add_register("data", h, RegKind::data);
  wb.h(c);
  wb.call(zc_prep, concat({c}, range(a0, h)));
  const auto tof = toffoli_circuit(true, true);
  for (int i = 0; i < h; ++i) wb.call(tof, {c, d0 + i, a0 + i});
  if (real_only) {
    wb.rz(c, theta);
    wb.gphase(theta / 2);
  } else {
    // diag(1, i) on c, only when p = 1.
    const double t = kPi / 2;
    wb.rz(p, t / 2);
    wb.rz(c, t / 2);
    wb.cx(p, c);
    wb.rz(c, -t / 2);
    wb.cx(p, c);
    wb.gphase(t / 4);
  }
  wb.h(c);
  const auto w = wb.build();
  const auto wi = inverse_of(w);

  CircuitBuilder b(real_only ? "amplitude_be_real" : "amplitude_be");
  const int l = b.add_register("l", 1, RegKind::flag);
  const int pf = real_only ? -1 : b.add_register("p", 1, RegKind::flag);
  const int a = b.add_register("a", h, RegKind::pure, false);
  const int cc = b.add_register("c", 1, RegKind::pure, false);
  const int d = b.add_register("data", h, RegKind::data);
  const auto w_wires = concat(concat(real_only ? std::vector<int>{} : std::vector<int>{pf}, range(a, h)),
                              concat({cc}, range(d, h)));
  auto cz = [&](int x, int y) {
    b.h(y);
    b.cx(x, y);
    b.h(y);
  };
  if (!real_only) b.h(pf);
  b.h(l);
  b.call(w, w_wires);
  cz(l, cc);
  b.z(cc);
  b.call(wi, w_wires);
  // Reflection I - 2|0><0| on (a, c).
  b.x(cc);
  b.h(cc);
  b.call(build_multicontrol_x(std::vector<bool>(h, false)), concat(range(a, h), {cc}));
  b.h(cc);
  b.x(cc);
  b.call(w, w_wires);
  cz(l, cc);
  b.h(l);
  b.call(wi, w_wires);
  b.z(l);
  b.gphase(kPi);
  if (!real_only) {
    b.s(pf);
    b.h(pf);
  }

  EncodedCircuit out;
  out.circuit = b.build();
  out.desc.scale = real_only ? 1.0 / std::cos(theta) : 2.0;
  out.desc.flag_qubits = real_only ? 1 : 2;
  out.desc.data_register = "data";
  out.desc.flag_registers = real_only ? std::vector<std::string>{"l"} : std::vector<std::string>{"l", "p"};
  out.desc.pure_ancilla_registers = {"a", "c"};
  if (out.circuit->has_register("anc")) out.desc.pure_ancilla_registers.push_back("anc");
  validate_descriptor(*out.circuit, out.desc);
  return out;
}

CircuitPtr build_x_state_prep(const GridSpec& grid, bool zero_controlled) {
  const auto w = walsh_coefficients(grid_points(grid), {0.0, 1.0});
  std::vector<double> beta;
  for (const auto& v : w.beta) beta.push_back(v.real());
  const auto table = solve_binary_norm_angles(beta, 1, true);
  const int n = grid.n;
  CircuitBuilder b(zero_controlled ? "zc_x_prep" : "x_prep");
  const int ctl = zero_controlled ? b.add_register("ctl", 1, RegKind::data) : -1;
  const int q = b.add_register("q", n, RegKind::data);
  if (zero_controlled) {
    b.call(build_binary_norm_prep(table, 1), concat({ctl}, range(q, n)));
    b.x(ctl);
    const auto ch = controlled_of(hadamard_circuit());
    for (int i = 0; i < n; ++i) b.call(ch, {ctl, q + i});
    b.x(ctl);
  } else {
    b.call(build_binary_norm_prep(table), range(q, n));
    for (int i = 0; i < n; ++i) b.h(q + i);
  }
  return b.build();
}

AmplitudeOracle build_x_amplitude_oracle(const GridSpec& grid) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, AmplitudeOracle> cache;
  const auto key = std::make_tuple(grid.n, grid.a, grid.b);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  AmplitudeOracle out;
  out.enc = build_diag_amplitude_be(build_x_state_prep(grid), true);
  out.nominal_scale = out.enc.desc.scale * x_norm(grid);

  // Calibrate on the basis state with the largest |x|.
  const auto xs = grid_points(grid);
  std::size_t k = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i]) > std::abs(xs[k])) k = i;
  Simulator sim(out.enc.circuit);
  const auto data = out.enc.circuit->qubits("data");
  std::vector<int> ones;
  for (int t = 0; t < grid.n; ++t)
    if (k >> (grid.n - 1 - t) & 1) ones.push_back(data[t]);
  const auto idx = sim.basis_index(ones);
  SparseState s{{idx, cplx(1.0)}};
  sim.run_sparse(s);
  const cplx amp = s.count(idx) ? s.at(idx) : cplx(0.0);
  if (std::abs(amp.imag()) > kScaleTol || std::abs(amp) < kScaleTol)
    throw VerificationError("amplitude oracle calibration returned " + std::to_string(amp.real()) + "+" +
                            std::to_string(amp.imag()) + "i");
  out.measured_scale = xs[k] / amp.real();
  if (std::abs(out.measured_scale - out.nominal_scale) > kScaleTol * out.nominal_scale)
    throw VerificationError("amplitude oracle scale " + std::to_string(out.measured_scale) +
                            " differs from sqrt(2) N_x = " + std::to_string(out.nominal_scale));
  out.enc.desc.scale = out.measured_scale;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// Phase solving

namespace {

using M2 = Eigen::Matrix2cd;

// Re <0| e^{i f_0 Z} prod_j W(x) e^{i f_j Z} |0> with W(x) = e^{i arccos(x) X}.
double wx_value(const std::vector<double>& f, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  M2 w;
  w << x, cplx(0, s), cplx(0, s), x;
  auto ph = [](double a) {
    M2 m = M2::Zero();
    m(0, 0) = std::polar(1.0, a);
    m(1, 1) = std::polar(1.0, -a);
    return m;
  };
  M2 u = ph(f[0]);
  for (std::size_t j = 1; j < f.size(); ++j) u = u * w * ph(f[j]);
  return u(0, 0).real();
}

std::vector<double> symmetric_full(const Eigen::VectorXd& red, int d) {
  std::vector<double> f(d + 1);
  for (int j = 0; j < red.size(); ++j) {
    f[j] = red(j);
    f[d - j] = red(j);
  }
  return f;
}

}  // namespace

cplx qsp_value(const std::vector<double>& phis, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  M2 r;
  r << x, s, s, -x;
  M2 u = M2::Identity();
  for (double p : phis) {
    M2 e = M2::Zero();
    e(0, 0) = std::polar(1.0, p);
    e(1, 1) = std::polar(1.0, -p);
    u = u * e * r;
  }
  return u(0, 0);
}

PhaseSequence solve_qsvt_phases(const Polynomial& p, double tol) {
  const auto chk = check_polynomial(p);
  if (!chk.ok) validate_polynomial(p);
  if (chk.margin < 1e-8) throw BoundViolation("phase solving needs sup |P| <= 1 - 1e-8");
  const int d = p.degree();
  if (d < 1) throw DomainError("constant targets carry no phases");

  const int dt = (d + 2) / 2;
  std::vector<double> nodes(dt), target(dt);
  for (int j = 0; j < dt; ++j) {
    nodes[j] = std::cos((2.0 * j + 1.0) * kPi / (4.0 * dt));
    target[j] = p(nodes[j]);
  }
  Eigen::VectorXd red = Eigen::VectorXd::Zero(dt);
  red(0) = kPi / 4;
  auto residual_of = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(dt);
    const auto f = symmetric_full(v, d);
    for (int j = 0; j < dt; ++j) r(j) = wx_value(f, nodes[j]) - target[j];
    return r;
  };
  Eigen::VectorXd r = residual_of(red);
  constexpr int kMaxIter = 100000;
  constexpr double kStep = 1e-6;
  int iter = 0;
  for (; iter < kMaxIter && r.cwiseAbs().maxCoeff() > 1e-15; ++iter) {
    Eigen::MatrixXd jac(dt, dt);
    for (int k = 0; k < dt; ++k) {
      Eigen::VectorXd hi = red, lo = red;
      hi(k) += kStep;
      lo(k) -= kStep;
      jac.col(k) = (residual_of(hi) - residual_of(lo)) / (2 * kStep);
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) break;
    const double before = r.cwiseAbs().maxCoeff();
    red -= step;
    r = residual_of(red);
    if (step.cwiseAbs().maxCoeff() < 1e-16 || (iter > 50 && r.cwiseAbs().maxCoeff() >= before)) break;
  }

  const auto f = symmetric_full(red, d);
  PhaseSequence out;
  out.target = p;
  out.phis.resize(d);
  out.phis[0] = f[0] + f[d] + (d - 1) * kPi / 2;
  for (int j = 1; j < d; ++j) out.phis[j] = f[j] - kPi / 2;
  for (auto& v : out.phis) v = std::remainder(v, 2 * kPi);

  // Independent check in the circuit convention on Chebyshev nodes.
  constexpr int kCheck = 201;
  for (int i = 0; i < kCheck; ++i) {
    const double x = std::cos((2.0 * i + 1.0) * kPi / (2.0 * kCheck));
    out.residual = std::max(out.residual, std::abs(qsp_value(out.phis, x).real() - p(x)));
  }
  if (!(out.residual <= tol))
    throw NonConvergence("phase residual " + std::to_string(out.residual) + " after " +
                         std::to_string(iter) + " iterations");
  return out;
}

std::string phases_to_json(const PhaseSequence& s) {
  nlohmann::json j;
  j["degree"] = s.target.degree();
  j["poly"] = s.target.coeffs;
  j["phis"] = s.phis;
  j["residual"] = s.residual;
  return j.dump();
}

PhaseSequence phases_from_json(const std::string& text) {
  PhaseSequence s;
  try {
    const auto j = nlohmann::json::parse(text);
    s.target.coeffs = j.at("poly").get<std::vector<double>>();
    s.phis = j.at("phis").get<std::vector<double>>();
    s.residual = j.at("residual").get<double>();
    if (j.at("degree").get<int>() != s.target.degree()) throw SchemaError("degree disagrees with poly");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("phase file: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Alternating sequences

namespace {

void emit_alternating(CircuitBuilder& b, const CircuitPtr& base, const std::vector<int>& wires, int flag,
                      const std::vector<double>& phis, int sign_ctl) {
  const auto inv = inverse_of(base);
  const int d = static_cast<int>(phis.size());
  for (int j = d; j >= 1; --j) {
    b.call((d - j) % 2 == 0 ? base : inv, wires);
    const double phi = phis[j - 1];
    if (phi == 0.0) continue;
    if (sign_ctl >= 0) b.cx(sign_ctl, flag);
    b.rz(flag, -2 * phi);
    if (sign_ctl >= 0) b.cx(sign_ctl, flag);
  }
}

}  // namespace

CircuitPtr build_alternating_sequence(const CircuitPtr& base, const std::string& flag,
                                      const std::vector<double>& phis) {
  CircuitBuilder b("qsvt_" + base->name());
  std::vector<int> wires;
  for (const auto& r : base->registers()) {
    if (r.kind == RegKind::pure && r.strict) continue;
    const int s = b.add_register(r.name, r.width, r.kind, r.strict);
    for (int i = 0; i < r.width; ++i) wires.push_back(s + i);
  }
  emit_alternating(b, base, wires, b.qubit(flag, 0), phis, -1);
  return b.build();
}

PolynomialOracle build_coordinate_polynomial_oracle(const GridSpec& grid, const Polynomial& p) {
  const int n = grid.n;
  PolynomialOracle out;
  CircuitBuilder b("poly_oracle");
  const int w = b.add_register("w", 1, RegKind::flag);
  const int l = b.add_register("l", 1, RegKind::flag);
  const int a = b.add_register("a", n, RegKind::pure, false);
  const int c = b.add_register("c", 1, RegKind::pure, false);
  b.add_register("data", n, RegKind::data);

  if (p.degree() == 0) {
    const double v = p.coeffs[0];
    if (!(std::abs(v) < 1.0)) throw BoundViolation("constant polynomial must have |P| < 1");
    b.ry(w, 2 * std::acos(v));
  } else {
    const auto ax = build_x_amplitude_oracle(grid);
    out.c_x = ax.measured_scale;
    std::vector<double> scaled(p.coeffs.size());
    double f = 1.0;
    for (std::size_t k = 0; k < scaled.size(); ++k, f *= out.c_x) scaled[k] = p.coeffs[k] * f;
    Polynomial pt{scaled};
    const double sup = 1.0 - check_polynomial(pt).margin;
    if (sup > kSolverCeiling) {
      out.c_p = sup / kSolverCeiling;
      for (auto& v : pt.coeffs) v /= out.c_p;
    }
    out.phases = solve_qsvt_phases(pt);
    const auto& base = ax.enc.circuit;
    std::vector<int> wires = concat(concat({l}, range(a, n)), concat({c}, range(a + n + 1, n)));
    b.h(w);
    emit_alternating(b, base, wires, l, out.phases.phis, w);
    b.h(w);
  }
  out.enc.circuit = b.build();
  out.enc.desc.scale = out.c_p;
  out.enc.desc.flag_qubits = 2;
  out.enc.desc.data_register = "data";
  out.enc.desc.flag_registers = {"w", "l"};
  out.enc.desc.pure_ancilla_registers = {"a", "c"};
  if (out.enc.circuit->has_register("anc")) out.enc.desc.pure_ancilla_registers.push_back("anc");
  validate_descriptor(*out.enc.circuit, out.enc.desc);
  return out;
}

}  // namespace hamforge
