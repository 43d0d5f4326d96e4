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

#include "hamforge/evolution.hpp"

#include <cmath>
#include <numbers>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"

namespace hamforge {

namespace {

constexpr double kCeiling = 1.0 - 1e-8;

double truncation_bound(double alpha_t, int g) {
  return 1.07 / std::sqrt(g) * std::pow(alpha_t * std::numbers::e / (2.0 * g), g);
}

std::vector<double> chebyshev_to_monomial(const std::vector<double>& cheb) {
  const std::size_t n = cheb.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  t[0][0] = 1.0;
  if (n > 1) t[1][1] = 1.0;
  for (std::size_t k = 2; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      t[k][i] = (i > 0 ? 2 * t[k - 1][i - 1] : 0.0) - t[k - 2][i];
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) out[i] += cheb[k] * t[k][i];
  return out;
}

Polynomial stripped(std::vector<double> c) {
  for (auto& v : c)
    if (std::abs(v) < 1e-300) v = 0.0;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return Polynomial{c};
}

double scale_down(Polynomial& p) {
  if (p.degree() < 1) return 1.0;
  const double sup = 1.0 - check_polynomial(p).margin;
  if (sup <= kCeiling) return 1.0;
  const double f = sup / kCeiling;
  for (auto& v : p.coeffs) v /= f;
  return f;
}

// Block of the branch equals P(A) where A is the block of base.
CircuitPtr branch_circuit(const CircuitPtr& base, const std::vector<std::string>& projector,
                          const Polynomial& p, PhaseSequence& phases) {
  if (p.degree() >= 1) {
    phases = solve_qsvt_phases(p);
    return build_projector_sequence(base, projector, phases.phis, true);
  }
  CircuitBuilder b("branch_const");
  const int w = b.add_register("w", 1, RegKind::flag);
  for (const auto& r : base->registers())
    if (!(r.kind == RegKind::pure && r.strict)) b.add_register(r.name, r.width, r.kind, r.strict);
  if (p.degree() < 0) b.x(w);
  else b.ry(w, 2 * std::acos(p.coeffs[0]));
  return b.build();
}

}  // namespace

TruncationDegree truncation_degree(double alpha_t, double eps) {
  if (!(alpha_t > 0)) throw DomainError("alpha t must be positive");
  if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0, 1)");
  TruncationDegree out;
  out.alpha_t = alpha_t;
  out.eps = eps;
  while (truncation_bound(alpha_t, out.g) > eps) ++out.g;
  const double lg = std::log(1.0 / eps);
  out.estimate = alpha_t + lg / std::log(std::numbers::e + lg / alpha_t);
  return out;
}

double bessel_j(int k, double z) {
  if (k < 0) return (k % 2 == 0 ? 1.0 : -1.0) * bessel_j(-k, z);
  if (std::abs(z) > 8.0) throw DomainError("series evaluation limited to |z| <= 8");
  const double h = z / 2;
  double term = std::pow(h, k) / std::tgamma(k + 1.0);
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -h * h / (m * static_cast<double>(m + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

JacobiAnger jacobi_anger_polys(double alpha_t, int g) {
  if (g < 1) throw DomainError("truncation degree must be positive");
  std::vector<double> ce(g + 1, 0.0), co(g + 1, 0.0);
  ce[0] = bessel_j(0, alpha_t);
  for (int k = 1; 2 * k <= g; ++k) ce[2 * k] = 2 * (k % 2 ? -1.0 : 1.0) * bessel_j(2 * k, alpha_t);
  for (int k = 0; 2 * k + 1 <= g; ++k) co[2 * k + 1] = 2 * (k % 2 ? -1.0 : 1.0) * bessel_j(2 * k + 1, alpha_t);
  JacobiAnger out;
  out.even = stripped(chebyshev_to_monomial(ce));
  out.odd = stripped(chebyshev_to_monomial(co));
  for (std::size_t i = 1; i < out.even.coeffs.size(); i += 2) out.even.coeffs[i] = 0.0;
  for (std::size_t i = 0; i < out.odd.coeffs.size(); i += 2) out.odd.coeffs[i] = 0.0;
  out.even_scale = scale_down(out.even);
  out.odd_scale = scale_down(out.odd);
  return out;
}

CircuitPtr build_projector_sequence(const CircuitPtr& base, const std::vector<std::string>& projector,
                                    const std::vector<double>& phis, bool signed_phases) {
  CircuitBuilder b("seq_" + base->name());
  const int w = b.add_register("w", 1, RegKind::flag);
  std::vector<int> wires;
  for (const auto& r : base->registers()) {
    if (r.kind == RegKind::pure && r.strict) continue;
    const int s = b.add_register(r.name, r.width, r.kind, r.strict);
    for (int i = 0; i < r.width; ++i) wires.push_back(s + i);
  }
  std::vector<int> proj;
  for (const auto& name : projector)
    for (int q : b.qubits(name)) proj.push_back(q);
  const std::vector<bool> zeros(proj.size(), false);
  const auto inv = inverse_of(base);
  const int d = static_cast<int>(phis.size());
  for (int j = d; j >= 1; --j) {
    b.call((d - j) % 2 == 0 ? base : inv, wires);
    const double phi = phis[j - 1];
    if (phi == 0.0) continue;
    const int t = b.borrow(1)[0];
    emit_mcx(b, proj, zeros, t);
    if (signed_phases) b.cx(w, t);
    b.rz(t, 2 * phi);
    if (signed_phases) b.cx(w, t);
    emit_mcx(b, proj, zeros, t);
    b.release(1);
  }
  if (signed_phases) {
    CircuitBuilder outer("signed_" + base->name());
    const int ow = outer.add_register("w", 1, RegKind::flag);
    std::vector<int> all{ow};
    for (const auto& r : base->registers()) {
      if (r.kind == RegKind::pure && r.strict) continue;
      const int s = outer.add_register(r.name, r.width, r.kind, r.strict);
      for (int i = 0; i < r.width; ++i) all.push_back(s + i);
    }
    outer.h(ow);
    outer.call(b.build(), all);
    outer.h(ow);
    return outer.build();
  }
  return b.build();
}

EvolutionEncoding build_evolution_be(const HamiltonianSpec& spec, double t, double eps) {
  EvolutionEncoding out;
  out.t = t;
  out.ham = build_U_H(spec);
  const auto& hd = out.ham.enc.desc;
  const double alpha_t = hd.scale * std::abs(t);
  if (alpha_t > kMaxAlphaTime)
    throw TractabilityError("scale * |t| = " + std::to_string(alpha_t) + " exceeds " +
                            std::to_string(kMaxAlphaTime));
  if (alpha_t > 0) {
    out.trunc = truncation_degree(alpha_t, eps);
    out.polys = jacobi_anger_polys(alpha_t, out.trunc.g);
  } else {
    out.trunc.eps = eps;
    out.polys.even = Polynomial{{1.0}};
  }
  if (t < 0)
    for (auto& v : out.polys.odd.coeffs) v = -v;

  const CircuitPtr& base = out.ham.enc.circuit;
  std::vector<std::string> projector = hd.flag_registers;
  for (const auto& r : base->registers())
    if (r.kind == RegKind::pure && !r.strict) projector.push_back(r.name);
  const auto even = branch_circuit(base, projector, out.polys.even, out.even_phases);
  const auto odd = branch_circuit(base, projector, out.polys.odd, out.odd_phases);
  out.queries = std::max(out.polys.even.degree(), 0) + std::max(out.polys.odd.degree(), 0);

  CircuitBuilder b("evolution");
  const int e = b.add_register("e", 1, RegKind::flag);
  std::vector<int> wires{b.add_register("w", 1, RegKind::flag)};
  for (const auto& r : base->registers()) {
    if (r.kind == RegKind::pure && r.strict) continue;
    const int s = b.add_register(r.name, r.width, r.kind, r.strict);
    for (int i = 0; i < r.width; ++i) wires.push_back(s + i);
  }
  std::vector<int> cw{e};
  cw.insert(cw.end(), wires.begin(), wires.end());
  b.h(e);
  b.x(e);
  b.call(controlled_of(even), cw);
  b.x(e);
  b.call(controlled_of(odd), cw);
  b.s(e);
  b.h(e);
  out.enc.circuit = b.build();

  auto& desc = out.enc.desc;
  desc.scale = 2.0;
  desc.error = eps;
  desc.data_register = hd.data_register;
  desc.flag_registers = {"e", "w"};
  desc.flag_registers.insert(desc.flag_registers.end(), hd.flag_registers.begin(), hd.flag_registers.end());
  desc.flag_qubits = hd.flag_qubits + 2;
  for (const auto& p : hd.pure_ancilla_registers)
    if (p != "anc") desc.pure_ancilla_registers.push_back(p);
  if (out.enc.circuit->has_register("anc")) desc.pure_ancilla_registers.push_back("anc");
  validate_descriptor(*out.enc.circuit, desc);
  return out;
}

}  // namespace hamforge
