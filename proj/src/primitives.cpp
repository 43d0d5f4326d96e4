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

#include "hamforge/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

#include "hamforge/errors.hpp"

namespace hamforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-14;

std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

int highest_bit(std::uint64_t v) { return 63 - __builtin_clzll(v); }

// AND of the controls (with polarities) into the last returned pool qubit.
std::vector<int> emit_and(CircuitBuilder& b, const std::vector<int>& c, const std::vector<bool>& pol) {
  const int m = static_cast<int>(c.size());
  auto anc = b.borrow(m - 1);
  b.call(toffoli_circuit(pol[0], pol[1]), {c[0], c[1], anc[0]});
  for (int i = 2; i < m; ++i) b.call(toffoli_circuit(true, pol[i]), {anc[i - 2], c[i], anc[i - 1]});
  return anc;
}

void emit_unand(CircuitBuilder& b, const std::vector<int>& c, const std::vector<bool>& pol,
                const std::vector<int>& anc) {
  const int m = static_cast<int>(c.size());
  for (int i = m - 1; i >= 2; --i) b.call(toffoli_circuit(true, pol[i]), {anc[i - 2], c[i], anc[i - 1]});
  b.call(toffoli_circuit(pol[0], pol[1]), {c[0], c[1], anc[0]});
  b.release(m - 1);
}

bool is_single_gate(const Circuit& c, GateKind k) {
  if (c.num_qubits() != 1 || c.ops().size() != 1) return false;
  const auto* g = std::get_if<Gate>(&c.ops()[0]);
  return g && g->kind == k;
}

void copy_open_registers(CircuitBuilder& b, const Circuit& inner) {
  for (const auto& r : inner.registers()) {
    if (r.kind == RegKind::pure && r.strict) continue;
    b.add_register(r.name, r.width, r.kind, r.strict);
  }
}

std::string control_name(const Circuit& inner) {
  std::string name = "ctrl";
  for (int k = 1; inner.has_register(name); ++k) name = "ctrl" + std::to_string(k);
  return name;
}

}  // namespace

void emit_mcx(CircuitBuilder& b, const std::vector<int>& c, const std::vector<bool>& pol, int target) {
  const int m = static_cast<int>(c.size());
  if (m == 0) {
    b.x(target);
    return;
  }
  if (m == 1) {
    b.cx(c[0], target);
    if (!pol[0]) b.x(target);
    return;
  }
  if (m == 2) {
    b.call(toffoli_circuit(pol[0], pol[1]), {c[0], c[1], target});
    return;
  }
  auto anc = b.borrow(m - 2);
  b.call(toffoli_circuit(pol[0], pol[1]), {c[0], c[1], anc[0]});
  for (int i = 2; i < m - 1; ++i) b.call(toffoli_circuit(true, pol[i]), {anc[i - 2], c[i], anc[i - 1]});
  b.call(toffoli_circuit(true, pol[m - 1]), {anc[m - 3], c[m - 1], target});
  for (int i = m - 2; i >= 2; --i) b.call(toffoli_circuit(true, pol[i]), {anc[i - 2], c[i], anc[i - 1]});
  b.call(toffoli_circuit(pol[0], pol[1]), {c[0], c[1], anc[0]});
  b.release(m - 2);
}

void emit_mc_ry(CircuitBuilder& b, const std::vector<int>& c, const std::vector<bool>& pol,
                int target, double theta) {
  const int m = static_cast<int>(c.size());
  if (m == 0) {
    b.ry(target, theta);
    return;
  }
  // X ry(a) X = ry(-a): the sign of the second half picks the active polarity.
  auto controlled = [&](int ctl, bool one) {
    b.ry(target, theta / 2);
    b.cx(ctl, target);
    b.ry(target, one ? -theta / 2 : theta / 2);
    b.cx(ctl, target);
  };
  if (m == 1) {
    controlled(c[0], pol[0]);
    return;
  }
  // AND of the first m-1 controls, then ry(a/2) X ry(-a/2) X with the X doubly controlled.
  const std::vector<int> head(c.begin(), c.end() - 1);
  const std::vector<bool> head_pol(pol.begin(), pol.end() - 1);
  std::vector<int> anc;
  if (m >= 3) anc = emit_and(b, head, head_pol);
  const int a = m >= 3 ? anc.back() : c[0];
  const auto tof = toffoli_circuit(m >= 3 ? true : pol[0], pol[m - 1]);
  b.ry(target, theta / 2);
  b.call(tof, {a, c[m - 1], target});
  b.ry(target, -theta / 2);
  b.call(tof, {a, c[m - 1], target});
  if (m >= 3) emit_unand(b, head, head_pol, anc);
}

CircuitPtr x_gate_circuit() {
  static const CircuitPtr c = [] {
    CircuitBuilder b("x");
    b.add_register("t", 1, RegKind::data);
    b.x(0);
    return b.build();
  }();
  return c;
}

CircuitPtr ry_gate_circuit(double theta) {
  CircuitBuilder b("ry");
  b.add_register("t", 1, RegKind::data);
  b.ry(0, theta);
  return b.build();
}

CircuitPtr build_multicontrol_x(const std::vector<bool>& pattern) {
  static std::mutex mu;
  static std::map<std::vector<bool>, CircuitPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(pattern);
  if (it != cache.end()) return it->second;
  const int m = static_cast<int>(pattern.size());
  CircuitBuilder b("mcx" + std::to_string(m));
  b.add_register("ctrl", m, RegKind::data);
  b.add_register("t", 1, RegKind::data);
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = i;
  emit_mcx(b, c, pattern, m);
  auto out = b.build();
  cache.emplace(pattern, out);
  return out;
}

CircuitPtr build_multicontrol(const std::vector<bool>& pattern, const CircuitPtr& inner) {
  const int m = static_cast<int>(pattern.size());
  if (is_single_gate(*inner, GateKind::x)) return build_multicontrol_x(pattern);
  CircuitBuilder b("mc_" + inner->name());
  const std::string cname = control_name(*inner);
  b.add_register(cname, m, RegKind::data);
  copy_open_registers(b, *inner);
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = i;
  if (is_single_gate(*inner, GateKind::ry)) {
    emit_mc_ry(b, c, pattern, m, std::get<Gate>(inner->ops()[0]).p[0]);
    return b.build();
  }
  std::vector<int> inner_wires;
  for (std::size_t k = 0; k < inner->open_qubits().size(); ++k) inner_wires.push_back(m + static_cast<int>(k));
  if (m == 0) {
    b.call(inner, inner_wires);
    return b.build();
  }
  auto ci = controlled_of(inner);
  auto wires_for = [&](int ctl) {
    std::vector<int> w{ctl};
    w.insert(w.end(), inner_wires.begin(), inner_wires.end());
    return w;
  };
  if (m == 1) {
    if (!pattern[0]) b.x(c[0]);
    b.call(ci, wires_for(c[0]));
    if (!pattern[0]) b.x(c[0]);
    return b.build();
  }
  auto anc = emit_and(b, c, pattern);
  b.call(ci, wires_for(anc.back()));
  emit_unand(b, c, pattern, anc);
  return b.build();
}

CircuitPtr build_modular_adder(int n) {
  if (n < 1) throw ConstructionError("adder width must be positive");
  static std::mutex mu;
  static std::map<int, CircuitPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  CircuitBuilder b("adder" + std::to_string(n));
  b.add_register("a", n, RegKind::data);
  b.add_register("b", n, RegKind::data);
  auto A = [n](int k) { return n - 1 - k; };
  auto B = [n](int k) { return 2 * n - 1 - k; };
  if (n == 1) {
    b.cx(B(0), A(0));
  } else {
    auto carry = b.borrow(n - 1);
    auto C = [&](int k) { return carry[k - 1]; };
    const auto tof = toffoli_circuit(true, true);
    const auto tof01 = toffoli_circuit(false, true);
    b.call(tof, {A(0), B(0), C(1)});
    for (int k = 1; k <= n - 2; ++k) {
      b.cx(B(k), A(k));
      b.call(tof01, {A(k), B(k), C(k + 1)});
      b.call(tof, {C(k), A(k), C(k + 1)});
    }
    b.cx(B(n - 1), A(n - 1));
    b.cx(C(n - 1), A(n - 1));
    for (int k = n - 2; k >= 1; --k) {
      b.call(tof, {C(k), A(k), C(k + 1)});
      b.call(tof01, {A(k), B(k), C(k + 1)});
      b.cx(C(k), A(k));
    }
    b.call(tof, {A(0), B(0), C(1)});
    b.cx(B(0), A(0));
    b.release(n - 1);
  }
  auto out = b.build();
  cache.emplace(n, out);
  return out;
}

std::vector<std::uint64_t> sparse_slot_targets(const SparsityPattern& p) {
  const int n = p.num_qubits();
  if (p.l > n) throw PatternOverflow("sparse index wider than the register");
  const std::uint64_t slots = std::uint64_t{1} << p.l;
  if (static_cast<std::uint64_t>(p.bands()) > slots)
    throw PatternOverflow(std::to_string(p.bands()) + " bands exceed 2^" + std::to_string(p.l));
  std::vector<std::uint64_t> target(slots);
  std::set<std::uint64_t> used;
  for (int s = 0; s < p.bands(); ++s) {
    std::uint64_t r = 0;
    for (std::size_t y = 0; y < p.widths.size(); ++y)
      r = (r << p.widths[y]) | static_cast<std::uint64_t>(p.offsets[s][y]);
    target[s] = r;
    used.insert(r);
  }
  std::uint64_t next_free = 0;
  for (std::uint64_t s = p.bands(); s < slots; ++s) {
    if (!used.count(s)) {
      target[s] = s;
    } else {
      while (used.count(next_free)) ++next_free;
      target[s] = next_free;
    }
    used.insert(target[s]);
  }
  return target;
}

CircuitPtr build_banded_sparse_access(const SparsityPattern& p) {
  const int n = p.num_qubits();
  const auto target = sparse_slot_targets(p);
  CircuitBuilder b("banded_access");
  b.add_register("first", n, RegKind::data);
  b.add_register("second", n, RegKind::data);
  auto F = [n](int bit) { return n - 1 - bit; };

  // Transpositions that carry every slot s to its target.
  std::map<std::uint64_t, std::uint64_t> occupant, where;
  auto occ = [&](std::uint64_t v) { auto it = occupant.find(v); return it == occupant.end() ? v : it->second; };
  auto pos = [&](std::uint64_t t) { auto it = where.find(t); return it == where.end() ? t : it->second; };
  for (std::uint64_t s = 0; s < target.size(); ++s) {
    const std::uint64_t u = pos(s), v = target[s];
    if (u == v) continue;
    const std::uint64_t moved = occ(v);
    occupant[u] = moved;
    where[moved] = u;
    occupant[v] = s;
    where[s] = v;

    const std::uint64_t d = u ^ v;
    const int pbit = highest_bit(d);
    std::vector<int> flips;
    for (int j = 0; j < n; ++j)
      if (j != pbit && (d >> j & 1)) flips.push_back(j);
    for (int j : flips) b.cx(F(pbit), F(j));
    const std::uint64_t up = (u >> pbit & 1) ? (u ^ d ^ (std::uint64_t{1} << pbit)) : u;
    std::vector<int> controls;
    std::vector<bool> pol;
    for (int j = n - 1; j >= 0; --j) {
      if (j == pbit) continue;
      controls.push_back(F(j));
      pol.push_back(up >> j & 1);
    }
    std::vector<int> wires = controls;
    wires.push_back(F(pbit));
    b.call(build_multicontrol_x(pol), wires);
    for (auto it = flips.rbegin(); it != flips.rend(); ++it) b.cx(F(pbit), F(*it));
  }

  int start = 0;
  for (int w : p.widths) {
    std::vector<int> wires;
    for (int k = 0; k < w; ++k) wires.push_back(start + k);
    for (int k = 0; k < w; ++k) wires.push_back(n + start + k);
    b.call(build_modular_adder(w), wires);
    start += w;
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Binary-norm state preparation

AngleTable solve_binary_norm_angles(const std::vector<double>& beta, int chi, bool allow_zero_leading) {
  const std::size_t dim = beta.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw DimensionMismatch("amplitude count must be a power of two");
  AngleTable t;
  while ((std::size_t{1} << t.n) < dim) ++t.n;
  t.chi = chi;
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    norm += beta[i] * beta[i];
    if (binary_norm(i) > chi && std::abs(beta[i]) > 1e-12)
      throw ConstructionError("amplitude at index " + std::to_string(i) + " exceeds binary norm " +
                              std::to_string(chi));
  }
  if (std::abs(norm - 1.0) > 1e-10) throw ConstructionError("amplitudes are not normalized");
  if (std::abs(beta[0]) < kTiny && !allow_zero_leading)
    throw ZeroLeadingAmplitude("leading amplitude vanishes");

  std::vector<double> rho = beta;
  for (int k = t.n - 1; k >= 0; --k) {
    const std::uint64_t half = std::uint64_t{1} << k;
    std::vector<double> next(half);
    for (std::uint64_t p = 0; p < half; ++p) {
      const double x = rho[p], y = rho[p + half];
      double theta = 0.0;
      if (std::abs(y) <= kTiny) {
        next[p] = x;
      } else if (std::abs(x) <= kTiny) {
        theta = kPi;
        next[p] = y;
      } else {
        theta = 2.0 * std::atan(y / x);
        next[p] = std::copysign(std::hypot(x, y), x);
      }
      if (!std::isfinite(theta)) throw NaNAngle("level " + std::to_string(k));
      if (theta != 0.0) t.theta[{k, p}] = theta;
    }
    rho = std::move(next);
  }
  t.negative = rho[0] < 0.0;

  // omega over subsets: theta_P = sum of omega_Q over supersets Q of P.
  for (int k = 0; k < t.n; ++k) {
    const int cap = std::min(k, chi - 1);
    if (cap < 0) continue;
    std::vector<std::uint64_t> patterns;
    for (std::uint64_t q = 0; q < (std::uint64_t{1} << k); ++q)
      if (binary_norm(q) <= cap) patterns.push_back(q);
    std::stable_sort(patterns.begin(), patterns.end(), [](auto a, auto b) { return binary_norm(a) > binary_norm(b); });
    for (auto q : patterns) {
      auto it = t.theta.find({k, q});
      double w = it == t.theta.end() ? 0.0 : it->second;
      for (const auto& [key, val] : t.omega)
        if (key.first == k && key.second != q && (key.second & q) == q) w -= val;
      if (!std::isfinite(w)) throw NaNAngle("omega at level " + std::to_string(k));
      if (std::abs(w) >= kTiny) t.omega[{k, q}] = w;
    }
  }

  const auto back = amplitudes_from_angles(t);
  for (std::size_t i = 0; i < dim; ++i)
    if (std::abs(back[i] - beta[i]) > 1e-10)
      throw ConstructionError("angle table does not reproduce the amplitudes");
  return t;
}

std::vector<double> amplitudes_from_angles(const AngleTable& t) {
  const std::size_t dim = std::size_t{1} << t.n;
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double a = t.negative ? -1.0 : 1.0;
    for (int k = 0; k < t.n; ++k) {
      const std::uint64_t p = i & ((std::uint64_t{1} << k) - 1);
      auto it = t.theta.find({k, p});
      const double th = it == t.theta.end() ? 0.0 : it->second;
      a *= (i >> k & 1) ? std::sin(th / 2) : std::cos(th / 2);
    }
    out[i] = a;
  }
  return out;
}

CircuitPtr build_binary_norm_prep(const AngleTable& t, int zero_controls) {
  CircuitBuilder b("binary_norm_prep");
  if (zero_controls > 0) b.add_register("ctl", zero_controls, RegKind::data);
  const int q0 = b.add_register("q", t.n, RegKind::data);
  auto Q = [&](int bit) { return q0 + t.n - 1 - bit; };
  for (int k = 0; k < t.n; ++k) {
    for (const auto& [key, w] : t.omega) {
      if (key.first != k) continue;
      std::vector<int> controls;
      for (int c = 0; c < zero_controls; ++c) controls.push_back(c);
      for (int bit = 0; bit < k; ++bit)
        if (!(key.second >> bit & 1)) controls.push_back(Q(bit));
      emit_mc_ry(b, controls, std::vector<bool>(controls.size(), false), Q(k), w);
    }
  }
  if (t.negative) {
    if (zero_controls == 0) {
      b.gphase(kPi);
    } else if (zero_controls == 1) {
      b.z(0);
      b.gphase(kPi);
    } else {
      throw ConstructionError("sign correction supports at most one control");
    }
  }
  return b.build();
}

Counts binary_norm_bound(int n, int chi) {
  auto A = [](int i) -> std::int64_t { return i == 0 ? 1 : i == 1 ? 2 : 16 * i - 14; };
  auto B = [](int i) -> std::int64_t { return i == 0 ? 0 : i == 1 ? 2 : 12 * i - 10; };
  auto binom = [](int s, int i) {
    double r = 1.0;
    for (int k = 1; k <= i; ++k) r = r * (s - i + k) / k;
    return static_cast<std::int64_t>(std::llround(r));
  };
  Counts c;
  for (int i = 0; i < n; ++i)
    for (int s = i; s <= std::min(chi + i - 1, n - 1); ++s) {
      c.one_qubit += binom(s, i) * A(i);
      c.cnot += binom(s, i) * B(i);
    }
  c.pure_ancillas = std::max(0, n - 2);
  return c;
}

// ---------------------------------------------------------------------------
// Multiplexed rotations and the momentum oracle

namespace {

void emit_multiplexed(CircuitBuilder& b, const std::vector<int>& controls, int target,
                      const std::vector<double>& angles, GateKind kind) {
  const int l = static_cast<int>(controls.size());
  const std::uint64_t dim = std::uint64_t{1} << l;
  if (angles.size() != dim) throw WidthMismatch("multiplexor needs 2^l angles");
  auto rot = [&](double a) { b.add(make_gate(kind, target, -1, a)); };
  std::vector<double> phi(dim, 0.0);
  for (std::uint64_t k = 0; k < dim; ++k) {
    for (std::uint64_t x = 0; x < dim; ++x)
      phi[k] += ((__builtin_popcountll(x & gray(k)) & 1) ? -1.0 : 1.0) * angles[x];
    phi[k] /= static_cast<double>(dim);
  }
  bool uniform = true;
  for (std::uint64_t k = 1; k < dim; ++k) uniform = uniform && std::abs(phi[k]) < kTiny;
  if (uniform) {
    rot(phi[0]);
    return;
  }
  for (std::uint64_t k = 0; k < dim; ++k) {
    rot(phi[k]);
    const int bit = highest_bit(gray(k) ^ gray((k + 1) % dim));
    b.cx(controls[l - 1 - bit], target);
  }
}

}  // namespace

void emit_multiplexed_ry(CircuitBuilder& b, const std::vector<int>& controls, int target,
                         const std::vector<double>& angles) {
  emit_multiplexed(b, controls, target, angles, GateKind::ry);
}

void emit_multiplexed_rz(CircuitBuilder& b, const std::vector<int>& controls, int target,
                         const std::vector<double>& angles) {
  emit_multiplexed(b, controls, target, angles, GateKind::rz);
}

MomentumOracle build_momentum_oracle(int l, const std::vector<cplx>& values, int m, bool with_phase) {
  const std::size_t slots = std::size_t{1} << l;
  if (values.size() > slots) throw PatternOverflow("more band values than sparse slots");
  MomentumOracle out;
  for (const auto& v : values) out.norm = std::max(out.norm, std::norm(v));
  if (out.norm == 0.0) throw DegenerateState("all band values vanish");
  const cplx im = std::pow(cplx(0.0, 1.0), m);
  std::vector<double> angles(slots, kPi);
  for (std::size_t s = 0; s < values.size(); ++s) {
    const cplx w = im * values[s] / std::sqrt(out.norm);
    if (std::abs(w.imag()) > 1e-12)
      throw ComplexResidual("band " + std::to_string(s) + " is not real after the i^m factor");
    double r = w.real();
    if (std::abs(r) > 1.0 + 1e-12) throw ConstructionError("band amplitude above 1");
    r = std::clamp(r, -1.0, 1.0);
    angles[s] = 2.0 * std::acos(r);
  }
  CircuitBuilder b("momentum_oracle");
  b.add_register("flag", 1, RegKind::flag);
  b.add_register("sparse", l, RegKind::data);
  std::vector<int> controls;
  for (int i = 0; i < l; ++i) controls.push_back(1 + i);
  emit_multiplexed_ry(b, controls, 0, angles);
  if (with_phase) {
    const double ph = std::remainder(-m * kPi / 2.0, 2.0 * kPi);
    if (std::abs(ph) > kTiny) b.gphase(ph);
  }
  out.circuit = b.build();
  return out;
}

}  // namespace hamforge
