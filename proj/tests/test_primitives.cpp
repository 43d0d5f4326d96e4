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

#include <doctest.h>

#include <cmath>
#include <random>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/reference.hpp"
#include "support.hpp"

using namespace hamforge;
using namespace hamforge::testing;

namespace {

std::vector<bool> bits_of(std::uint64_t v, int m) {
  std::vector<bool> out(m);
  for (int k = 0; k < m; ++k) out[k] = v >> (m - 1 - k) & 1;
  return out;
}

// Exhaustive pattern x input table against the projector sum.
void check_multicontrol_table(int m, const CircuitPtr& inner) {
  const Mat2 u = gate_matrix(std::get<Gate>(inner->ops()[0]));
  for (std::uint64_t pat = 0; pat < (1u << m); ++pat) {
    auto c = build_multicontrol(bits_of(pat, m), inner);
    Simulator sim(c);
    const auto ctrl = c->qubits(c->registers()[0].name);
    const int t = c->qubits("t")[0];
    for (std::uint64_t in = 0; in < (2u << m); ++in) {
      const std::uint64_t cv = in >> 1, tv = in & 1;
      auto psi = run_basis(sim, encode(sim, {{ctrl, cv}, {{t}, tv}}));
      for (std::uint64_t out = 0; out < 2; ++out) {
        const auto idx = encode(sim, {{ctrl, cv}, {{t}, out}});
        const cplx want = cv == pat ? u[out * 2 + tv] : cplx(out == tv ? 1.0 : 0.0);
        CHECK(std::abs(psi[idx] - want) < 1e-12);
      }
    }
  }
}

}  // namespace

TEST_CASE("multicontrol truth tables") {
  for (int m = 1; m <= 4; ++m) {
    check_multicontrol_table(m, x_gate_circuit());
    check_multicontrol_table(m, ry_gate_circuit(0.7));
  }
}

TEST_CASE("multicontrol with a generic inner circuit") {
  CircuitBuilder b("u3");
  b.add_register("t", 1, RegKind::data);
  b.u3(0, 0.3, -1.1, 0.4);
  auto inner = b.build();
  for (int m = 1; m <= 3; ++m) check_multicontrol_table(m, inner);
}

TEST_CASE("multicontrol X ladder costs") {
  auto c = build_multicontrol_x({true, true, true});
  // Three Toffolis of 8 one-qubit gates and 6 cx each, one pool qubit.
  CHECK(c->counts().one_qubit == 3 * 8);
  CHECK(c->counts().cnot == 3 * 6);
  CHECK(c->counts().pure_ancillas == 1);
  auto c1 = build_multicontrol_x({true});
  CHECK(c1->counts() == Counts{0, 1, 0});
  for (int m = 2; m <= 5; ++m) {
    auto r = build_multicontrol(std::vector<bool>(m, false), ry_gate_circuit(0.2));
    CHECK(r->counts().one_qubit == 16 * m - 14);
    CHECK(r->counts().cnot == 12 * m - 12);
    CHECK(r->counts().pure_ancillas == m - 2);
  }
}

TEST_CASE("modular adder exhaustive") {
  for (int n = 1; n <= 5; ++n) {
    auto c = build_modular_adder(n);
    CHECK(c->counts().pure_ancillas <= n - 1);
    Simulator sim(c);
    const auto a = c->qubits("a"), b = c->qubits("b");
    const std::uint64_t mod = 1u << n;
    for (std::uint64_t i = 0; i < mod; ++i)
      for (std::uint64_t j = 0; j < mod; ++j) {
        auto psi = run_basis(sim, encode(sim, {{a, i}, {b, j}}));
        const auto hit = basis_output(psi);
        REQUIRE(hit >= 0);
        CHECK(std::abs(psi[hit] - 1.0) < 1e-12);
        CHECK(decode(sim, hit, a) == (i + j) % mod);
        CHECK(decode(sim, hit, b) == j);
      }
  }
}

TEST_CASE("modular adder counts match the ripple-carry formulas") {
  for (int n = 2; n <= 8; ++n) {
    auto c = build_modular_adder(n);
    CHECK(c->counts().one_qubit == 32 * n - 48);
    CHECK(c->counts().cnot == 26 * n - 37);
  }
}

TEST_CASE("adder inverse and commutativity") {
  for (int n = 1; n <= 4; ++n) {
    auto ad = build_modular_adder(n);
    CircuitBuilder b("round_trip");
    b.add_register("a", n, RegKind::data);
    b.add_register("b", n, RegKind::data);
    std::vector<int> w(2 * n);
    for (int i = 0; i < 2 * n; ++i) w[i] = i;
    b.call(ad, w);
    b.call(inverse_of(ad), w);
    Simulator sim(b.build());
    for (std::uint64_t in = 0; in < (1u << (2 * n)); ++in) {
      auto psi = run_basis(sim, in);
      CHECK(std::abs(psi[in] - 1.0) < 1e-12);
    }
  }
  // Adding j then k equals adding k then j.
  const int n = 3;
  CircuitBuilder b("twice");
  b.add_register("a", n, RegKind::data);
  b.add_register("j", n, RegKind::data);
  b.add_register("k", n, RegKind::data);
  auto ad = build_modular_adder(n);
  b.call(ad, {0, 1, 2, 3, 4, 5});
  b.call(ad, {0, 1, 2, 6, 7, 8});
  auto jk = b.build();
  CircuitBuilder b2("twice_swapped");
  b2.add_register("a", n, RegKind::data);
  b2.add_register("j", n, RegKind::data);
  b2.add_register("k", n, RegKind::data);
  b2.call(ad, {0, 1, 2, 6, 7, 8});
  b2.call(ad, {0, 1, 2, 3, 4, 5});
  auto kj = b2.build();
  Simulator s1(jk), s2(kj);
  for (std::uint64_t in = 0; in < 512; ++in) {
    const auto o1 = basis_output(run_basis(s1, in));
    const auto o2 = basis_output(run_basis(s2, in));
    CHECK(o1 == o2);
  }
}

TEST_CASE("adder fixed examples") {
  auto c = build_modular_adder(3);
  Simulator sim(c);
  const auto a = c->qubits("a"), b = c->qubits("b");
  const auto hit = basis_output(run_basis(sim, encode(sim, {{a, 3}, {b, 6}})));
  CHECK(decode(sim, hit, a) == 1);
  CHECK(decode(sim, hit, b) == 6);
}

namespace {

void check_access(const SparsityPattern& p) {
  const int n = p.num_qubits();
  auto c = build_banded_sparse_access(p);
  Simulator sim(c);
  const auto first = c->qubits("first"), second = c->qubits("second");
  const auto target = sparse_slot_targets(p);
  const std::uint64_t mod = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < (1u << p.l); ++s)
    for (std::uint64_t i = 0; i < mod; ++i) {
      auto psi = run_basis(sim, encode(sim, {{first, s}, {second, i}}));
      const auto hit = basis_output(psi);
      REQUIRE(hit >= 0);
      CHECK(std::abs(psi[hit] - 1.0) < 1e-12);
      CHECK(decode(sim, hit, second) == i);
      if (s < static_cast<std::uint64_t>(p.bands()))
        CHECK(decode(sim, hit, first) == (static_cast<std::uint64_t>(p.offset(s)) + i) % mod);
      else
        CHECK(decode(sim, hit, first) == (target[s] + i) % mod);
    }
}

}  // namespace

TEST_CASE("banded sparse access exhaustive") {
  check_access(make_pattern(3, {0, 1, 7}));
  check_access(make_pattern(3, {0, 2, 5, 6}));
  check_access(make_pattern(3, {3}));
  check_access(make_pattern(2, {1, 3}));
  check_access(make_pattern(4, {0, 1, 2, 14, 15}));
  check_access(make_pattern(5, {0, 1, 31}));
  check_access(make_pattern(5, {2, 5, 9, 30}));
  // Random patterns with l up to n.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    std::uniform_int_distribution<int> d(0, (1 << n) - 1), cnt(1, std::min(8, 1 << n));
    std::vector<std::int64_t> off;
    const int k = cnt(rng);
    for (int i = 0; i < k; ++i) off.push_back(d(rng));
    check_access(make_pattern(n, off));
  }
}

TEST_CASE("banded access worked example and identity band") {
  auto p = make_pattern(3, {0, 1, 7});
  auto c = build_banded_sparse_access(p);
  Simulator sim(c);
  const auto first = c->qubits("first"), second = c->qubits("second");
  const auto hit = basis_output(run_basis(sim, encode(sim, {{first, 2}, {second, 3}})));
  CHECK(decode(sim, hit, first) == 2);

  auto z = make_pattern(3, {0});
  CHECK(z.l == 0);
  // A zero offset needs no transposition: only the adder remains.
  auto cz = build_banded_sparse_access(z);
  CHECK(cz->counts() == build_modular_adder(3)->counts());
}

TEST_CASE("banded access is shared by a pattern and its transpose") {
  // Symmetric offsets {0, 1, -1} coincide with their transpose.
  auto p = make_pattern(3, {0, 1, 7});
  auto pt = make_pattern(3, {0, -1, -7});
  CHECK(same_circuit(*build_banded_sparse_access(p), *build_banded_sparse_access(pt)));
}

TEST_CASE("banded access rejects too many bands") {
  auto p = make_pattern(3, {0, 1, 2});
  p.l = 1;
  CHECK_THROWS_AS(build_banded_sparse_access(p), PatternOverflow);
}

namespace {

std::vector<double> random_beta(std::mt19937& rng, int n, int chi) {
  std::normal_distribution<double> g;
  std::vector<double> beta(std::size_t{1} << n, 0.0);
  double norm = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (binary_norm(i) <= chi) {
      beta[i] = g(rng);
      norm += beta[i] * beta[i];
    }
  if (std::abs(beta[0]) < 0.05) {
    norm += 0.25 - beta[0] * beta[0];
    beta[0] = 0.5;
  }
  for (auto& b : beta) b /= std::sqrt(norm);
  return beta;
}

void check_prep(const std::vector<double>& beta, int chi) {
  const auto t = solve_binary_norm_angles(beta, chi);
  for (const auto& [key, w] : t.omega) {
    CHECK(binary_norm(key.second) <= std::min(key.first, chi - 1));
    CHECK(std::isfinite(w));
  }
  auto c = build_binary_norm_prep(t);
  Simulator sim(c);
  auto psi = run_basis(sim, 0);
  const auto q = c->qubits("q");
  for (std::uint64_t i = 0; i < beta.size(); ++i) {
    const auto idx = encode(sim, {{q, i}});
    CHECK(std::abs(psi[idx] - beta[i]) < 1e-10);
  }
  const auto bound = binary_norm_bound(t.n, chi);
  CHECK(c->counts().one_qubit <= bound.one_qubit);
  CHECK(c->counts().cnot <= bound.cnot);
  CHECK(c->counts().pure_ancillas <= std::max(0, t.n - 2));
  CHECK(build_binary_norm_prep(t, 1)->counts().pure_ancillas <= std::max(0, t.n - 2));
}

}  // namespace

TEST_CASE("binary-norm preparation reproduces random amplitudes") {
  std::mt19937 rng(11);
  for (int chi = 1; chi <= 3; ++chi)
    for (int n = 1; n <= 5; ++n)
      for (int rep = 0; rep < 4; ++rep) check_prep(random_beta(rng, n, std::min(chi, n)), std::min(chi, n));
}

TEST_CASE("binary-norm preparation fixed cases") {
  auto t0 = solve_binary_norm_angles({1, 0, 0, 0, 0, 0, 0, 0}, 1);
  CHECK(t0.theta.empty());
  CHECK(t0.omega.empty());

  const double a = 0.37;
  auto t1 = solve_binary_norm_angles({std::cos(a), std::sin(a)}, 1);
  CHECK(std::abs(t1.theta.at({0, 0}) - 2 * a) < 1e-14);

  check_prep({0.5, 0.5, 0.5, 0.5}, 2);
  check_prep({-0.6, 0.8}, 1);
  check_prep({0.5, -0.5, -0.5, 0.5}, 2);

  CHECK_THROWS_AS(solve_binary_norm_angles({0.0, 1.0}, 1), ZeroLeadingAmplitude);
  auto tz = solve_binary_norm_angles({0.0, 1.0}, 1, true);
  CHECK(std::abs(amplitudes_from_angles(tz)[1] - 1.0) < 1e-14);
  CHECK_THROWS_AS(solve_binary_norm_angles({0.5, 0.5, 0.5, 0.5}, 1), ConstructionError);
}

TEST_CASE("binary-norm preparation from walsh coefficients of a diagonal") {
  GridSpec g{3, -1.0, 1.0};
  const auto w = walsh_coefficients(grid_points(g), {0.0, 1.0});
  std::vector<double> beta;
  for (auto b : w.beta) beta.push_back(b.real());
  // Coordinate diagonals are affine in the bits, so the zero index holds the mean.
  if (std::abs(beta[0]) > 1e-12) check_prep(beta, w.support_bound);
}

TEST_CASE("zero-controlled preparation") {
  std::mt19937 rng(5);
  auto beta = random_beta(rng, 3, 2);
  beta[0] = -std::abs(beta[0]);
  auto t = solve_binary_norm_angles(beta, 2);
  auto c = build_binary_norm_prep(t, 1);
  Simulator sim(c);
  const auto ctl = c->qubits("ctl"), q = c->qubits("q");
  auto psi = run_basis(sim, encode(sim, {{ctl, 0}, {q, 0}}));
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(std::abs(psi[encode(sim, {{ctl, 0}, {q, i}})] - beta[i]) < 1e-10);
  for (std::uint64_t i = 0; i < 8; ++i) {
    auto out = run_basis(sim, encode(sim, {{ctl, 1}, {q, i}}));
    CHECK(std::abs(out[encode(sim, {{ctl, 1}, {q, i}})] - 1.0) < 1e-12);
  }
}

TEST_CASE("multiplexed rotations") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int l = 0; l <= 3; ++l) {
    std::vector<double> ang(1u << l);
    for (auto& a : ang) a = u(rng);
    for (int kind = 0; kind < 2; ++kind) {
      CircuitBuilder b("mux");
      b.add_register("t", 1, RegKind::data);
      b.add_register("c", l, RegKind::data);
      std::vector<int> ctl;
      for (int i = 0; i < l; ++i) ctl.push_back(1 + i);
      if (kind == 0) emit_multiplexed_ry(b, ctl, 0, ang);
      else emit_multiplexed_rz(b, ctl, 0, ang);
      auto c = b.build();
      CHECK(c->counts().cnot == (l == 0 ? 0 : (1 << l)));
      auto U = circuit_unitary(*c);
      for (std::uint64_t x = 0; x < (1u << l); ++x) {
        const Mat2 r = gate_matrix(make_gate(kind == 0 ? GateKind::ry : GateKind::rz, 0, -1, ang[x]));
        for (int o = 0; o < 2; ++o)
          for (int i = 0; i < 2; ++i) CHECK(std::abs(U((o << l) | x, (i << l) | x) - r[o * 2 + i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("multiplexor collapses for uniform angles") {
  CircuitBuilder b("mux");
  b.add_register("t", 1, RegKind::data);
  b.add_register("c", 2, RegKind::data);
  emit_multiplexed_ry(b, {1, 2}, 0, {0.4, 0.4, 0.4, 0.4});
  auto c = b.build();
  CHECK(c->counts() == Counts{1, 0, 0});
}

TEST_CASE("momentum oracle against the dense first row") {
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m) {
      GridSpec g{n, -1.0, 1.0};
      const auto bp = matrix_power_banded(build_p_matrix(g), m);
      const int l = bp.pattern.l;
      auto mo = build_momentum_oracle(l, bp.band_values, m);
      CHECK(mo.circuit->counts().one_qubit <= (1 << l));
      CHECK(mo.circuit->counts().cnot <= (l == 0 ? 0 : (1 << l)));
      Simulator sim(mo.circuit);
      const auto flag = mo.circuit->qubits("flag"), sp = mo.circuit->qubits("sparse");
      for (int s = 0; s < bp.pattern.bands(); ++s) {
        auto psi = run_basis(sim, encode(sim, {{flag, 0}, {sp, std::uint64_t(s)}}));
        const cplx amp = psi[encode(sim, {{flag, 0}, {sp, std::uint64_t(s)}})];
        CHECK(std::abs(amp * std::sqrt(mo.norm) - bp.band_values[s]) < 1e-10);
      }
    }
}

TEST_CASE("momentum oracle first-order values") {
  GridSpec g{3, -1.0, 1.0};
  const auto bp = matrix_power_banded(build_p_matrix(g), 1);
  CHECK(bp.pattern.bands() == 2);
  auto mo = build_momentum_oracle(bp.pattern.l, bp.band_values, 1);
  const double h = 1.0 / (2.0 * g.delta_x());
  CHECK(std::abs(mo.norm - h * h) < 1e-12);
  CHECK_THROWS_AS(build_momentum_oracle(1, {cplx(1, 0), cplx(0, 1)}, 0), ComplexResidual);
  CHECK_THROWS_AS(build_momentum_oracle(1, {0.0, 0.0}, 0), DegenerateState);
}
