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
#include <numbers>
#include <random>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/qsvt.hpp"
#include "hamforge/reference.hpp"
#include "hamforge/simulator.hpp"
#include "support.hpp"

using namespace hamforge;

namespace {

CircuitPtr one_qubit_prep(bool hadamard) {
  CircuitBuilder b(hadamard ? "h_prep" : "id_prep");
  b.add_register("q", 1, RegKind::data);
  if (hadamard) b.h(0);
  return b.build();
}

// Amplitudes over the open qubits with the pool in |0>.
StateVector prepared(const CircuitPtr& prep) {
  Simulator sim(prep);
  const auto out = testing::run_basis(sim, 0);
  const auto& open = prep->open_qubits();
  StateVector psi(std::size_t{1} << open.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = out[testing::encode(sim, {{open, i}})];
  return psi;
}

DenseMatrix diag_of(const std::vector<cplx>& v) {
  DenseMatrix m = DenseMatrix::Zero(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

std::vector<GridSpec> grids() {
  return {{2, -1.0, 1.0}, {2, 0.0, 1.0}, {3, -1.0, 1.0}, {3, -0.4, 0.9}, {4, -1.0, 1.0}, {4, -0.7, 0.2}};
}

}  // namespace

TEST_CASE("diagonal amplitude block-encoding on one qubit") {
  for (bool had : {false, true}) {
    const auto prep = one_qubit_prep(had);
    const auto psi = prepared(prep);
    for (bool real : {true, false}) {
      auto be = build_diag_amplitude_be(zero_controlled_of(prep), real);
      CHECK(be.desc.scale == doctest::Approx(real ? std::sqrt(2.0) : 2.0));
      auto chk = assert_block_equals(be.circuit, be.desc, diag_of(psi), 1e-10);
      CHECK(chk.pass);
      CHECK(chk.strict_leak < 1e-10);
      CHECK(chk.conditional_leak < 1e-10);
    }
  }
}

TEST_CASE("complex amplitudes need the two-flag encoding") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 3; ++trial) {
    CircuitBuilder b("rand_prep");
    b.add_register("q", 2, RegKind::data);
    for (int r = 0; r < 3; ++r) {
      b.u3(0, u(rng), u(rng), u(rng));
      b.u3(1, u(rng), u(rng), u(rng));
      b.cx(0, 1);
    }
    auto prep = b.build();
    const auto psi = prepared(prep);
    auto be = build_diag_amplitude_be(zero_controlled_of(prep), false);
    CHECK(assert_block_equals(be.circuit, be.desc, diag_of(psi), 1e-10).pass);
    // The real variant keeps Re(e^{-i pi/4} psi) only.
    auto re = build_diag_amplitude_be(zero_controlled_of(prep), true);
    std::vector<cplx> want;
    for (auto v : psi) want.push_back((std::polar(1.0, -std::numbers::pi / 4) * v).real() * std::sqrt(2.0));
    CHECK(assert_block_equals(re.circuit, re.desc, diag_of(want), 1e-10).pass);
    auto pur = check_purity(be.circuit);
    CHECK(pur.strict_leak < 1e-10);
    CHECK(pur.conditional_leak < 1e-10);
  }
}

TEST_CASE("coordinate state preparation") {
  for (const auto& g : grids()) {
    auto prep = build_x_state_prep(g, false);
    const auto psi = prepared(prep);
    const auto xs = grid_points(g);
    const double nx = x_norm(g);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(psi[i] - xs[i] / nx) < 1e-10);
  }
}

TEST_CASE("coordinate amplitude oracle") {
  for (const auto& g : grids()) {
    auto ax = build_x_amplitude_oracle(g);
    const int n = g.n;
    CHECK(std::abs(ax.measured_scale - std::sqrt(2.0) * x_norm(g)) < 1e-10 * ax.measured_scale);
    CHECK(ax.enc.desc.flag_qubits == 1);
    CHECK(ax.enc.circuit->counts().pure_ancillas <= 2 * n - 1);
    CHECK(ax.enc.circuit->counts().one_qubit <= 2304 * n * n - 1064 * n - 109);
    const auto xs = grid_points(g);
    auto chk = assert_block_equals(ax.enc.circuit, ax.enc.desc,
                                   diag_of(std::vector<cplx>(xs.begin(), xs.end())), 1e-9);
    CHECK(chk.pass);
    if (g.a == -g.b) CHECK(std::abs(chk.block.trace()) < 1e-12);
    auto pur = check_purity(ax.enc.circuit);
    CHECK(pur.strict_leak < 1e-10);
    CHECK(pur.conditional_leak < 1e-10);
  }
}

TEST_CASE("phase solver") {
  // Degree one: Re(e^{i phi}) x = a x.
  auto id = solve_qsvt_phases({{0.0, 1.0 - 1e-6}});
  REQUIRE(id.phis.size() == 1);
  CHECK(std::abs(std::cos(id.phis[0]) - (1.0 - 1e-6)) < 1e-12);

  auto t3 = solve_qsvt_phases({{0.0, -3 * 0.99, 0.0, 4 * 0.99}});
  CHECK(t3.residual <= 1e-10);
  CHECK(t3.phis.size() == 3);

  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  int solved = 0;
  for (int d = 1; d <= 7; ++d)
    for (int rep = 0; rep < 3; ++rep) {
      Polynomial p{std::vector<double>(d + 1, 0.0)};
      for (int k = d % 2; k <= d; k += 2) p.coeffs[k] = u(rng);
      const double sup = 1.0 - check_polynomial(p).margin;
      for (auto& c : p.coeffs) c *= 0.95 / sup;
      auto s = solve_qsvt_phases(p);
      CHECK(s.residual <= 1e-10);
      for (double x : {-0.9, -0.3, 0.2, 0.77}) CHECK(std::abs(qsp_value(s.phis, x).real() - p(x)) < 1e-10);
      ++solved;
    }
  CHECK(solved == 21);

  CHECK_THROWS_AS(solve_qsvt_phases({{0.0, 1.2}}), BoundViolation);
  CHECK_THROWS_AS(solve_qsvt_phases({{0.1, 0.5}}), ParityViolation);

  auto back = phases_from_json(phases_to_json(t3));
  CHECK(back.phis == t3.phis);
  CHECK(back.target == t3.target);
}

TEST_CASE("alternating sequence matches scalar evaluation") {
  for (const auto& g : {GridSpec{2, -1.0, 1.0}, GridSpec{3, -0.5, 1.0}}) {
    auto ax = build_x_amplitude_oracle(g);
    const auto xs = grid_points(g);
    auto empty = build_alternating_sequence(ax.enc.circuit, "l", {});
    BlockEncodingDescriptor d = ax.enc.desc;
    d.scale = 1.0;
    CHECK(assert_block_equals(empty, d, DenseMatrix::Identity(xs.size(), xs.size()), 1e-12).pass);

    auto one = build_alternating_sequence(ax.enc.circuit, "l", {0.0});
    std::vector<cplx> raw;
    for (double x : xs) raw.push_back(x / ax.measured_scale);
    CHECK(assert_block_equals(one, d, diag_of(raw), 1e-12).pass);

    for (const auto& p : {Polynomial{{0.0, 0.4, 0.0, 0.5}}, Polynomial{{-0.3, 0.0, 0.8}},
                          Polynomial{{0.0, 0.2, 0.0, -0.5, 0.0, 0.6}}}) {
      auto s = solve_qsvt_phases(p);
      auto seq = build_alternating_sequence(ax.enc.circuit, "l", s.phis);
      std::vector<cplx> want;
      for (double x : xs) want.push_back(qsp_value(s.phis, x / ax.measured_scale));
      auto chk = assert_block_equals(seq, d, diag_of(want), 1e-9);
      CHECK(chk.pass);
      CHECK(chk.conditional_leak < 1e-10);
    }
  }
}

TEST_CASE("coordinate polynomial oracle") {
  const std::vector<Polynomial> polys{{{0.0, 0.9}},
                                      {{0.0, -0.25, 0.0, 0.5}},
                                      {{0.3, 0.0, -0.6}},
                                      {{0.5}},
                                      {{-0.7}},
                                      {{0.0, 0.3, 0.0, 0.2, 0.0, 0.4}}};
  for (const auto& g : {GridSpec{2, -1.0, 1.0}, GridSpec{3, -1.0, 1.0}, GridSpec{3, -0.2, 0.6}}) {
    const auto xs = grid_points(g);
    for (const auto& p : polys) {
      auto po = build_coordinate_polynomial_oracle(g, p);
      std::vector<cplx> want;
      for (double x : xs) want.push_back(p(x));
      auto chk = assert_block_equals(po.enc.circuit, po.enc.desc, diag_of(want), 1e-9);
      CHECK(chk.pass);
      CHECK(chk.conditional_leak < 1e-10);
      CHECK(po.enc.desc.flag_qubits == 2);
      CHECK(po.enc.circuit->counts().pure_ancillas <= 2 * g.n - 1);
      const int q = std::max(1, p.degree());
      CHECK(po.enc.circuit->counts().one_qubit <= 2304 * q * g.n * g.n - 1064 * q * g.n - 108 * q);
      // Parity on a symmetric grid: x_k and x_{N-1-k} are negatives.
      if (g.a == -g.b) {
        const auto n = xs.size();
        const double sgn = p.degree() % 2 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k)
          CHECK(std::abs(chk.block(k, k) - sgn * chk.block(n - 1 - k, n - 1 - k)) < 1e-9);
      }
    }
  }
}
