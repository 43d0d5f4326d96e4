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

#include <random>

#include "doctest.h"
#include "hamforge/circuit.hpp"
#include "hamforge/errors.hpp"
#include "hamforge/kernels.hpp"
#include "hamforge/simulator.hpp"

using namespace hamforge;

namespace {

CircuitPtr random_circuit(int nq, int ngates, unsigned seed, bool with_calls = false) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::uniform_int_distribution<int> kind(0, 11), qd(0, nq - 1);
  CircuitBuilder b("rand");
  b.add_register("q", nq, RegKind::data);
  for (int i = 0; i < ngates; ++i) {
    auto k = static_cast<GateKind>(kind(rng));
    int q0 = qd(rng), q1 = qd(rng);
    if (k == GateKind::cx) {
      if (nq < 2) continue;
      while (q1 == q0) q1 = qd(rng);
      b.cx(q0, q1);
    } else if (k == GateKind::gphase) {
      b.gphase(ang(rng));
    } else {
      b.add(make_gate(k, q0, -1, ang(rng), ang(rng), ang(rng)));
    }
    if (with_calls && nq >= 3 && i % 7 == 3) {
      std::vector<int> w = {0, 1, 2};
      std::shuffle(w.begin(), w.end(), rng);
      b.call(toffoli_circuit(i % 2, i % 3 == 0), w);
    }
  }
  return b.build();
}

double max_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("gate conventions") {
  CircuitBuilder b("h");
  b.add_register("q", 1, RegKind::data);
  b.h(0);
  auto psi = apply_circuit(*b.build(), {1.0, 0.0});
  CHECK(std::abs(psi[1] - std::sqrt(0.5)) < 1e-15);

  CircuitBuilder c("cx");
  c.add_register("q", 2, RegKind::data);
  c.cx(0, 1);
  // |10> has index 2 and maps to |11>.
  auto out = apply_circuit(*c.build(), {0.0, 0.0, 1.0, 0.0});
  CHECK(std::abs(out[3] - 1.0) < 1e-15);
}

TEST_CASE("toffoli polarity truth table") {
  for (int va = 0; va < 2; ++va)
    for (int vb = 0; vb < 2; ++vb) {
      auto t = toffoli_circuit(va, vb);
      CHECK(t->counts() == Counts{8, 6, 0});
      auto u = circuit_unitary(*t);
      DenseMatrix expect = DenseMatrix::Identity(8, 8);
      const int base = (va << 2) | (vb << 1);
      expect(base, base) = 0;
      expect(base + 1, base + 1) = 0;
      expect(base, base + 1) = 1;
      expect(base + 1, base) = 1;
      CHECK(max_diff(u, expect) < 1e-12);
    }
}

TEST_CASE("inverse is an involution and undoes the circuit") {
  auto c = random_circuit(3, 40, 1, true);
  auto inv = inverse_of(c);
  CHECK(inverse_of(inv) == c);
  CHECK(inv->counts() == c->counts());
  auto u = circuit_unitary(*c), v = circuit_unitary(*inv);
  CHECK(max_diff(v * u, DenseMatrix::Identity(8, 8)) < 1e-12);

  CircuitBuilder one("ry");
  one.add_register("q", 1, RegKind::data);
  one.ry(0, 0.3);
  auto r = flatten(*inverse_of(one.build()));
  CHECK(r.size() == 1);
  CHECK(r[0].p[0] == -0.3);
}

TEST_CASE("transpose matches the matrix transpose") {
  auto c = random_circuit(3, 60, 2, true);
  auto u = circuit_unitary(*c), t = circuit_unitary(*transpose_of(c));
  CHECK(max_diff(t, u.transpose()) < 1e-12);
}

TEST_CASE("controlled circuit is block diagonal") {
  for (unsigned seed = 3; seed < 8; ++seed) {
    auto c = random_circuit(2, 30, seed);
    auto cc = controlled_of(c);
    auto u = circuit_unitary(*c), cu = circuit_unitary(*cc);
    DenseMatrix expect = DenseMatrix::Zero(8, 8);
    expect.topLeftCorner(4, 4).setIdentity();
    expect.bottomRightCorner(4, 4) = u;
    CHECK(max_diff(cu, expect) < 1e-12);
  }
  auto nested = controlled_of(random_circuit(3, 30, 9, true));
  auto u = circuit_unitary(*nested);
  CHECK(max_diff(u.topLeftCorner(8, 8), DenseMatrix::Identity(8, 8)) < 1e-12);
}

TEST_CASE("controlled gate costs") {
  CircuitBuilder b("x");
  b.add_register("q", 1, RegKind::data);
  b.x(0);
  auto cx = flatten(*controlled_of(b.build()));
  REQUIRE(cx.size() == 1);
  CHECK(cx[0].kind == GateKind::cx);
  for (unsigned seed = 10; seed < 30; ++seed) {
    CircuitBuilder g("g");
    g.add_register("q", 1, RegKind::data);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ang(-3, 3);
    g.u3(0, ang(rng), ang(rng), ang(rng));
    auto c = controlled_of(g.build());
    CHECK(c->counts().cnot <= 2);
    CHECK(c->counts().one_qubit <= 5);
  }
}

TEST_CASE("compose and counts") {
  auto a = random_circuit(2, 10, 11), b = random_circuit(2, 12, 12);
  auto ab = compose(a, b, {{"q", "q"}});
  CHECK(ab->counts().one_qubit == a->counts().one_qubit + b->counts().one_qubit);
  CHECK(ab->counts().cnot == a->counts().cnot + b->counts().cnot);
  auto uu = circuit_unitary(*compose(a, inverse_of(a), {{"q", "q"}}));
  CHECK(max_diff(uu, DenseMatrix::Identity(4, 4)) < 1e-12);
  CircuitBuilder e("empty");
  e.add_register("q", 2, RegKind::data);
  CHECK(same_circuit(*compose(e.build(), a, {{"q", "q"}}), *a));
  CHECK_THROWS_AS(compose(a, b, {{"q", "missing"}}), ConstructionError);
  CircuitBuilder w("wide");
  w.add_register("q", 3, RegKind::data);
  CHECK_THROWS_AS(compose(a, w.build(), {{"q", "q"}}), WidthMismatch);
  CHECK_THROWS_AS(compose(a, b, {}), NameCollision);
}

TEST_CASE("export and parse round trip") {
  auto c = random_circuit(3, 80, 13, true);
  const auto text = export_gates(*c);
  auto p = parse_gates(text);
  CHECK(export_gates(*p) == text);
  CHECK(p->counts() == c->counts());
  CHECK(max_diff(circuit_unitary(*p), circuit_unitary(*c)) < 1e-14);
  CHECK_THROWS_AS(parse_gates("# reg q 0 1 data\nfoo 0\n"), SchemaError);
  CHECK_THROWS_AS(parse_gates("# reg q 0 1 data\ncx 0 0\n"), SchemaError);
}

TEST_CASE("empty circuit counts") {
  CircuitBuilder b("empty");
  b.add_register("q", 1, RegKind::data);
  CHECK(count_resources(*b.build()) == Counts{0, 0, 0});
}

TEST_CASE("pool ancillas and hierarchical simulation agree with flat simulation") {
  // AND of three qubits into a target through a borrowed ancilla.
  CircuitBuilder inner("and3");
  inner.add_register("c", 3, RegKind::data);
  inner.add_register("t", 1, RegKind::data);
  auto anc = inner.borrow(1);
  inner.call(toffoli_circuit(), {0, 1, anc[0]});
  inner.call(toffoli_circuit(), {2, anc[0], 3});
  inner.call(toffoli_circuit(), {0, 1, anc[0]});
  inner.release(1);
  auto and3 = inner.build();
  CHECK(and3->counts().pure_ancillas == 1);

  CircuitBuilder outer("outer");
  outer.add_register("q", 4, RegKind::data);
  outer.h(0);
  outer.h(1);
  outer.h(2);
  outer.call(and3, {0, 1, 2, 3});
  outer.call(and3, {2, 1, 0, 3});
  outer.call(and3, {3, 2, 1, 0});
  auto top = outer.build();

  SimOptions opt;
  opt.macro_min_gates = 1;
  opt.macro_open_limit = 4;
  Simulator sim(top, opt);
  CHECK(sim.num_bits() == 4);
  StateVector psi(16, 0.0);
  psi[0] = 1.0;
  sim.run(psi);
  StateVector full(std::size_t{1} << top->num_qubits(), 0.0);
  full[0] = 1.0;
  full = apply_circuit(*top, full);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(psi[i] - full[i << 1]) < 1e-12);

  auto rep = check_purity(top, 64, opt);
  CHECK(rep.exhaustive);
  CHECK(rep.strict_leak < 1e-10);
}

TEST_CASE("block extraction of a single rotation") {
  CircuitBuilder b("ry");
  b.add_register("flag", 1, RegKind::flag);
  b.add_register("d", 2, RegKind::data);
  b.ry(0, 2 * 0.4);
  auto c = b.build();
  BlockEncodingDescriptor d;
  d.data_register = "d";
  d.flag_registers = {"flag"};
  d.flag_qubits = 1;
  validate_descriptor(*c, d);
  auto res = extract_block(c, d);
  CHECK(max_diff(res.block, std::cos(0.4) * DenseMatrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("serial and OpenMP kernels agree") {
  const int bits = 11;
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << bits);
  for (auto& v : a) v = cplx(g(rng), g(rng));
  auto b = a;
  const Mat2 u = {cplx(0.6, 0.1), cplx(-0.2, 0.3), cplx(0.4, -0.5), cplx(0.7, 0.0)};
  for (int pos = 0; pos < bits; ++pos) {
    kernels::apply_1q_serial(a.data(), bits, pos, u);
    kernels::apply_1q_omp(b.data(), bits, pos, u);
    kernels::apply_cx_serial(a.data(), bits, pos, (pos + 3) % bits);
    kernels::apply_cx_omp(b.data(), bits, pos, (pos + 3) % bits);
  }
  kernels::scale_serial(a.data(), bits, cplx(0.3, -0.8));
  kernels::scale_omp(b.data(), bits, cplx(0.3, -0.8));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
