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

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hamforge {

using cplx = std::complex<double>;

// Row-major 2x2 matrix.
using Mat2 = std::array<cplx, 4>;

enum class GateKind : std::uint8_t { h, x, y, z, s, sdg, rx, ry, rz, u3, cx, gphase };

struct Gate {
  GateKind kind = GateKind::h;
  int q0 = -1;  // target; control for cx
  int q1 = -1;  // target for cx
  std::array<double, 3> p{0.0, 0.0, 0.0};

  bool operator==(const Gate& o) const = default;
};

int gate_arity(GateKind k);
int gate_param_count(GateKind k);
std::string_view gate_name(GateKind k);
bool gate_from_name(std::string_view name, GateKind& out);

Gate make_gate(GateKind k, int q0, int q1 = -1, double a = 0.0, double b = 0.0, double c = 0.0);

// Matrix of a one-qubit gate (kinds other than cx and gphase).
Mat2 gate_matrix(const Gate& g);
Mat2 mat_mul(const Mat2& a, const Mat2& b);

Gate inverse_gate(const Gate& g);
// Transpose of a gate as a gate sequence (y picks up a global phase).
std::vector<Gate> transpose_gate(const Gate& g);

// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZYZ {
  double alpha, beta, gamma, delta;
};
ZYZ zyz_decompose(const Mat2& u);

enum class RegKind : std::uint8_t { data, flag, pure };

struct Register {
  std::string name;
  int start = 0;
  int width = 0;
  RegKind kind = RegKind::data;
  // Pure registers only: clean on every input. Non-strict pure registers are
  // clean only on the branch where every flag of the enclosing encoding is 0.
  bool strict = true;

  bool operator==(const Register& o) const = default;
};

std::string_view reg_kind_name(const Register& r);

class Circuit;
using CircuitPtr = std::shared_ptr<const Circuit>;

// Invocation of a sub-circuit; wires[i] is the parent qubit carrying child qubit i.
struct Call {
  CircuitPtr sub;
  std::vector<int> wires;
};

using Op = std::variant<Gate, Call>;

struct Counts {
  std::int64_t one_qubit = 0;
  std::int64_t cnot = 0;
  int pure_ancillas = 0;

  bool operator==(const Counts& o) const = default;
};

enum class QubitRole : std::uint8_t { data, flag, strict_pure, cond_pure };

class Circuit {
 public:
  Circuit(std::string name, std::vector<Register> registers, std::vector<Op> ops);

  const std::string& name() const { return name_; }
  int num_qubits() const { return num_qubits_; }
  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<Op>& ops() const { return ops_; }

  bool has_register(std::string_view name) const;
  const Register& reg(std::string_view name) const;
  int qubit(std::string_view reg_name, int i) const;
  std::vector<int> qubits(std::string_view reg_name) const;

  QubitRole role(int q) const { return roles_[q]; }
  // Qubits that must be tracked when the circuit is simulated as a unit.
  const std::vector<int>& open_qubits() const { return open_; }
  const std::vector<int>& strict_pure_qubits() const { return strict_; }

  const Counts& counts() const { return counts_; }
  // Number of gates after full expansion, including gphase.
  std::int64_t flat_size() const { return flat_size_; }
  // Tree depth: 0 for a gate-only circuit.
  int depth() const { return depth_; }

 private:
  std::string name_;
  std::vector<Register> registers_;
  std::vector<Op> ops_;
  int num_qubits_ = 0;
  std::vector<QubitRole> roles_;
  std::vector<int> open_;
  std::vector<int> strict_;
  Counts counts_;
  std::int64_t flat_size_ = 0;
  int depth_ = 0;
};

// Incremental construction. All registers are declared before the first op;
// strict pure qubits of called sub-circuits are placed on a shared pool that is
// appended as the register "anc" when the circuit is built.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name);

  int add_register(const std::string& name, int width, RegKind kind, bool strict = true);
  int qubit(std::string_view reg_name, int i) const;
  std::vector<int> qubits(std::string_view reg_name) const;
  bool has_register(std::string_view name) const;

  void add(const Gate& g);
  void h(int q) { add(make_gate(GateKind::h, q)); }
  void x(int q) { add(make_gate(GateKind::x, q)); }
  void y(int q) { add(make_gate(GateKind::y, q)); }
  void z(int q) { add(make_gate(GateKind::z, q)); }
  void s(int q) { add(make_gate(GateKind::s, q)); }
  void sdg(int q) { add(make_gate(GateKind::sdg, q)); }
  void rx(int q, double t) { add(make_gate(GateKind::rx, q, -1, t)); }
  void ry(int q, double t) { add(make_gate(GateKind::ry, q, -1, t)); }
  void rz(int q, double t) { add(make_gate(GateKind::rz, q, -1, t)); }
  void u3(int q, double t, double p, double l) { add(make_gate(GateKind::u3, q, -1, t, p, l)); }
  void cx(int c, int t) { add(make_gate(GateKind::cx, c, t)); }
  void gphase(double t) { add(make_gate(GateKind::gphase, -1, -1, t)); }

  // wires lists the parent qubits for every non-strict-pure qubit of sub, in order.
  void call(const CircuitPtr& sub, const std::vector<int>& wires);
  // wires lists the parent qubit for every qubit of sub.
  void call_full(const CircuitPtr& sub, const std::vector<int>& wires);

  // Temporary strict pure qubits from the pool; released in LIFO order.
  std::vector<int> borrow(int n);
  void release(int n);

  CircuitPtr build();

 private:
  void freeze();
  int pool_qubit(int slot) const { return declared_ + slot; }
  void check_qubit(int q) const;

  std::string name_;
  std::vector<Register> registers_;
  std::vector<Op> ops_;
  int declared_ = 0;
  bool frozen_ = false;
  int borrowed_ = 0;
  int pool_width_ = 0;
};

// Fully expanded gate list.
std::vector<Gate> flatten(const Circuit& c);
// Gate-only circuit with the same registers and expanded gates.
CircuitPtr flattened(const Circuit& c);

CircuitPtr inverse_of(const CircuitPtr& c);
CircuitPtr transpose_of(const CircuitPtr& c);
// Adds a one-qubit register "ctrl" (qubit 0) and applies c when it is |1>.
CircuitPtr controlled_of(const CircuitPtr& c);

// Equality of registers and expanded gate lists.
bool same_circuit(const Circuit& a, const Circuit& b);

// Result runs a then b; wiring maps register names of b onto registers of the
// result (existing registers of a, or fresh ones when unmapped).
CircuitPtr compose(const CircuitPtr& a, const CircuitPtr& b,
                   const std::vector<std::pair<std::string, std::string>>& wiring);

Counts count_resources(const Circuit& c);

std::string export_gates(const Circuit& c);
CircuitPtr parse_gates(std::string_view text);

// Toffoli on (a, b -> t) that fires when a == va and b == vb; 8 one-qubit
// gates and 6 cx for every polarity.
CircuitPtr toffoli_circuit(bool va = true, bool vb = true);

struct BlockEncodingDescriptor {
  double scale = 1.0;
  int flag_qubits = 0;
  double error = 0.0;
  std::string data_register;
  std::vector<std::string> flag_registers;
  std::vector<std::string> pure_ancilla_registers;
};

// Checks the descriptor invariants against the circuit's registers.
void validate_descriptor(const Circuit& c, const BlockEncodingDescriptor& d);

}  // namespace hamforge
