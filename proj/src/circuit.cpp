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

#include "hamforge/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hamforge/errors.hpp"

namespace hamforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-14;

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<GateInfo, 12> kGateInfo = {{
    {GateKind::h, "h", 1, 0},
    {GateKind::x, "x", 1, 0},
    {GateKind::y, "y", 1, 0},
    {GateKind::z, "z", 1, 0},
    {GateKind::s, "s", 1, 0},
    {GateKind::sdg, "sdg", 1, 0},
    {GateKind::rx, "rx", 1, 1},
    {GateKind::ry, "ry", 1, 1},
    {GateKind::rz, "rz", 1, 1},
    {GateKind::u3, "u3", 1, 3},
    {GateKind::cx, "cx", 2, 0},
    {GateKind::gphase, "gphase", 0, 1},
}};

const GateInfo& info(GateKind k) { return kGateInfo[static_cast<int>(k)]; }

bool negligible(double a) { return std::abs(a) < kAngleEps; }

}  // namespace

int gate_arity(GateKind k) { return info(k).arity; }
int gate_param_count(GateKind k) { return info(k).params; }
std::string_view gate_name(GateKind k) { return info(k).name; }

bool gate_from_name(std::string_view name, GateKind& out) {
  for (const auto& gi : kGateInfo) {
    if (gi.name == name) {
      out = gi.kind;
      return true;
    }
  }
  return false;
}

Gate make_gate(GateKind k, int q0, int q1, double a, double b, double c) {
  Gate g;
  g.kind = k;
  g.q0 = q0;
  g.q1 = q1;
  g.p = {a, b, c};
  return g;
}

Mat2 gate_matrix(const Gate& g) {
  const cplx i(0.0, 1.0);
  const double r = std::numbers::sqrt2 / 2.0;
  switch (g.kind) {
    case GateKind::h:
      return {r, r, r, -r};
    case GateKind::x:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::y:
      return {0.0, -i, i, 0.0};
    case GateKind::z:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::s:
      return {1.0, 0.0, 0.0, i};
    case GateKind::sdg:
      return {1.0, 0.0, 0.0, -i};
    case GateKind::rx: {
      const double c = std::cos(g.p[0] / 2), s = std::sin(g.p[0] / 2);
      return {c, -i * s, -i * s, c};
    }
    case GateKind::ry: {
      const double c = std::cos(g.p[0] / 2), s = std::sin(g.p[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::rz:
      return {std::polar(1.0, -g.p[0] / 2), 0.0, 0.0, std::polar(1.0, g.p[0] / 2)};
    case GateKind::u3: {
      const double c = std::cos(g.p[0] / 2), s = std::sin(g.p[0] / 2);
      return {c, -std::polar(s, g.p[2]), std::polar(s, g.p[1]),
              std::polar(c, g.p[1] + g.p[2])};
    }
    case GateKind::cx:
    case GateKind::gphase:
      break;
  }
  throw ConstructionError("gate_matrix: not a one-qubit gate");
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Gate inverse_gate(const Gate& g) {
  Gate r = g;
  switch (g.kind) {
    case GateKind::s:
      r.kind = GateKind::sdg;
      break;
    case GateKind::sdg:
      r.kind = GateKind::s;
      break;
    case GateKind::rx:
    case GateKind::ry:
    case GateKind::rz:
    case GateKind::gphase:
      r.p[0] = -g.p[0];
      break;
    case GateKind::u3:
      r.p = {-g.p[0], -g.p[2], -g.p[1]};
      break;
    default:
      break;
  }
  return r;
}

std::vector<Gate> transpose_gate(const Gate& g) {
  Gate r = g;
  switch (g.kind) {
    case GateKind::ry:
      r.p[0] = -g.p[0];
      return {r};
    case GateKind::y:
      return {r, make_gate(GateKind::gphase, -1, -1, kPi)};
    case GateKind::u3:
      r.p = {-g.p[0], g.p[2], g.p[1]};
      return {r};
    default:
      return {r};
  }
}

ZYZ zyz_decompose(const Mat2& u) {
  const cplx det = u[0] * u[3] - u[1] * u[2];
  ZYZ z{};
  z.alpha = std::arg(det) / 2.0;
  const cplx ph = std::polar(1.0, -z.alpha);
  const cplx a = ph * u[0];
  const cplx b = ph * u[2];
  const double ma = std::abs(a), mb = std::abs(b);
  z.gamma = 2.0 * std::atan2(mb, ma);
  if (mb < 1e-14) {
    z.beta = -2.0 * std::arg(a);
    z.delta = 0.0;
  } else if (ma < 1e-14) {
    z.beta = 2.0 * std::arg(b);
    z.delta = 0.0;
  } else {
    z.beta = std::arg(b) - std::arg(a);
    z.delta = -std::arg(a) - std::arg(b);
  }
  return z;
}

std::string_view reg_kind_name(const Register& r) {
  switch (r.kind) {
    case RegKind::data:
      return "data";
    case RegKind::flag:
      return "flag";
    case RegKind::pure:
      return r.strict ? "pure" : "condpure";
  }
  return "data";
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(std::string name, std::vector<Register> registers, std::vector<Op> ops)
    : name_(std::move(name)), registers_(std::move(registers)), ops_(std::move(ops)) {
  std::unordered_set<std::string> names;
  for (const auto& r : registers_) {
    if (!names.insert(r.name).second) throw NameCollision("register '" + r.name + "' in " + name_);
    if (r.start != num_qubits_ || r.width < 0)
      throw ConstructionError("register '" + r.name + "' is not contiguous in " + name_);
    num_qubits_ += r.width;
    for (int k = 0; k < r.width; ++k) {
      QubitRole role = QubitRole::data;
      if (r.kind == RegKind::flag) role = QubitRole::flag;
      if (r.kind == RegKind::pure) role = r.strict ? QubitRole::strict_pure : QubitRole::cond_pure;
      roles_.push_back(role);
    }
    if (r.kind == RegKind::pure) counts_.pure_ancillas += r.width;
  }
  for (int q = 0; q < num_qubits_; ++q) {
    if (roles_[q] == QubitRole::strict_pure)
      strict_.push_back(q);
    else
      open_.push_back(q);
  }
  auto in_range = [&](int q) { return q >= 0 && q < num_qubits_; };
  for (const auto& op : ops_) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      const int ar = gate_arity(g->kind);
      if ((ar >= 1 && !in_range(g->q0)) || (ar == 2 && (!in_range(g->q1) || g->q0 == g->q1)))
        throw ConstructionError("gate '" + std::string(gate_name(g->kind)) +
                                "' has an invalid target in " + name_);
      ++flat_size_;
      if (g->kind == GateKind::cx)
        ++counts_.cnot;
      else if (ar == 1)
        ++counts_.one_qubit;
    } else {
      const auto& c = std::get<Call>(op);
      if (!c.sub || static_cast<int>(c.wires.size()) != c.sub->num_qubits())
        throw WidthMismatch("call wiring in " + name_);
      std::unordered_set<int> seen;
      for (int w : c.wires)
        if (!in_range(w) || !seen.insert(w).second)
          throw ConstructionError("call of '" + c.sub->name() + "' has invalid wires in " + name_);
      counts_.one_qubit += c.sub->counts().one_qubit;
      counts_.cnot += c.sub->counts().cnot;
      flat_size_ += c.sub->flat_size();
      depth_ = std::max(depth_, c.sub->depth() + 1);
    }
  }
}

bool Circuit::has_register(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

const Register& Circuit::reg(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw ConstructionError("no register '" + std::string(name) + "' in " + name_);
}

int Circuit::qubit(std::string_view reg_name, int i) const {
  const auto& r = reg(reg_name);
  if (i < 0 || i >= r.width) throw ConstructionError("qubit index out of range in " + r.name);
  return r.start + i;
}

std::vector<int> Circuit::qubits(std::string_view reg_name) const {
  const auto& r = reg(reg_name);
  std::vector<int> out(r.width);
  for (int k = 0; k < r.width; ++k) out[k] = r.start + k;
  return out;
}

// ---------------------------------------------------------------------------
// Builder

CircuitBuilder::CircuitBuilder(std::string name) : name_(std::move(name)) {}

int CircuitBuilder::add_register(const std::string& name, int width, RegKind kind, bool strict) {
  if (frozen_) throw ConstructionError("register '" + name + "' declared after ops in " + name_);
  if (has_register(name) || name == "anc")
    throw NameCollision("register '" + name + "' in " + name_);
  if (width < 0) throw WidthMismatch("negative width for '" + name + "'");
  Register r;
  r.name = name;
  r.start = declared_;
  r.width = width;
  r.kind = kind;
  r.strict = kind == RegKind::pure ? strict : true;
  registers_.push_back(r);
  declared_ += width;
  return r.start;
}

bool CircuitBuilder::has_register(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

int CircuitBuilder::qubit(std::string_view reg_name, int i) const {
  for (const auto& r : registers_) {
    if (r.name != reg_name) continue;
    if (i < 0 || i >= r.width)
      throw ConstructionError("qubit index out of range in " + r.name);
    return r.start + i;
  }
  throw ConstructionError("no register '" + std::string(reg_name) + "' in " + name_);
}

std::vector<int> CircuitBuilder::qubits(std::string_view reg_name) const {
  for (const auto& r : registers_) {
    if (r.name != reg_name) continue;
    std::vector<int> out(r.width);
    for (int k = 0; k < r.width; ++k) out[k] = r.start + k;
    return out;
  }
  throw ConstructionError("no register '" + std::string(reg_name) + "' in " + name_);
}

void CircuitBuilder::freeze() { frozen_ = true; }

void CircuitBuilder::check_qubit(int q) const {
  if (q < 0 || q >= declared_ + borrowed_)
    throw ConstructionError("qubit " + std::to_string(q) + " out of range in " + name_);
}

void CircuitBuilder::add(const Gate& g) {
  freeze();
  const int ar = gate_arity(g.kind);
  if (ar >= 1) check_qubit(g.q0);
  if (ar == 2) {
    check_qubit(g.q1);
    if (g.q0 == g.q1) throw ConstructionError("cx with equal control and target in " + name_);
  }
  for (int k = 0; k < gate_param_count(g.kind); ++k)
    if (!std::isfinite(g.p[k])) throw NaNAngle("non-finite angle in " + name_);
  ops_.emplace_back(g);
}

void CircuitBuilder::call(const CircuitPtr& sub, const std::vector<int>& wires) {
  freeze();
  if (wires.size() != sub->open_qubits().size())
    throw WidthMismatch("call of '" + sub->name() + "' expects " +
                        std::to_string(sub->open_qubits().size()) + " wires, got " +
                        std::to_string(wires.size()) + " in " + name_);
  std::vector<int> full(sub->num_qubits());
  size_t j = 0;
  int slot = borrowed_;
  for (int q = 0; q < sub->num_qubits(); ++q) {
    if (sub->role(q) == QubitRole::strict_pure) {
      full[q] = pool_qubit(slot++);
    } else {
      check_qubit(wires[j]);
      full[q] = wires[j++];
    }
  }
  pool_width_ = std::max(pool_width_, slot);
  ops_.emplace_back(Call{sub, std::move(full)});
}

void CircuitBuilder::call_full(const CircuitPtr& sub, const std::vector<int>& wires) {
  freeze();
  if (static_cast<int>(wires.size()) != sub->num_qubits())
    throw WidthMismatch("call_full of '" + sub->name() + "' in " + name_);
  for (int w : wires) check_qubit(w);
  ops_.emplace_back(Call{sub, wires});
}

std::vector<int> CircuitBuilder::borrow(int n) {
  freeze();
  std::vector<int> out(n);
  for (int k = 0; k < n; ++k) out[k] = pool_qubit(borrowed_ + k);
  borrowed_ += n;
  pool_width_ = std::max(pool_width_, borrowed_);
  return out;
}

void CircuitBuilder::release(int n) {
  if (n > borrowed_) throw ConstructionError("release beyond borrowed pool in " + name_);
  borrowed_ -= n;
}

CircuitPtr CircuitBuilder::build() {
  if (borrowed_ != 0) throw ConstructionError("pool qubits still borrowed in " + name_);
  auto regs = registers_;
  if (pool_width_ > 0) {
    Register r;
    r.name = "anc";
    r.start = declared_;
    r.width = pool_width_;
    r.kind = RegKind::pure;
    regs.push_back(r);
  }
  frozen_ = true;
  return std::make_shared<const Circuit>(name_, std::move(regs), std::move(ops_));
}

// ---------------------------------------------------------------------------
// Expansion and transforms

namespace {

void flatten_into(const Circuit& c, const std::vector<int>& map, std::vector<Gate>& out) {
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      Gate r = *g;
      if (r.q0 >= 0) r.q0 = map[r.q0];
      if (r.q1 >= 0) r.q1 = map[r.q1];
      out.push_back(r);
    } else {
      const auto& call = std::get<Call>(op);
      std::vector<int> sub_map(call.wires.size());
      for (size_t k = 0; k < call.wires.size(); ++k) sub_map[k] = map[call.wires[k]];
      flatten_into(*call.sub, sub_map, out);
    }
  }
}

class TransformCache {
 public:
  CircuitPtr find(const Circuit* key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second.second;
  }
  void put(const CircuitPtr& key, const CircuitPtr& value) {
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(key.get(), std::make_pair(key, value));
  }

 private:
  std::mutex mu_;
  std::unordered_map<const Circuit*, std::pair<CircuitPtr, CircuitPtr>> map_;
};

TransformCache& inverse_cache() {
  static TransformCache cache;
  return cache;
}
TransformCache& transpose_cache() {
  static TransformCache cache;
  return cache;
}
TransformCache& control_cache() {
  static TransformCache cache;
  return cache;
}

void emit_controlled_one_qubit(std::vector<Op>& out, const Gate& g, int ctl) {
  const int t = g.q0;
  auto push = [&](GateKind k, int q, double a = 0, double b = 0, double c = 0) {
    out.emplace_back(make_gate(k, q, -1, a, b, c));
  };
  auto push_cx = [&]() { out.emplace_back(make_gate(GateKind::cx, ctl, t)); };
  const ZYZ z = zyz_decompose(gate_matrix(g));
  if (negligible(z.gamma)) {
    const double beta = z.beta + z.delta;
    if (!negligible(beta)) {
      push(GateKind::rz, t, beta / 2);
      push_cx();
      push(GateKind::rz, t, -beta / 2);
      push_cx();
    }
  } else {
    const double c_angle = (z.delta - z.beta) / 2;
    if (!negligible(c_angle)) push(GateKind::rz, t, c_angle);
    push_cx();
    const double zeta = -(z.delta + z.beta) / 2;
    if (negligible(zeta)) {
      push(GateKind::ry, t, -z.gamma / 2);
    } else {
      push(GateKind::u3, t, -z.gamma / 2, 0.0, zeta);
      push(GateKind::gphase, -1, -zeta / 2);
    }
    push_cx();
    if (negligible(z.beta)) {
      push(GateKind::ry, t, z.gamma / 2);
    } else {
      push(GateKind::u3, t, z.gamma / 2, z.beta, 0.0);
      push(GateKind::gphase, -1, -z.beta / 2);
    }
  }
  if (!negligible(z.alpha)) {
    push(GateKind::rz, ctl, z.alpha);
    push(GateKind::gphase, -1, z.alpha / 2);
  }
}

std::string unique_name(const Circuit& c, const std::string& base) {
  std::string name = base;
  for (int k = 1; c.has_register(name) || name == "anc"; ++k) name = base + std::to_string(k);
  return name;
}

}  // namespace

std::vector<Gate> flatten(const Circuit& c) {
  std::vector<Gate> out;
  out.reserve(static_cast<size_t>(c.flat_size()));
  std::vector<int> map(c.num_qubits());
  for (int q = 0; q < c.num_qubits(); ++q) map[q] = q;
  flatten_into(c, map, out);
  return out;
}

CircuitPtr flattened(const Circuit& c) {
  auto gates = flatten(c);
  std::vector<Op> ops(gates.begin(), gates.end());
  return std::make_shared<const Circuit>(c.name(), c.registers(), std::move(ops));
}

CircuitPtr inverse_of(const CircuitPtr& c) {
  if (auto hit = inverse_cache().find(c.get())) return hit;
  std::vector<Op> ops;
  ops.reserve(c->ops().size());
  for (auto it = c->ops().rbegin(); it != c->ops().rend(); ++it) {
    if (const auto* g = std::get_if<Gate>(&*it)) {
      ops.emplace_back(inverse_gate(*g));
    } else {
      const auto& call = std::get<Call>(*it);
      ops.emplace_back(Call{inverse_of(call.sub), call.wires});
    }
  }
  auto inv = std::make_shared<const Circuit>(c->name() + "_dg", c->registers(), std::move(ops));
  inverse_cache().put(c, inv);
  inverse_cache().put(inv, c);
  return inv;
}

CircuitPtr transpose_of(const CircuitPtr& c) {
  if (auto hit = transpose_cache().find(c.get())) return hit;
  std::vector<Op> ops;
  for (auto it = c->ops().rbegin(); it != c->ops().rend(); ++it) {
    if (const auto* g = std::get_if<Gate>(&*it)) {
      for (const auto& t : transpose_gate(*g)) ops.emplace_back(t);
    } else {
      const auto& call = std::get<Call>(*it);
      ops.emplace_back(Call{transpose_of(call.sub), call.wires});
    }
  }
  auto tr = std::make_shared<const Circuit>(c->name() + "_T", c->registers(), std::move(ops));
  transpose_cache().put(c, tr);
  return tr;
}

CircuitPtr controlled_of(const CircuitPtr& c) {
  if (auto hit = control_cache().find(c.get())) return hit;
  std::vector<Register> regs;
  Register ctrl;
  ctrl.name = unique_name(*c, "ctrl");
  ctrl.start = 0;
  ctrl.width = 1;
  ctrl.kind = RegKind::data;
  regs.push_back(ctrl);
  for (auto r : c->registers()) {
    r.start += 1;
    regs.push_back(r);
  }
  const int ctl = 0;
  std::vector<Op> ops;
  for (const auto& op : c->ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      Gate s = *g;
      if (s.q0 >= 0) s.q0 += 1;
      if (s.q1 >= 0) s.q1 += 1;
      switch (s.kind) {
        case GateKind::x:
          ops.emplace_back(make_gate(GateKind::cx, ctl, s.q0));
          break;
        case GateKind::cx:
          ops.emplace_back(Call{toffoli_circuit(true, true), {ctl, s.q0, s.q1}});
          break;
        case GateKind::gphase:
          if (!negligible(s.p[0])) {
            ops.emplace_back(make_gate(GateKind::rz, ctl, -1, s.p[0]));
            ops.emplace_back(make_gate(GateKind::gphase, -1, -1, s.p[0] / 2));
          }
          break;
        default:
          emit_controlled_one_qubit(ops, s, ctl);
          break;
      }
    } else {
      const auto& call = std::get<Call>(op);
      std::vector<int> wires;
      wires.reserve(call.wires.size() + 1);
      wires.push_back(ctl);
      for (int w : call.wires) wires.push_back(w + 1);
      ops.emplace_back(Call{controlled_of(call.sub), std::move(wires)});
    }
  }
  auto out = std::make_shared<const Circuit>("c_" + c->name(), std::move(regs), std::move(ops));
  control_cache().put(c, out);
  return out;
}

bool same_circuit(const Circuit& a, const Circuit& b) {
  if (a.registers() != b.registers()) return false;
  return flatten(a) == flatten(b);
}

CircuitPtr compose(const CircuitPtr& a, const CircuitPtr& b,
                   const std::vector<std::pair<std::string, std::string>>& wiring) {
  std::map<std::string, std::string> wmap(wiring.begin(), wiring.end());
  std::vector<Register> regs = a->registers();
  int width = a->num_qubits();
  std::vector<int> bwires(b->num_qubits(), -1);
  for (const auto& rb : b->registers()) {
    auto it = wmap.find(rb.name);
    if (it != wmap.end()) {
      const Register* target = nullptr;
      for (const auto& r : regs)
        if (r.name == it->second) target = &r;
      if (!target) throw ConstructionError("compose: no register '" + it->second + "'");
      if (target->width != rb.width)
        throw WidthMismatch("compose: '" + rb.name + "' onto '" + target->name + "'");
      for (int k = 0; k < rb.width; ++k) bwires[rb.start + k] = target->start + k;
    } else {
      for (const auto& r : regs)
        if (r.name == rb.name) throw NameCollision("compose: register '" + rb.name + "'");
      Register r = rb;
      r.start = width;
      regs.push_back(r);
      for (int k = 0; k < rb.width; ++k) bwires[rb.start + k] = width + k;
      width += rb.width;
    }
  }
  std::vector<int> awires(a->num_qubits());
  for (int q = 0; q < a->num_qubits(); ++q) awires[q] = q;
  std::vector<Op> ops;
  ops.emplace_back(Call{a, awires});
  ops.emplace_back(Call{b, bwires});
  return std::make_shared<const Circuit>(a->name() + "+" + b->name(), std::move(regs),
                                         std::move(ops));
}

Counts count_resources(const Circuit& c) { return c.counts(); }

// ---------------------------------------------------------------------------
// Text format

namespace {

void append_angle(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, " %.17g", v);
  s += buf;
}

double parse_double(std::string_view tok, int line) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw SchemaError("bad number '" + std::string(tok) + "' on line " + std::to_string(line));
  return v;
}

int parse_int(std::string_view tok, int line) {
  int v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw SchemaError("bad integer '" + std::string(tok) + "' on line " + std::to_string(line));
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string export_gates(const Circuit& c) {
  std::string out;
  for (const auto& r : c.registers()) {
    out += "# reg " + r.name + " " + std::to_string(r.start) + " " + std::to_string(r.width) +
           " " + std::string(reg_kind_name(r)) + "\n";
  }
  for (const auto& g : flatten(c)) {
    out += gate_name(g.kind);
    if (gate_arity(g.kind) >= 1) out += " " + std::to_string(g.q0);
    if (gate_arity(g.kind) == 2) out += " " + std::to_string(g.q1);
    for (int k = 0; k < gate_param_count(g.kind); ++k) append_angle(out, g.p[k]);
    out += "\n";
  }
  return out;
}

CircuitPtr parse_gates(std::string_view text) {
  std::vector<Register> regs;
  std::vector<Op> ops;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "#") {
      if (tok.size() >= 2 && tok[1] == "reg") {
        if (tok.size() != 6) throw SchemaError("bad register header on line " + std::to_string(line_no));
        Register r;
        r.name = std::string(tok[2]);
        r.start = parse_int(tok[3], line_no);
        r.width = parse_int(tok[4], line_no);
        if (tok[5] == "data") {
          r.kind = RegKind::data;
        } else if (tok[5] == "flag") {
          r.kind = RegKind::flag;
        } else if (tok[5] == "pure") {
          r.kind = RegKind::pure;
        } else if (tok[5] == "condpure") {
          r.kind = RegKind::pure;
          r.strict = false;
        } else {
          throw SchemaError("unknown register kind on line " + std::to_string(line_no));
        }
        regs.push_back(r);
      }
      if (end == text.size()) break;
      continue;
    }
    GateKind kind;
    if (!gate_from_name(tok[0], kind))
      throw SchemaError("unknown gate '" + std::string(tok[0]) + "' on line " + std::to_string(line_no));
    const int ar = gate_arity(kind), np = gate_param_count(kind);
    if (static_cast<int>(tok.size()) != 1 + ar + np)
      throw SchemaError("wrong operand count on line " + std::to_string(line_no));
    Gate g;
    g.kind = kind;
    if (ar >= 1) g.q0 = parse_int(tok[1], line_no);
    if (ar == 2) g.q1 = parse_int(tok[2], line_no);
    for (int k = 0; k < np; ++k) g.p[k] = parse_double(tok[1 + ar + k], line_no);
    ops.emplace_back(g);
    if (end == text.size()) break;
  }
  try {
    return std::make_shared<const Circuit>("parsed", std::move(regs), std::move(ops));
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid gate file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Polarity Toffoli

CircuitPtr toffoli_circuit(bool va, bool vb) {
  static std::mutex mu;
  static std::array<CircuitPtr, 4> cache;
  std::lock_guard<std::mutex> lock(mu);
  const int key = (va ? 2 : 0) + (vb ? 1 : 0);
  if (cache[key]) return cache[key];

  // Walsh expansion of the phase pi*[a==va][b==vb]*t over the parities of
  // (a, b, t); mask bits a=4, b=2, t=1.
  std::array<double, 8> c{};
  for (int x = 0; x < 8; ++x) {
    const int a = (x >> 2) & 1, b = (x >> 1) & 1, t = x & 1;
    const double phi = (a == int(va) && b == int(vb) && t == 1) ? kPi : 0.0;
    for (int s = 0; s < 8; ++s) c[s] += phi * ((__builtin_popcount(x & s) & 1) ? -1.0 : 1.0) / 8.0;
  }
  std::array<double, 8> w{};
  double constant = 0.0;
  for (int s = 0; s < 8; ++s) {
    constant += c[s];
    w[s] = -2.0 * c[s];
  }
  double phase = constant;
  for (int s : {3, 7, 5, 2, 4, 6}) phase += w[s] / 2.0;

  CircuitBuilder b("toffoli" + std::string(va ? "1" : "0") + (vb ? "1" : "0"));
  b.add_register("c", 2, RegKind::data);
  b.add_register("t", 1, RegKind::data);
  const int qa = 0, qb = 1, qt = 2;
  b.h(qt);
  b.cx(qb, qt);
  b.rz(qt, w[3]);
  b.cx(qa, qt);
  b.rz(qt, w[7]);
  b.cx(qb, qt);
  b.rz(qt, w[5]);
  b.cx(qa, qt);
  b.rz(qb, w[2]);
  b.u3(qt, kPi / 2, 0.0, w[1] + kPi);
  b.cx(qa, qb);
  b.rz(qa, w[4]);
  b.rz(qb, w[6]);
  b.cx(qa, qb);
  if (!negligible(std::remainder(phase, 2 * kPi))) b.gphase(phase);
  cache[key] = b.build();
  return cache[key];
}

void validate_descriptor(const Circuit& c, const BlockEncodingDescriptor& d) {
  if (!(d.scale > 0)) throw ConstructionError("descriptor scale must be positive");
  if (!(d.error >= 0)) throw ConstructionError("descriptor error must be nonnegative");
  if (c.reg(d.data_register).kind != RegKind::data)
    throw ConstructionError("descriptor data register '" + d.data_register + "' is not data");
  int flags = 0;
  for (const auto& f : d.flag_registers) {
    const auto& r = c.reg(f);
    if (r.kind != RegKind::flag) throw ConstructionError("register '" + f + "' is not a flag");
    flags += r.width;
  }
  if (flags != d.flag_qubits) throw WidthMismatch("descriptor flag count disagrees with registers");
  for (const auto& p : d.pure_ancilla_registers)
    if (c.reg(p).kind != RegKind::pure) throw ConstructionError("register '" + p + "' is not pure");
}

}  // namespace hamforge
