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

#include "hamforge/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "hamforge/errors.hpp"
#include "hamforge/kernels.hpp"

namespace hamforge {

using kernels::Index;

namespace {

constexpr double kLeakTol = 1e-10;
constexpr double kDropTol = 1e-14;
constexpr int kParallelBits = 14;
constexpr double kStateDropTol = 1e-15;

struct Macro {
  int k = 0;
  std::vector<std::uint32_t> col_ptr;
  std::vector<std::uint32_t> rows;
  std::vector<cplx> vals;
};

using Key = std::tuple<const Circuit*, int, std::int64_t>;

struct Cache {
  std::mutex mu;
  SimOptions defaults;
  std::map<Key, std::pair<CircuitPtr, std::shared_ptr<const std::vector<int>>>> needed;
  std::map<Key, std::pair<CircuitPtr, std::shared_ptr<const Macro>>> macros;
  double leak = 0.0;
};

Cache& cache() {
  static Cache c;
  return c;
}

Key key_of(const Circuit* c, const SimOptions& o) {
  return {c, o.macro_open_limit, o.macro_min_gates};
}

bool is_macro(const Circuit& c, const SimOptions& o) {
  return static_cast<int>(c.open_qubits().size()) <= o.macro_open_limit &&
         c.flat_size() >= o.macro_min_gates;
}

std::shared_ptr<const std::vector<int>> needed_of(const CircuitPtr& c, const SimOptions& o) {
  auto& cc = cache();
  const Key key = key_of(c.get(), o);
  {
    std::lock_guard<std::mutex> lock(cc.mu);
    auto it = cc.needed.find(key);
    if (it != cc.needed.end()) return it->second.second;
  }
  std::vector<char> mark(c->num_qubits(), 0);
  for (int q : c->open_qubits()) mark[q] = 1;
  for (const auto& op : c->ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      if (g->q0 >= 0) mark[g->q0] = 1;
      if (g->q1 >= 0) mark[g->q1] = 1;
    } else {
      const auto& call = std::get<Call>(op);
      if (is_macro(*call.sub, o)) {
        for (int q : call.sub->open_qubits()) mark[call.wires[q]] = 1;
      } else {
        for (int q : *needed_of(call.sub, o)) mark[call.wires[q]] = 1;
      }
    }
  }
  auto out = std::make_shared<std::vector<int>>();
  for (int q = 0; q < c->num_qubits(); ++q)
    if (mark[q]) out->push_back(q);
  std::lock_guard<std::mutex> lock(cc.mu);
  cc.needed.emplace(key, std::make_pair(c, out));
  return out;
}

std::shared_ptr<const Macro> macro_of(const CircuitPtr& c, const SimOptions& o);

void prepare(const CircuitPtr& c, const SimOptions& o, std::vector<const Circuit*>& seen) {
  if (std::find(seen.begin(), seen.end(), c.get()) != seen.end()) return;
  seen.push_back(c.get());
  for (const auto& op : c->ops()) {
    if (const auto* call = std::get_if<Call>(&op)) {
      if (is_macro(*call->sub, o))
        macro_of(call->sub, o);
      else
        prepare(call->sub, o, seen);
    }
  }
}

std::shared_ptr<const Macro> lookup_macro(const Circuit* c, const SimOptions& o) {
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  auto it = cc.macros.find(key_of(c, o));
  return it == cc.macros.end() ? nullptr : it->second.second;
}

void apply_macro(const Macro& m, const std::vector<int>& pos, cplx* psi, int num_bits,
                 bool parallel) {
  const int k = m.k;
  const Index dim_k = Index{1} << k;
  Index mask = 0;
  std::vector<Index> off(dim_k, 0);
  for (int i = 0; i < k; ++i) mask |= Index{1} << pos[i];
  for (Index j = 0; j < dim_k; ++j)
    for (int i = 0; i < k; ++i)
      if (j >> (k - 1 - i) & 1) off[j] |= Index{1} << pos[i];
  const Index full = (num_bits == 64) ? ~Index{0} : ((Index{1} << num_bits) - 1);
  const Index comp = full & ~mask;
  const std::int64_t outer = std::int64_t{1} << (num_bits - k);
  const std::int64_t chunk = std::min<std::int64_t>(outer, 64);
  const std::int64_t nchunks = outer / chunk;

  auto run_chunk = [&](std::int64_t c, std::vector<cplx>& in, std::vector<cplx>& out) {
    Index base = kernels::deposit(static_cast<Index>(c * chunk), comp);
    for (std::int64_t r = 0; r < chunk; ++r) {
      bool any = false;
      for (Index j = 0; j < dim_k; ++j) {
        in[j] = psi[base + off[j]];
        any = any || in[j] != cplx(0.0);
      }
      if (any) {
        std::fill(out.begin(), out.end(), cplx(0.0));
        for (Index j = 0; j < dim_k; ++j) {
          if (in[j] == cplx(0.0)) continue;
          for (std::uint32_t e = m.col_ptr[j]; e < m.col_ptr[j + 1]; ++e)
            out[m.rows[e]] += m.vals[e] * in[j];
        }
        for (Index j = 0; j < dim_k; ++j) psi[base + off[j]] = out[j];
      }
      base = ((base | mask) + 1) & comp;
    }
  };

  if (parallel && num_bits >= kParallelBits) {
#pragma omp parallel
    {
      std::vector<cplx> in(dim_k), out(dim_k);
#pragma omp for schedule(static)
      for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(c, in, out);
    }
  } else {
    std::vector<cplx> in(dim_k), out(dim_k);
    for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(c, in, out);
  }
}

void exec(const Circuit& c, const std::vector<int>& pos, cplx* psi, int num_bits,
          const SimOptions& o) {
  const bool par = o.parallel && num_bits >= kParallelBits;
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      if (g->kind == GateKind::gphase) {
        const cplx f = std::polar(1.0, g->p[0]);
        par ? kernels::scale_omp(psi, num_bits, f) : kernels::scale_serial(psi, num_bits, f);
      } else if (g->kind == GateKind::cx) {
        par ? kernels::apply_cx_omp(psi, num_bits, pos[g->q0], pos[g->q1])
            : kernels::apply_cx_serial(psi, num_bits, pos[g->q0], pos[g->q1]);
      } else {
        const Mat2 m = gate_matrix(*g);
        par ? kernels::apply_1q_omp(psi, num_bits, pos[g->q0], m)
            : kernels::apply_1q_serial(psi, num_bits, pos[g->q0], m);
      }
      continue;
    }
    const auto& call = std::get<Call>(op);
    const Circuit& sub = *call.sub;
    std::vector<int> sub_pos(sub.num_qubits());
    for (int q = 0; q < sub.num_qubits(); ++q) sub_pos[q] = pos[call.wires[q]];
    if (is_macro(sub, o)) {
      auto m = lookup_macro(&sub, o);
      if (!m) m = macro_of(call.sub, o);
      std::vector<int> open_pos;
      open_pos.reserve(sub.open_qubits().size());
      for (int q : sub.open_qubits()) open_pos.push_back(sub_pos[q]);
      apply_macro(*m, open_pos, psi, num_bits, o.parallel);
    } else {
      exec(sub, sub_pos, psi, num_bits, o);
    }
  }
}

struct SparseOverflow {};

void sparse_1q(SparseState& s, Index bit, const Mat2& m) {
  SparseState out;
  out.reserve(2 * s.size());
  auto put = [&](Index i, cplx a) {
    if (std::abs(a) > kStateDropTol) out[i] = a;
  };
  for (const auto& [idx, a] : s) {
    const Index partner = idx ^ bit;
    auto it = s.find(partner);
    if (it != s.end() && (idx & bit)) continue;
    const cplx other = it == s.end() ? cplx(0.0) : it->second;
    const cplx a0 = (idx & bit) ? other : a;
    const cplx a1 = (idx & bit) ? a : other;
    const Index base = idx & ~bit;
    put(base, m[0] * a0 + m[1] * a1);
    put(base | bit, m[2] * a0 + m[3] * a1);
  }
  s.swap(out);
}

void sparse_macro(SparseState& s, const Macro& m, const std::vector<int>& pos) {
  const int k = m.k;
  Index mask = 0;
  for (int i = 0; i < k; ++i) mask |= Index{1} << pos[i];
  auto spread = [&](std::uint32_t j) {
    Index x = 0;
    for (int i = 0; i < k; ++i)
      if (j >> (k - 1 - i) & 1) x |= Index{1} << pos[i];
    return x;
  };
  SparseState out;
  out.reserve(s.size());
  for (const auto& [idx, a] : s) {
    std::uint32_t j = 0;
    for (int i = 0; i < k; ++i)
      if (idx >> pos[i] & 1) j |= 1u << (k - 1 - i);
    const Index base = idx & ~mask;
    for (std::uint32_t e = m.col_ptr[j]; e < m.col_ptr[j + 1]; ++e) out[base | spread(m.rows[e])] += m.vals[e] * a;
  }
  for (auto it = out.begin(); it != out.end();)
    it = std::abs(it->second) > kStateDropTol ? std::next(it) : out.erase(it);
  s.swap(out);
}

void exec_sparse(const Circuit& c, const std::vector<int>& pos, SparseState& s, const SimOptions& o,
                 std::size_t limit) {
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      if (g->kind == GateKind::gphase) {
        const cplx f = std::polar(1.0, g->p[0]);
        for (auto& [idx, a] : s) a *= f;
      } else if (g->kind == GateKind::cx) {
        const Index cb = Index{1} << pos[g->q0], tb = Index{1} << pos[g->q1];
        SparseState out;
        out.reserve(s.size());
        for (const auto& [idx, a] : s) out.emplace((idx & cb) ? idx ^ tb : idx, a);
        s.swap(out);
      } else {
        sparse_1q(s, Index{1} << pos[g->q0], gate_matrix(*g));
      }
    } else {
      const auto& call = std::get<Call>(op);
      const Circuit& sub = *call.sub;
      std::vector<int> sub_pos(sub.num_qubits());
      for (int q = 0; q < sub.num_qubits(); ++q) sub_pos[q] = pos[call.wires[q]];
      if (is_macro(sub, o)) {
        auto m = lookup_macro(&sub, o);
        if (!m) m = macro_of(call.sub, o);
        std::vector<int> open_pos;
        for (int q : sub.open_qubits()) open_pos.push_back(sub_pos[q]);
        sparse_macro(s, *m, open_pos);
      } else {
        exec_sparse(sub, sub_pos, s, o, limit);
      }
    }
    if (s.size() > limit) throw SparseOverflow{};
  }
}

// Runs one basis column, sparse while the support stays small.
void run_column(const CircuitPtr& c, const std::vector<int>& pos, Index input, int nb,
                const SimOptions& o, bool& try_sparse, StateVector& psi) {
  std::fill(psi.begin(), psi.end(), cplx(0.0));
  if (try_sparse) {
    SparseState s{{input, cplx(1.0)}};
    try {
      exec_sparse(*c, pos, s, o, psi.size() / 8);
      for (const auto& [idx, a] : s) psi[idx] = a;
      return;
    } catch (const SparseOverflow&) {
      try_sparse = false;
    }
  }
  psi[input] = 1.0;
  exec(*c, pos, psi.data(), nb, o);
}

std::shared_ptr<const Macro> macro_of(const CircuitPtr& c, const SimOptions& o) {
  if (auto hit = lookup_macro(c.get(), o)) return hit;
  std::vector<const Circuit*> seen;
  prepare(c, o, seen);

  Simulator sim(c, o);
  const int nb = sim.num_bits();
  const auto& open = c->open_qubits();
  const int k = static_cast<int>(open.size());
  std::vector<int> open_pos(k);
  for (int i = 0; i < k; ++i) open_pos[i] = sim.position(open[i]);
  Index strict_mask = 0;
  for (int q : sim.tracked_qubits())
    if (c->role(q) == QubitRole::strict_pure) strict_mask |= Index{1} << sim.position(q);

  std::vector<int> all_pos(c->num_qubits());
  for (int q = 0; q < c->num_qubits(); ++q) all_pos[q] = sim.position(q);
  SimOptions serial = o;
  serial.parallel = false;

  const std::int64_t cols = std::int64_t{1} << k;
  std::vector<std::vector<std::pair<std::uint32_t, cplx>>> col_data(cols);
  double leak = 0.0;
  auto column = [&](std::int64_t j, StateVector& psi, bool& try_sparse) {
    Index idx = 0;
    for (int i = 0; i < k; ++i)
      if (j >> (k - 1 - i) & 1) idx |= Index{1} << open_pos[i];
    run_column(c, all_pos, idx, nb, serial, try_sparse, psi);
    double local = 0.0;
    auto& out = col_data[j];
    for (Index x = 0; x < psi.size(); ++x) {
      const double a = std::abs(psi[x]);
      if (a <= kDropTol) continue;
      if (x & strict_mask) {
        local = std::max(local, a);
        continue;
      }
      std::uint32_t row = 0;
      for (int i = 0; i < k; ++i)
        if (x >> open_pos[i] & 1) row |= 1u << (k - 1 - i);
      out.emplace_back(row, psi[x]);
    }
    return local;
  };

  if (o.parallel && cols > 1) {
#pragma omp parallel reduction(max : leak)
    {
      StateVector psi(Index{1} << nb);
      bool try_sparse = true;
#pragma omp for schedule(dynamic)
      for (std::int64_t j = 0; j < cols; ++j) leak = std::max(leak, column(j, psi, try_sparse));
    }
  } else {
    StateVector psi(Index{1} << nb);
    bool try_sparse = true;
    for (std::int64_t j = 0; j < cols; ++j) leak = std::max(leak, column(j, psi, try_sparse));
  }
  if (leak > kLeakTol)
    throw AncillaLeak("pure ancilla of '" + c->name() + "' left |0> with amplitude " +
                      std::to_string(leak));

  auto m = std::make_shared<Macro>();
  m->k = k;
  m->col_ptr.push_back(0);
  for (auto& col : col_data) {
    for (auto& [r, v] : col) {
      m->rows.push_back(r);
      m->vals.push_back(v);
    }
    m->col_ptr.push_back(static_cast<std::uint32_t>(m->rows.size()));
  }
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  cc.leak = std::max(cc.leak, leak);
  auto [it, inserted] = cc.macros.emplace(key_of(c.get(), o), std::make_pair(c, m));
  return it->second.second;
}

}  // namespace

SimOptions default_sim_options() {
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  return cc.defaults;
}

void set_default_sim_options(const SimOptions& o) {
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  cc.defaults = o;
}

void clear_sim_cache() {
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  cc.needed.clear();
  cc.macros.clear();
}

double macro_leak_max() {
  auto& cc = cache();
  std::lock_guard<std::mutex> lock(cc.mu);
  return cc.leak;
}

StateVector apply_circuit(const Circuit& c, StateVector psi, bool parallel) {
  const int n = c.num_qubits();
  if (psi.size() != (Index{1} << n))
    throw DimensionMismatch("state of size " + std::to_string(psi.size()) + " for " +
                            std::to_string(n) + " qubits");
  std::vector<int> pos(n);
  for (int q = 0; q < n; ++q) pos[q] = n - 1 - q;
  kernels::apply_gates(psi.data(), n, flatten(c), pos, parallel);
  return psi;
}

DenseMatrix circuit_unitary(const Circuit& c) {
  const int n = c.num_qubits();
  const Index dim = Index{1} << n;
  const auto gates = flatten(c);
  std::vector<int> pos(n);
  for (int q = 0; q < n; ++q) pos[q] = n - 1 - q;
  DenseMatrix u(dim, dim);
  StateVector psi(dim);
  for (Index j = 0; j < dim; ++j) {
    std::fill(psi.begin(), psi.end(), cplx(0.0));
    psi[j] = 1.0;
    kernels::apply_gates(psi.data(), n, gates, pos, false);
    for (Index i = 0; i < dim; ++i) u(i, j) = psi[i];
  }
  return u;
}

Simulator::Simulator(CircuitPtr c, SimOptions opt) : circuit_(std::move(c)), opt_(opt) {
  tracked_ = *needed_of(circuit_, opt_);
  pos_.assign(circuit_->num_qubits(), -1);
  const int nb = static_cast<int>(tracked_.size());
  for (int r = 0; r < nb; ++r) pos_[tracked_[r]] = nb - 1 - r;
}

std::uint64_t Simulator::basis_index(const std::vector<int>& ones) const {
  Index idx = 0;
  for (int q : ones) {
    if (pos_[q] < 0) throw ConstructionError("qubit " + std::to_string(q) + " is not tracked");
    idx |= Index{1} << pos_[q];
  }
  return idx;
}

void Simulator::run(StateVector& psi) const {
  if (psi.size() != (Index{1} << num_bits()))
    throw DimensionMismatch("state size does not match tracked qubits of " + circuit_->name());
  std::vector<const Circuit*> seen;
  prepare(circuit_, opt_, seen);
  exec(*circuit_, pos_, psi.data(), num_bits(), opt_);
}

bool Simulator::run_sparse(SparseState& s, std::size_t limit) const {
  std::vector<const Circuit*> seen;
  prepare(circuit_, opt_, seen);
  try {
    exec_sparse(*circuit_, pos_, s, opt_, limit);
  } catch (const SparseOverflow&) {
    return false;
  }
  return true;
}

namespace {

struct Masks {
  Index strict = 0, cond = 0, flag = 0;
};

Masks role_masks(const Simulator& sim, const std::vector<int>& data) {
  Masks m;
  const Circuit& c = sim.circuit();
  for (int q : sim.tracked_qubits()) {
    const Index bit = Index{1} << sim.position(q);
    switch (c.role(q)) {
      case QubitRole::strict_pure:
        m.strict |= bit;
        break;
      case QubitRole::cond_pure:
        m.cond |= bit;
        break;
      case QubitRole::flag:
        m.flag |= bit;
        break;
      case QubitRole::data:
        if (std::find(data.begin(), data.end(), q) == data.end()) m.flag |= bit;
        break;
    }
  }
  return m;
}

void measure_leaks(const StateVector& psi, const Masks& m, double& strict, double& cond) {
  for (Index x = 0; x < psi.size(); ++x) {
    const double a = std::abs(psi[x]);
    if (a <= kDropTol) continue;
    if (x & m.strict)
      strict = std::max(strict, a);
    else if (!(x & m.flag) && (x & m.cond))
      cond = std::max(cond, a);
  }
}

}  // namespace

BlockResult extract_block(const CircuitPtr& c, const BlockEncodingDescriptor& d, SimOptions opt) {
  Simulator sim(c, opt);
  const auto data = c->qubits(d.data_register);
  const int n = static_cast<int>(data.size());
  const Masks masks = role_masks(sim, data);
  std::vector<Index> data_idx(Index{1} << n, 0);
  for (Index j = 0; j < data_idx.size(); ++j)
    for (int t = 0; t < n; ++t)
      if (j >> (n - 1 - t) & 1) data_idx[j] |= Index{1} << sim.position(data[t]);

  BlockResult res;
  res.block = DenseMatrix::Zero(data_idx.size(), data_idx.size());
  std::vector<const Circuit*> seen;
  prepare(c, opt, seen);

  const std::int64_t cols = static_cast<std::int64_t>(data_idx.size());
  double strict = 0.0, cond = 0.0;
  std::vector<int> all_pos(c->num_qubits());
  for (int q = 0; q < c->num_qubits(); ++q) all_pos[q] = sim.position(q);
  auto column = [&](std::int64_t j, StateVector& psi, SimOptions inner, double& s, double& cl,
                    bool& try_sparse) {
    run_column(c, all_pos, data_idx[j], sim.num_bits(), inner, try_sparse, psi);
    for (Index i = 0; i < data_idx.size(); ++i) res.block(i, j) = psi[data_idx[i]];
    measure_leaks(psi, masks, s, cl);
  };
  const Index dim = Index{1} << sim.num_bits();
  if (opt.parallel && cols > 1 && sim.num_bits() < kParallelBits + 4) {
    SimOptions inner = opt;
    inner.parallel = false;
#pragma omp parallel reduction(max : strict, cond)
    {
      StateVector psi(dim);
      bool try_sparse = true;
#pragma omp for schedule(dynamic)
      for (std::int64_t j = 0; j < cols; ++j) column(j, psi, inner, strict, cond, try_sparse);
    }
  } else {
    StateVector psi(dim);
    bool try_sparse = true;
    for (std::int64_t j = 0; j < cols; ++j) column(j, psi, opt, strict, cond, try_sparse);
  }
  res.strict_leak = std::max(strict, macro_leak_max());
  res.conditional_leak = cond;
  if (res.strict_leak > kLeakTol || res.conditional_leak > kLeakTol)
    throw AncillaLeak("pure ancilla of '" + c->name() + "' left |0>: strict " +
                      std::to_string(res.strict_leak) + ", conditional " +
                      std::to_string(res.conditional_leak));
  return res;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}

BlockCheck assert_block_equals(const CircuitPtr& c, const BlockEncodingDescriptor& d,
                               const DenseMatrix& target, double tol, SimOptions opt) {
  auto res = extract_block(c, d, opt);
  if (res.block.rows() != target.rows() || res.block.cols() != target.cols())
    throw DimensionMismatch("target does not match the block of " + c->name());
  BlockCheck out;
  const DenseMatrix diff = target - d.scale * res.block;
  out.spectral = spectral_norm(diff);
  out.max_entry = diff.cwiseAbs().maxCoeff();
  out.strict_leak = res.strict_leak;
  out.conditional_leak = res.conditional_leak;
  out.pass = out.spectral <= tol;
  out.block = std::move(res.block);
  return out;
}

PurityReport check_purity(const CircuitPtr& c, std::int64_t max_inputs, SimOptions opt) {
  Simulator sim(c, opt);
  const auto& open = c->open_qubits();
  std::vector<int> data;
  for (int q : open)
    if (c->role(q) == QubitRole::data) data.push_back(q);
  const Masks masks = role_masks(sim, data);
  const StateVector::size_type dim = Index{1} << sim.num_bits();
  PurityReport rep;
  StateVector psi(dim);
  std::vector<int> all_pos(c->num_qubits());
  for (int q = 0; q < c->num_qubits(); ++q) all_pos[q] = sim.position(q);
  bool try_sparse = true;
  std::vector<const Circuit*> seen;
  prepare(c, opt, seen);

  auto sweep = [&](const std::vector<int>& qubits, bool strict_only) {
    const int k = static_cast<int>(qubits.size());
    const double total = std::ldexp(1.0, k);
    const bool exhaustive = total <= static_cast<double>(max_inputs);
    const std::int64_t count = exhaustive ? static_cast<std::int64_t>(total) : max_inputs;
    for (std::int64_t t = 0; t < count; ++t) {
      const Index j = exhaustive ? static_cast<Index>(t)
                                 : static_cast<Index>(std::floor(t * (total / count)));
      Index idx = 0;
      for (int i = 0; i < k; ++i)
        if (j >> (k - 1 - i) & 1) idx |= Index{1} << sim.position(qubits[i]);
      run_column(c, all_pos, idx, sim.num_bits(), opt, try_sparse, psi);
      double s = 0.0, cl = 0.0;
      measure_leaks(psi, masks, s, cl);
      rep.strict_leak = std::max(rep.strict_leak, s);
      if (!strict_only) rep.conditional_leak = std::max(rep.conditional_leak, cl);
      ++rep.inputs;
    }
    return exhaustive;
  };
  rep.exhaustive = sweep(open, true);
  rep.exhaustive = sweep(data, false) && rep.exhaustive;
  rep.strict_leak = std::max(rep.strict_leak, macro_leak_max());
  return rep;
}

}  // namespace hamforge
