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

#include "hamforge/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"

namespace hamforge {

namespace {

struct PowerParts {
  BandedPower power;
  MomentumOracle oracle;
  CircuitPtr access;
};

std::string grid_key(const GridSpec& g) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d:%.17g:%.17g", g.n, g.a, g.b);
  return buf;
}

const PowerParts& power_parts(const GridSpec& g, int m) {
  static std::map<std::string, PowerParts> cache;
  const std::string key = grid_key(g) + "^" + std::to_string(m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PowerParts parts;
  parts.power = matrix_power_banded(build_p_matrix(g), m);
  if (parts.power.pattern.l == 0) throw ConstructionError("momentum power has a single band");
  parts.oracle = build_momentum_oracle(parts.power.pattern.l, parts.power.band_values, m, false);
  parts.access = build_banded_sparse_access(parts.power.pattern);
  return cache.emplace(key, std::move(parts)).first->second;
}

const PolynomialOracle& poly_oracle(const GridSpec& g, const Polynomial& p) {
  static std::map<std::string, PolynomialOracle> cache;
  std::string key = grid_key(g);
  for (double c : p.coeffs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, ",%.17g", c);
    key += buf;
  }
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, build_coordinate_polynomial_oracle(g, p)).first->second;
}

std::vector<int> span(int start, int width) {
  std::vector<int> v(width);
  for (int i = 0; i < width; ++i) v[i] = start + i;
  return v;
}

std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<int> dim_offsets(const HamiltonianSpec& spec) {
  std::vector<int> off{0};
  for (int y = 0; y < spec.num_dims(); ++y) off.push_back(off.back() + spec.dim(y).n);
  return off;
}

int max_dim_width(const HamiltonianSpec& spec) {
  int w = 0;
  for (int y = 0; y < spec.num_dims(); ++y) w = std::max(w, spec.dim(y).n);
  return w;
}

std::vector<bool> bits_of(std::uint64_t v, int width) {
  std::vector<bool> out(width);
  for (int i = 0; i < width; ++i) out[i] = (v >> (width - 1 - i)) & 1;
  return out;
}

// Qubit layout shared by the term auxiliaries and the selector sum.
struct Layout {
  std::vector<int> mf, pw, pl;
  std::vector<int> row, a, col;
  int c = -1;
};

Layout declare_layout(CircuitBuilder& b, const HamiltonianSpec& spec) {
  Layout L;
  const int d = spec.num_dims();
  const int total = spec.data_qubits();
  for (int y = 0; y < d; ++y) L.mf.push_back(b.add_register("mf" + std::to_string(y), 1, RegKind::flag));
  for (int y = 0; y < d; ++y) L.pw.push_back(b.add_register("pw" + std::to_string(y), 1, RegKind::flag));
  for (int y = 0; y < d; ++y) L.pl.push_back(b.add_register("pl" + std::to_string(y), 1, RegKind::flag));
  L.row = span(b.add_register("row", total, RegKind::data), total);
  const int amax = max_dim_width(spec);
  L.a = span(b.add_register("a", amax, RegKind::pure, false), amax);
  L.c = b.add_register("c", 1, RegKind::pure, false);
  L.col = span(b.add_register("col", total, RegKind::data), total);
  return L;
}

std::vector<int> layout_wires(const Layout& L) {
  std::vector<int> w = join(join(L.mf, L.pw), L.pl);
  w = join(join(w, L.row), L.a);
  w.push_back(L.c);
  return join(w, L.col);
}

}  // namespace

CircuitPtr build_state_prep(const std::vector<cplx>& amps) {
  const std::size_t size = amps.size();
  int g = 0;
  while ((std::size_t{1} << g) < size) ++g;
  if ((std::size_t{1} << g) != size || g == 0) throw ConstructionError("amplitude count must be 2^g, g >= 1");
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (!(norm2 > 1e-24)) throw DegenerateState("all amplitudes vanish");
  const double inv = 1.0 / std::sqrt(norm2);

  CircuitBuilder b("state_prep");
  const int q = b.add_register("q", g, RegKind::data);
  std::vector<double> w2(size);
  for (std::size_t x = 0; x < size; ++x) w2[x] = std::norm(amps[x]) * inv * inv;
  for (int k = 0; k < g; ++k) {
    const std::size_t prefixes = std::size_t{1} << k;
    const std::size_t block = size >> k;
    std::vector<double> angles(prefixes);
    for (std::size_t p = 0; p < prefixes; ++p) {
      double left = 0.0, right = 0.0;
      for (std::size_t x = 0; x < block / 2; ++x) left += w2[p * block + x];
      for (std::size_t x = block / 2; x < block; ++x) right += w2[p * block + x];
      angles[p] = 2 * std::atan2(std::sqrt(right), std::sqrt(left));
    }
    emit_multiplexed_ry(b, span(q, k), q + k, angles);
  }

  std::vector<double> omega(size);
  for (std::size_t x = 0; x < size; ++x) omega[x] = std::abs(amps[x]) > 0 ? std::arg(amps[x]) : 0.0;
  for (int k = g - 1; k >= 0; --k) {
    const std::size_t prefixes = std::size_t{1} << k;
    std::vector<double> angles(prefixes), mean(prefixes);
    bool trivial = true;
    for (std::size_t p = 0; p < prefixes; ++p) {
      angles[p] = omega[2 * p + 1] - omega[2 * p];
      mean[p] = 0.5 * (omega[2 * p] + omega[2 * p + 1]);
      trivial = trivial && std::abs(angles[p]) < 1e-15;
    }
    if (!trivial) emit_multiplexed_rz(b, span(q, k), q + k, angles);
    omega = std::move(mean);
  }
  if (std::abs(omega[0]) > 1e-15) b.gphase(omega[0]);
  return b.build();
}

NormalizationLedger build_ledger(const HamiltonianSpec& spec) {
  NormalizationLedger led;
  const int d = spec.num_dims();
  std::vector<int> max_m(d, 0);
  for (const auto& t : general_terms(spec)) {
    TermLedger tl;
    tl.alpha = t.alpha;
    tl.weight = 1.0;
    for (int y = 0; y < d; ++y) {
      const Factor& f = t.factors[y];
      FactorLedger fl;
      if (!t.synthetic) {
        const auto& pp = power_parts(spec.dim(y), f.m);
        const auto& po = poly_oracle(spec.dim(y), f.poly);
        fl.l = pp.power.pattern.l;
        fl.n_p = pp.oracle.norm;
        fl.c_x = po.c_x;
        fl.c_p = po.c_p;
        tl.weight *= fl.c_p * std::sqrt(std::ldexp(fl.n_p, fl.l));
        max_m[y] = std::max(max_m[y], f.m);
      }
      tl.factors.push_back(fl);
    }
    if (t.synthetic) tl.weight = 0.0;
    led.n_h += std::abs(t.alpha) * tl.weight;
    led.terms.push_back(tl);
  }
  if (!(led.n_h > 0)) throw DegenerateSpec("every coefficient is zero");
  const auto terms = general_terms(spec);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto& tl = led.terms[k];
    if (tl.weight == 0.0 || terms[k].alpha == cplx(0.0)) continue;
    int msum = 0;
    for (const auto& f : terms[k].factors) msum += f.m;
    const cplx ipow = std::array<cplx, 4>{1.0, cplx(0, 1), -1.0, cplx(0, -1)}[msum % 4];
    tl.amplitude = std::sqrt(ipow * terms[k].alpha * tl.weight / led.n_h);
  }

  std::vector<int> widths;
  for (int y = 0; y < d; ++y) widths.push_back(spec.dim(y).n);
  led.h_pattern = sparsity_of(build_hamiltonian_dense(spec), widths);
  if (led.h_pattern.bands() == 0) throw DegenerateSpec("the Hamiltonian is zero on this grid");
  std::int64_t bound = 1;
  for (int y = 0; y < d; ++y) bound *= 2 * max_m[y] + 1;
  if (led.h_pattern.bands() > bound)
    throw SparsityOverflow("Hamiltonian has " + std::to_string(led.h_pattern.bands()) +
                           " bands, more than the momentum powers allow");
  led.scale = std::sqrt(std::ldexp(1.0, led.h_pattern.l)) * led.n_h;
  return led;
}

TermAux build_term_aux(const HamiltonianSpec& spec, const MultiTerm& term) {
  if (term.synthetic) throw ConstructionError("padding terms have no auxiliary");
  const int d = spec.num_dims();
  if (static_cast<int>(term.factors.size()) != d) throw WidthMismatch("factor count differs from dimensions");
  const auto off = dim_offsets(spec);
  CircuitBuilder b("term_aux");
  const Layout L = declare_layout(b, spec);
  TermAux out;
  out.ledger.alpha = term.alpha;
  out.ledger.weight = 1.0;
  for (int y = 0; y < d; ++y) {
    const Factor& f = term.factors[y];
    const GridSpec& g = spec.dim(y);
    const int n = g.n;
    const auto& pp = power_parts(g, f.m);
    const auto& po = poly_oracle(g, f.poly);
    const int l = pp.power.pattern.l;
    const std::vector<int> row(L.row.begin() + off[y], L.row.begin() + off[y + 1]);
    const std::vector<int> col(L.col.begin() + off[y], L.col.begin() + off[y + 1]);
    const std::vector<int> sparse(row.end() - l, row.end());
    const std::vector<int> a(L.a.begin(), L.a.begin() + n);
    auto poly_on = [&](const std::vector<int>& reg) {
      b.call(po.enc.circuit, join(join({L.pw[y], L.pl[y]}, a), join({L.c}, reg)));
    };
    if (f.ordering == 1) poly_on(col);
    for (int q : sparse) b.h(q);
    b.call(pp.oracle.circuit, join({L.mf[y]}, sparse));
    b.call(pp.access, join(row, col));
    if (f.ordering == 0) poly_on(row);
    FactorLedger fl{l, pp.oracle.norm, po.c_x, po.c_p};
    out.ledger.weight *= fl.c_p * std::sqrt(std::ldexp(fl.n_p, fl.l));
    out.ledger.factors.push_back(fl);
  }
  out.circuit = b.build();
  return out;
}

CircuitPtr build_A_H(const HamiltonianSpec& spec, const NormalizationLedger& ledger) {
  const auto terms = general_terms(spec);
  const int g = selector_qubits(spec);
  if (terms.size() != (std::size_t{1} << g) || ledger.terms.size() != terms.size())
    throw WidthMismatch("term count disagrees with the selector width");
  std::vector<cplx> amps(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) amps[k] = ledger.terms[k].amplitude;
  const CircuitPtr prep = build_state_prep(amps);

  CircuitBuilder b("A_H");
  const std::vector<int> sel = span(b.add_register("sel", g, RegKind::flag), g);
  const Layout L = declare_layout(b, spec);
  const std::vector<int> body = layout_wires(L);
  b.call(prep, sel);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (amps[k] == cplx(0.0)) continue;
    const auto aux = build_term_aux(spec, terms[k]);
    b.call(build_multicontrol(bits_of(k, g), aux.circuit), join(sel, body));
  }
  b.call(transpose_of(prep), sel);
  return b.build();
}

HamiltonianEncoding build_U_H(const HamiltonianSpec& spec) {
  HamiltonianEncoding out;
  out.ledger = build_ledger(spec);
  const auto& led = out.ledger;
  const int total = spec.data_qubits();
  const int l = led.h_pattern.l;
  const int d = spec.num_dims();
  const int g = selector_qubits(spec);
  const CircuitPtr a_h = build_A_H(spec, led);

  CircuitBuilder b("U_H");
  const std::vector<int> sel = span(b.add_register("sel", g, RegKind::flag), g);
  std::vector<int> flags;
  for (const char* p : {"mf", "pw", "pl"})
    for (int y = 0; y < d; ++y) flags.push_back(b.add_register(p + std::to_string(y), 1, RegKind::flag));
  std::vector<int> row;
  if (total > l) row = span(b.add_register("row_hi", total - l, RegKind::pure, false), total - l);
  if (l > 0) row = join(row, span(b.add_register("row_lo", l, RegKind::flag), l));
  const int amax = max_dim_width(spec);
  const std::vector<int> a = span(b.add_register("a", amax, RegKind::pure, false), amax);
  const int c = b.add_register("c", 1, RegKind::pure, false);
  const std::vector<int> data = span(b.add_register("data", total, RegKind::data), total);

  b.call(a_h, join(join(join(sel, flags), join(row, a)), join({c}, data)));
  b.call(inverse_of(build_banded_sparse_access(led.h_pattern)), join(data, row));
  for (int i = total - l; i < total; ++i) b.h(data[i]);
  for (int i = 0; i < total; ++i) {
    b.cx(row[i], data[i]);
    b.cx(data[i], row[i]);
  }

  out.enc.circuit = b.build();
  auto& desc = out.enc.desc;
  desc.scale = led.scale;
  desc.flag_qubits = g + 3 * d + l;
  desc.data_register = "data";
  desc.flag_registers = {"sel"};
  for (const char* p : {"mf", "pw", "pl"})
    for (int y = 0; y < d; ++y) desc.flag_registers.push_back(p + std::to_string(y));
  if (l > 0) desc.flag_registers.push_back("row_lo");
  if (total > l) desc.pure_ancilla_registers.push_back("row_hi");
  desc.pure_ancilla_registers.push_back("a");
  desc.pure_ancilla_registers.push_back("c");
  if (out.enc.circuit->has_register("anc")) desc.pure_ancilla_registers.push_back("anc");
  validate_descriptor(*out.enc.circuit, desc);
  return out;
}

DenseMatrix transfer_block(const CircuitPtr& c, const std::string& in, const std::string& out) {
  const Simulator sim(c);
  const auto in_q = c->qubits(in);
  const auto out_q = c->qubits(out);
  const int w_in = static_cast<int>(in_q.size());
  const int w_out = static_cast<int>(out_q.size());
  auto index = [&](const std::vector<int>& qs, std::uint64_t v, std::vector<int>& ones) {
    const int w = static_cast<int>(qs.size());
    for (int k = 0; k < w; ++k)
      if (v >> (w - 1 - k) & 1) ones.push_back(qs[k]);
  };
  DenseMatrix m = DenseMatrix::Zero(std::int64_t{1} << w_out, std::int64_t{1} << w_in);
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << w_in); ++j) {
    std::vector<int> ones;
    index(in_q, j, ones);
    SparseState s{{sim.basis_index(ones), cplx(1.0)}};
    sim.run_sparse(s);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << w_out); ++i) {
      std::vector<int> o;
      if (in != out) index(in_q, j, o);
      index(out_q, i, o);
      auto it = s.find(sim.basis_index(o));
      if (it != s.end()) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = it->second;
    }
  }
  return m;
}

}  // namespace hamforge
