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

#include "hamforge/resources.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/qsvt.hpp"
#include "hamforge/reference.hpp"

namespace hamforge {

namespace {

using Formula = std::function<BoundValue(const BoundInputs&)>;

struct CatalogEntry {
  BoundPolicy policy;
  Formula f;
};

double p2(double e) { return std::ldexp(1.0, static_cast<int>(e)); }

const std::map<std::string, CatalogEntry>& catalog() {
  static const std::map<std::string, CatalogEntry> c = {
      {"multicontrol",
       {BoundPolicy::strict,
        [](const BoundInputs& in) {
          const double m = in.m;
          if (in.m == 1) return BoundValue{1.0, 1.0, 0.0};
          return BoundValue{16 * m - 16, 12 * m - 12, std::max(0.0, m - 2)};
        }}},
      {"adder",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n;
          return BoundValue{32 * n - 48, 26 * n - 37, n - 1};
        }}},
      {"banded_sparse_access",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, L = p2(in.l);
          return BoundValue{(L + 1) * (32 * n - 48), 25 * L * n - 36 * L + 32 * n - 48, n - 1};
        }}},
      // Index map plus adder, summed per component.
      {"banded_sparse_access_summands",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, L = p2(in.l);
          return BoundValue{L * (32 * n - 48) + 32 * n - 48, L * (25 * n - 36) + 26 * n - 37, n - 1};
        }}},
      {"coordinate_superposition",
       {BoundPolicy::strict,
        [](const BoundInputs& in) {
          const Counts c = binary_norm_bound(in.n, in.q);
          return BoundValue{static_cast<double>(c.one_qubit), static_cast<double>(c.cnot),
                            static_cast<double>(c.pure_ancillas)};
        }}},
      {"amplitude_oracle_x",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n;
          return BoundValue{2304 * n * n - 1064 * n - 109, 1864 * n * n - 860 * n - 92, 2 * n - 1};
        }}},
      {"diag_amplitude",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double h = in.n;
          return BoundValue{528 * h - 463, 428 * h - 378, 2 * h - 1};
        }}},
      {"coordinate_polynomial_oracle",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, q = in.q;
          return BoundValue{2304 * q * n * n - 1064 * q * n - 108 * q, 1864 * q * n * n - 860 * q * n - 92 * q,
                            2 * n - 1};
        }}},
      {"momentum_oracle",
       {BoundPolicy::strict,
        [](const BoundInputs& in) {
          const double L = p2(in.l);
          return BoundValue{L, L, 0.0};
        }}},
      {"one_term_aux",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, q = in.q, L = p2(in.l);
          return BoundValue{2304 * q * n * n - 1064 * q * n + 32 * L * n + 32 * n - 108 * q - 48 * L + L - 48,
                            1864 * q * n * n - 860 * q * n + 25 * L * n + 32 * n - 92 * q - 17 * L - 48,
                            2 * n - 1};
        }}},
      {"A_H",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, q = in.q, g = in.gamma, Lm = in.lmax_pow;
          return BoundValue{
              p2(g + 2) * (9760 * n * n * q + 33 * 4 * Lm * n + 160 * n + 8 * g - 4504 * n * q - 476 * q -
                           115 * Lm - 239),
              p2(g + 1) *
                  (15792 * n * n * q + 107 * 2 * Lm + 256 * n + 12 * g - 7288 * n * q - 768 * q - 49 * 2 * Lm - 382),
              2 * n + g - 1};
        }}},
      // The constant is -383 here against -382 in the A_H formula; both as published.
      {"U_H",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, q = in.q, g = in.gamma, Lm = in.lmax_pow, l = in.l, L = p2(in.l);
          return BoundValue{
              p2(g + 2) * (9760 * n * n * q + 33 * 4 * Lm * n + 160 * n + 8 * g - 4504 * n * q - 476 * q -
                           115 * Lm - 239) +
                  32 * L * n - 3 * 16 * L + 32 * n + l - 48,
              p2(g + 1) * (15792 * n * n * q + 107 * 2 * Lm + 256 * n + 12 * g - 7288 * n * q - 768 * q -
                           49 * 2 * Lm - 383) +
                  25 * L * n - 36 * L + 32 * n - 48,
              3 * n + g - l - 1};
        }}},
      // Gates outside the encoding calls in the simulation circuit.
      {"qsvt_overhead",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double a = in.a, W = in.omega;
          return BoundValue{W * (16 * a + 50) + 4, W * (12 * a + 38), 0.0};
        }}},
      {"evolution",
       {BoundPolicy::advisory,
        [](const BoundInputs& in) {
          const double n = in.n, q = in.q, g = in.gamma, l = in.l, W = in.omega;
          const double one =
              305 * p2(7 + g) * n * n * q * W + 33 * p2(4 + l + g) * n * W + 5 * p2(7 + g) * n * W +
              p2(5 + l) * n * W + 32 * n * W + 17 * l * W + 66 * W + p2(5 + g) * g * W + 35 * p2(7 + l + g) * n +
              21 * p2(8 + g) * n + 33 * p2(3 + l) * n + 320 * n + 323 * p2(10 + g) * n * n * q + 2 * l -
              563 * p2(5 + g) * n * q * W - 119 * p2(4 + g) * q * W - 115 * p2(2 + l + g) * W -
              239 * p2(2 + g) * W - 3 * p2(4 + l) * W - 2385 * p2(6 + g) * n * q - 503 * p2(5 + g) * q -
              507 * p2(3 + l + g) - 1005 * p2(3 + g) - 3 * p2(5 + l) - 476;
          const double cx =
              987 * p2(5 + g) * n * n * q * W + 107 * p2(2 + l + g) * n * W + p2(9 + g) * n * W +
              25 * p2(l) * n * W + 32 * n * W + 12 * l * W + 38 * W + 3 * p2(3 + g) * g * W +
              453 * p2(3 + l + g) * n + 17 * p2(8 + g) * n + 107 * p2(1 + l) * n + 256 * n +
              4181 * p2(6 + g) * n * n * q + 2 * l - 911 * p2(4 + g) * n * q * W - 3 * p2(9 + g) * q * W -
              49 * p2(3 + l + g) * W - 383 * p2(1 + g) * W - 3859 * p2(5 + g) * n * q - 407 * p2(5 + g) * q -
              409 * p2(3 + l + g) - 1627 * p2(2 + g) - 3 * p2(5 + l) - 384;
          return BoundValue{one, cx, 3 * n + g - l - 1};
        }}},
  };
  return c;
}

double margin(double bound, double actual) {
  if (bound == 0.0) return actual == 0.0 ? 0.0 : -1.0;
  return (bound - actual) / std::abs(bound);
}

nlohmann::json entry_json(const ResourceEntry& e) {
  nlohmann::json j;
  j["name"] = e.name;
  if (!e.instance.empty()) j["instance"] = e.instance;
  j["policy"] = e.policy == BoundPolicy::strict ? "strict" : "advisory";
  j["actual"] = {{"one_qubit", e.actual.one_qubit}, {"cnot", e.actual.cnot}, {"ancillas", e.actual.pure_ancillas}};
  j["bound"] = {{"one_qubit", e.bound.one_qubit}, {"cnot", e.bound.cnot}, {"ancillas", e.bound.ancillas}};
  j["margin"] = {{"one_qubit", e.margin_one_qubit}, {"cnot", e.margin_cnot}, {"ancillas", e.margin_ancillas}};
  j["within"] = e.within;
  return j;
}

// Sub-circuits of c by name, first occurrence, depth first.
void collect(const CircuitPtr& c, std::set<const Circuit*>& seen, std::vector<CircuitPtr>& out) {
  if (!seen.insert(c.get()).second) return;
  out.push_back(c);
  for (const auto& op : c->ops())
    if (const auto* call = std::get_if<Call>(&op)) collect(call->sub, seen, out);
}

}  // namespace

const std::vector<std::string>& bound_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : catalog()) v.push_back(k);
    return v;
  }();
  return names;
}

BoundValue evaluate_bound(const std::string& name, const BoundInputs& in) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw UnknownFormula("no bound named '" + name + "'");
  return it->second.f(in);
}

BoundPolicy bound_policy(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw UnknownFormula("no bound named '" + name + "'");
  return it->second.policy;
}

ResourceEntry check_bounds(const Circuit& c, const std::string& name, const BoundInputs& in,
                           const std::string& instance) {
  ResourceEntry e;
  e.name = name;
  e.instance = instance;
  e.inputs = in;
  e.actual = c.counts();
  e.bound = evaluate_bound(name, in);
  e.policy = bound_policy(name);
  e.margin_one_qubit = margin(e.bound.one_qubit, static_cast<double>(e.actual.one_qubit));
  e.margin_cnot = margin(e.bound.cnot, static_cast<double>(e.actual.cnot));
  e.margin_ancillas = margin(e.bound.ancillas, e.actual.pure_ancillas);
  e.within = e.actual.one_qubit <= e.bound.one_qubit && e.actual.cnot <= e.bound.cnot &&
             e.actual.pure_ancillas <= e.bound.ancillas;
  return e;
}

bool ResourceReport::failed() const {
  for (const auto& e : entries)
    if (e.policy == BoundPolicy::strict && !e.within) return true;
  return false;
}

std::string ResourceReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : entries) j.push_back(entry_json(e));
  return j.dump(2);
}

ResourceReport audit_hamiltonian(const HamiltonianSpec& spec, const HamiltonianEncoding& he) {
  ResourceReport rep;
  auto add = [&](const Circuit& c, const std::string& name, const BoundInputs& in, const std::string& inst) {
    rep.entries.push_back(check_bounds(c, name, in, inst));
  };

  std::set<std::string> grids;
  for (int y = 0; y < spec.num_dims(); ++y) {
    const GridSpec& g = spec.dim(y);
    const std::string tag = "n=" + std::to_string(g.n);
    if (!grids.insert(tag).second) continue;
    BoundInputs in;
    in.n = g.n;
    in.q = 1;
    std::set<const Circuit*> seen;
    std::vector<CircuitPtr> subs;
    collect(build_x_state_prep(g, false), seen, subs);
    for (const auto& s : subs)
      if (s->name() == "binary_norm_prep") add(*s, "coordinate_superposition", in, tag);
    add(*build_x_amplitude_oracle(g).enc.circuit, "amplitude_oracle_x", in, tag);
    add(*build_modular_adder(g.n), "adder", in, tag);
  }

  const auto terms = general_terms(spec);
  std::set<std::string> done;
  int qmax = 0;
  double lmax_pow = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].synthetic) continue;
    for (int y = 0; y < spec.num_dims(); ++y) {
      const GridSpec& g = spec.dim(y);
      const Factor& f = terms[k].factors[y];
      const auto bp = matrix_power_banded(build_p_matrix(g), f.m);
      BoundInputs in;
      in.n = g.n;
      in.l = bp.pattern.l;
      in.m = f.m;
      in.q = f.poly.degree();
      qmax = std::max(qmax, in.q);
      lmax_pow = std::max(lmax_pow, p2(in.l));
      const std::string mtag = "n=" + std::to_string(g.n) + ",m=" + std::to_string(f.m);
      if (done.insert("p" + mtag).second) {
        add(*build_momentum_oracle(in.l, bp.band_values, f.m, false).circuit, "momentum_oracle", in, mtag);
        const auto access = build_banded_sparse_access(bp.pattern);
        add(*access, "banded_sparse_access", in, mtag);
        add(*access, "banded_sparse_access_summands", in, mtag);
      }
      std::string ptag = "n=" + std::to_string(g.n) + ",P=";
      for (double c : f.poly.coeffs) ptag += std::to_string(c) + ";";
      if (in.q >= 1 && done.insert(ptag).second)
        add(*build_coordinate_polynomial_oracle(g, f.poly).enc.circuit, "coordinate_polynomial_oracle", in, ptag);
    }
    if (!spec.multi()) {
      const Factor& f = terms[k].factors[0];
      const auto aux = build_term_aux(spec, terms[k]);
      BoundInputs in;
      in.n = spec.grid.n;
      in.q = f.poly.degree();
      in.l = aux.ledger.factors[0].l;
      add(*aux.circuit, "one_term_aux", in, "term " + std::to_string(k));
    }
  }

  std::set<const Circuit*> seen;
  std::vector<CircuitPtr> subs;
  collect(he.enc.circuit, seen, subs);
  for (const auto& s : subs) {
    if (s->name().rfind("mcx", 0) != 0) continue;
    BoundInputs in;
    in.m = s->reg("ctrl").width;
    add(*s, "multicontrol", in, s->name());
  }

  if (!spec.multi()) {
    BoundInputs in;
    in.n = spec.grid.n;
    in.q = qmax;
    in.gamma = spec.gamma;
    in.l = he.ledger.h_pattern.l;
    in.lmax_pow = lmax_pow;
    for (const auto& s : subs)
      if (s->name() == "A_H") add(*s, "A_H", in, "");
    add(*he.enc.circuit, "U_H", in, "");
  }
  return rep;
}

}  // namespace hamforge
