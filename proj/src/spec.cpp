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

#include "hamforge/spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hamforge/errors.hpp"
#include "hamforge/reference.hpp"
#include "json.hpp"

namespace hamforge {

using json = nlohmann::json;

namespace {

constexpr int kCheckPoints = 10000;
constexpr double kMarginTol = 1e-12;
// Multi-mode specs are checked for Hermiticity densely at load time.
constexpr int kMaxDenseQubits = 11;

Polynomial make_polynomial(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw DomainError("polynomial is identically zero");
  return Polynomial{std::move(coeffs)};
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError("missing \"" + std::string(key) + "\" in " + where);
  return j.at(key);
}

int read_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + " must be an integer");
  return j.get<int>();
}

double read_double(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + " must be a number");
  return j.get<double>();
}

std::complex<double> read_alpha(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(where + " must be [re, im]");
  const std::complex<double> a(read_double(j[0], where), read_double(j[1], where));
  if (a == 0.0) throw DomainError(where + " must be nonzero");
  return a;
}

Polynomial read_poly(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + " must be a non-empty array");
  std::vector<double> c;
  for (const auto& v : j) c.push_back(read_double(v, where));
  auto p = make_polynomial(std::move(c));
  validate_polynomial(p);
  return p;
}

int read_m(const json& j, const std::string& where) {
  const int m = read_int(j, where);
  if (m < 1) throw DomainError(where + " must be at least 1");
  return m;
}

GridSpec read_grid(const json& j, const std::string& where) {
  GridSpec g;
  g.n = read_int(require(j, "n", where), where + ".n");
  g.a = read_double(require(j, "a", where), where + ".a");
  g.b = read_double(require(j, "b", where), where + ".b");
  if (g.n < 2) throw DomainError(where + ".n must be at least 2");
  if (!(g.a >= -1.0 && g.b <= 1.0 && g.a < g.b))
    throw DomainError(where + " needs -1 <= a < b <= 1");
  return g;
}

int ceil_log2(std::size_t v) {
  int g = 0;
  while ((std::size_t{1} << g) < v) ++g;
  return g;
}

json poly_json(const Polynomial& p) { return json(p.coeffs); }

}  // namespace

double Polynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

PolynomialCheck check_polynomial(const Polynomial& p) {
  PolynomialCheck r;
  if (p.coeffs.empty() || p.coeffs.back() == 0.0) {
    r.violation = "leading coefficient is zero";
    return r;
  }
  for (int k = 0; k <= p.degree(); ++k) {
    if (k % 2 != p.degree() % 2 && p.coeffs[k] != 0.0) {
      r.violation = "coefficient of y^" + std::to_string(k) + " breaks parity";
      return r;
    }
  }
  double worst = -1.0;
  for (int i = 0; i < kCheckPoints; ++i) {
    const double y = -1.0 + 2.0 * i / (kCheckPoints - 1);
    const double v = std::abs(p(y));
    if (v > worst) {
      worst = v;
      r.worst_point = y;
    }
  }
  r.margin = 1.0 - worst;
  if (r.margin < kMarginTol) {
    std::ostringstream os;
    os << "|P| reaches " << worst << " at y = " << r.worst_point;
    r.violation = os.str();
    return r;
  }
  r.ok = true;
  return r;
}

void validate_polynomial(const Polynomial& p) {
  const auto r = check_polynomial(p);
  if (r.ok) return;
  if (r.violation.find("parity") != std::string::npos) throw ParityViolation(r.violation);
  if (r.violation.find("|P|") != std::string::npos) throw BoundViolation(r.violation);
  throw DomainError(r.violation);
}

double GridSpec::delta_x() const {
  return (b - a) / static_cast<double>((std::int64_t{1} << n) - 1);
}

int HamiltonianSpec::data_qubits() const {
  int total = 0;
  for (int y = 0; y < num_dims(); ++y) total += dim(y).n;
  return total;
}

HamiltonianSpec parse_spec(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("document must be an object");
  const bool has_terms = j.contains("terms"), has_multi = j.contains("multi_terms");
  if (has_terms == has_multi) throw SchemaError("exactly one of \"terms\" and \"multi_terms\" is required");

  HamiltonianSpec spec;
  if (j.contains("grid")) spec.grid = read_grid(j["grid"], "grid");
  if (has_terms) {
    if (!j.contains("grid")) throw SchemaError("missing \"grid\"");
    const auto& terms = j["terms"];
    if (!terms.is_array() || terms.empty()) throw SchemaError("\"terms\" must be a non-empty array");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string where = "terms[" + std::to_string(k) + "]";
      Term t;
      t.alpha = read_alpha(require(terms[k], "alpha", where), where + ".alpha");
      t.poly = read_poly(require(terms[k], "poly", where), where + ".poly");
      t.m = read_m(require(terms[k], "m", where), where + ".m");
      spec.terms.push_back(std::move(t));
    }
    spec.original_terms = static_cast<int>(spec.terms.size());
    spec.gamma = ceil_log2(spec.terms.size());
    while (spec.terms.size() < (std::size_t{1} << spec.gamma))
      spec.terms.push_back(Term{0.0, Polynomial{{0.0}}, 1, true});
    return spec;
  }

  if (j.contains("dims")) {
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.empty()) throw SchemaError("\"dims\" must be a non-empty array");
    for (std::size_t y = 0; y < dims.size(); ++y)
      spec.dims.push_back(read_grid(dims[y], "dims[" + std::to_string(y) + "]"));
  } else if (j.contains("grid")) {
    spec.dims.push_back(spec.grid);
  } else {
    throw SchemaError("multi-mode spec needs \"dims\" or \"grid\"");
  }
  if (!j.contains("grid")) spec.grid = spec.dims.front();
  const auto& terms = j["multi_terms"];
  if (!terms.is_array() || terms.empty())
    throw SchemaError("\"multi_terms\" must be a non-empty array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "multi_terms[" + std::to_string(k) + "]";
    MultiTerm t;
    t.alpha = read_alpha(require(terms[k], "alpha", where), where + ".alpha");
    const auto& factors = require(terms[k], "factors", where);
    if (!factors.is_array() || factors.size() != spec.dims.size())
      throw SchemaError(where + ".factors must have one entry per dimension");
    for (std::size_t y = 0; y < factors.size(); ++y) {
      const std::string fw = where + ".factors[" + std::to_string(y) + "]";
      Factor f;
      f.ordering = read_int(require(factors[y], "L", fw), fw + ".L");
      if (f.ordering != 0 && f.ordering != 1) throw SchemaError(fw + ".L must be 0 or 1");
      f.poly = read_poly(require(factors[y], "poly", fw), fw + ".poly");
      f.m = read_m(require(factors[y], "m", fw), fw + ".m");
      t.factors.push_back(std::move(f));
    }
    spec.multi_terms.push_back(std::move(t));
  }
  spec.original_terms = static_cast<int>(spec.multi_terms.size());
  spec.gamma = ceil_log2(spec.multi_terms.size());
  while (spec.multi_terms.size() < (std::size_t{1} << spec.gamma)) {
    MultiTerm pad{0.0, {}, true};
    for (std::size_t y = 0; y < spec.dims.size(); ++y) pad.factors.push_back(Factor{0, Polynomial{{0.0}}, 1});
    spec.multi_terms.push_back(std::move(pad));
  }
  if (spec.data_qubits() > kMaxDenseQubits)
    throw TractabilityError("multi-mode Hermiticity check needs at most " +
                            std::to_string(kMaxDenseQubits) + " data qubits");
  build_hamiltonian_dense(spec);
  return spec;
}

HamiltonianSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string spec_to_json(const HamiltonianSpec& spec) {
  json j;
  auto grid = [](const GridSpec& g) { return json{{"n", g.n}, {"a", g.a}, {"b", g.b}}; };
  j["grid"] = grid(spec.grid);
  if (!spec.multi()) {
    j["terms"] = json::array();
    for (const auto& t : spec.terms) {
      if (t.synthetic) continue;
      j["terms"].push_back({{"alpha", {t.alpha.real(), t.alpha.imag()}}, {"poly", poly_json(t.poly)}, {"m", t.m}});
    }
  } else {
    j["dims"] = json::array();
    for (const auto& g : spec.dims) j["dims"].push_back(grid(g));
    j["multi_terms"] = json::array();
    for (const auto& t : spec.multi_terms) {
      if (t.synthetic) continue;
      json fs = json::array();
      for (const auto& f : t.factors) fs.push_back({{"L", f.ordering}, {"poly", poly_json(f.poly)}, {"m", f.m}});
      j["multi_terms"].push_back({{"alpha", {t.alpha.real(), t.alpha.imag()}}, {"factors", fs}});
    }
  }
  return j.dump();
}

std::vector<MultiTerm> general_terms(const HamiltonianSpec& spec) {
  if (spec.multi()) return spec.multi_terms;
  std::vector<MultiTerm> out;
  for (const auto& t : spec.terms)
    out.push_back(MultiTerm{t.alpha, {Factor{0, t.poly, t.m}}, t.synthetic});
  for (const auto& t : spec.terms)
    out.push_back(MultiTerm{std::conj(t.alpha), {Factor{1, t.poly, t.m}}, t.synthetic});
  return out;
}

int selector_qubits(const HamiltonianSpec& spec) { return spec.multi() ? spec.gamma : spec.gamma + 1; }

}  // namespace hamforge
