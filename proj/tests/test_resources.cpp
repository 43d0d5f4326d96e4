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

#include "hamforge/errors.hpp"
#include "hamforge/primitives.hpp"
#include "hamforge/reference.hpp"
#include "hamforge/resources.hpp"

using namespace hamforge;

TEST_CASE("bound catalog values") {
  BoundInputs in;
  in.n = 3;
  in.l = 2;
  CHECK(evaluate_bound("banded_sparse_access", in).one_qubit == 240);
  in.l = 1;
  const auto mo = evaluate_bound("momentum_oracle", in);
  CHECK(mo.one_qubit == 2);
  CHECK(mo.cnot == 2);
  CHECK(mo.ancillas == 0);
  in.q = 1;
  CHECK(evaluate_bound("coordinate_polynomial_oracle", in).one_qubit == 17436);
  in.n = 5;
  CHECK(evaluate_bound("adder", in).cnot == 26 * 5 - 37);
  CHECK_THROWS_AS(evaluate_bound("teleporter", in), UnknownFormula);
  CHECK(bound_policy("multicontrol") == BoundPolicy::strict);
  CHECK(bound_policy("U_H") == BoundPolicy::advisory);
}

TEST_CASE("bounds are nonnegative and monotone in n") {
  for (const auto& name : bound_catalog()) {
    BoundValue prev{-1e300, -1e300, -1e300};
    for (int n = 3; n <= 10; ++n) {
      BoundInputs in;
      in.n = n;
      in.l = 1;
      in.q = 1;
      in.m = n;
      in.gamma = 1;
      in.omega = 5;
      in.a = n + 5;
      in.lmax_pow = 2;
      const auto v = evaluate_bound(name, in);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(v.one_qubit >= 0);
      CHECK(v.cnot >= 0);
      CHECK(v.ancillas >= 0);
      CHECK(v.one_qubit >= prev.one_qubit);
      CHECK(v.cnot >= prev.cnot);
      CHECK(v.ancillas >= prev.ancillas);
      prev = v;
    }
  }
}

TEST_CASE("strict bounds hold for multicontrol ladders and momentum oracles") {
  for (int m = 1; m <= 6; ++m) {
    BoundInputs in;
    in.m = m;
    for (int bits = 0; bits < (1 << m); ++bits) {
      std::vector<bool> pattern(m);
      for (int i = 0; i < m; ++i) pattern[i] = (bits >> i) & 1;
      const auto e = check_bounds(*build_multicontrol_x(pattern), "multicontrol", in);
      CAPTURE(m);
      CAPTURE(bits);
      CHECK(e.within);
      if (m >= 3) CHECK(e.actual.cnot == 6 * (2 * m - 3));
    }
  }
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m <= 3; ++m) {
      const auto bp = matrix_power_banded(build_p_matrix(GridSpec{n, -1.0, 1.0}), m);
      BoundInputs in;
      in.l = bp.pattern.l;
      const auto e = check_bounds(*build_momentum_oracle(in.l, bp.band_values, m, false).circuit,
                                  "momentum_oracle", in);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(e.within);
    }
}

TEST_CASE("audit of a Hamiltonian encoding") {
  const auto spec = parse_spec(R"({"grid":{"n":3,"a":-1,"b":1},"terms":[
    {"alpha":[0.6,0.2],"poly":[0,0.5],"m":1},{"alpha":[-0.3,0],"poly":[0.4,0,0.3],"m":2}]})");
  const auto he = build_U_H(spec);
  const auto rep = audit_hamiltonian(spec, he);
  CHECK_FALSE(rep.failed());
  bool saw_uh = false, saw_mo = false;
  for (const auto& e : rep.entries) {
    CAPTURE(e.name);
    CAPTURE(e.instance);
    if (e.policy == BoundPolicy::strict) CHECK(e.within);
    saw_uh = saw_uh || e.name == "U_H";
    saw_mo = saw_mo || e.name == "momentum_oracle";
  }
  CHECK(saw_uh);
  CHECK(saw_mo);
  CHECK(rep.to_json().find("\"margin\"") != std::string::npos);
}
