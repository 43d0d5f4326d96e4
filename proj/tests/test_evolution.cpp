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
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hamforge/errors.hpp"
#include "hamforge/evolution.hpp"
#include "hamforge/simulator.hpp"

using namespace hamforge;

namespace {

DenseMatrix exp_i(const DenseMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const Eigen::VectorXcd ph = (cplx(0, t) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

bool inequality_holds(double at, int g, double eps) {
  return 1.07 / std::sqrt(g) * std::pow(at * std::numbers::e / (2.0 * g), g) <= eps;
}

const char* kTiny = R"({"grid":{"n":2,"a":-1,"b":1},"terms":[{"alpha":[0.5,0.1],"poly":[0,0.5],"m":1}]})";

}  // namespace

TEST_CASE("truncation degree scan") {
  CHECK(truncation_degree(1.0, 1e-3).g == 5);
  CHECK_FALSE(inequality_holds(1.0, 4, 1e-3));
  CHECK(inequality_holds(1.0, 5, 1e-3));
  const int g = truncation_degree(2.0, 1e-6).g;
  CHECK(inequality_holds(2.0, g, 1e-6));
  CHECK_FALSE(inequality_holds(2.0, g - 1, 1e-6));
  int prev = 1000;
  for (double eps : {1e-9, 1e-6, 1e-3, 1e-1}) {
    const int gi = truncation_degree(1.5, eps).g;
    CHECK(gi <= prev);
    prev = gi;
  }
  CHECK_THROWS_AS(truncation_degree(0.0, 1e-3), DomainError);
}

TEST_CASE("Bessel series") {
  CHECK(std::abs(bessel_j(0, 1.0) - 0.7651976865579666) < 1e-15);
  CHECK(std::abs(bessel_j(1, 1.0) - 0.44005058574493355) < 1e-15);
  CHECK(std::abs(bessel_j(5, 3.0) - 0.043028434877047584) < 1e-15);
}

TEST_CASE("Jacobi-Anger truncations") {
  for (double at : {0.5, 1.0, 2.0, 4.0})
    for (double eps : {1e-2, 1e-3, 1e-6}) {
      const auto tr = truncation_degree(at, eps);
      const auto ja = jacobi_anger_polys(at, tr.g);
      CHECK(ja.even.parity() == Parity::even);
      CHECK(ja.odd.parity() == Parity::odd);
      for (std::size_t i = 1; i < ja.even.coeffs.size(); i += 2) CHECK(ja.even.coeffs[i] == 0.0);
      for (std::size_t i = 0; i < ja.odd.coeffs.size(); i += 2) CHECK(ja.odd.coeffs[i] == 0.0);
      CHECK(check_polynomial(ja.even).margin >= 1e-8 * 0.99);
      double worst = 0.0;
      for (int k = 0; k <= 4000; ++k) {
        const double y = -1.0 + k / 2000.0;
        worst = std::max(worst, std::abs(cplx(ja.even(y), ja.odd(y)) - std::polar(1.0, at * y)));
      }
      CHECK(worst <= eps);
    }
  const auto small = jacobi_anger_polys(1e-4, 1);
  CHECK(small.even.degree() == 0);
  CHECK(std::abs(small.odd.coeffs[1] - 1e-4) < 1e-10);
}

TEST_CASE("evolution block-encoding against the matrix exponential") {
  const auto spec = parse_spec(kTiny);
  const DenseMatrix h = build_hamiltonian_dense(spec);
  const double alpha = build_U_H(spec).enc.desc.scale;
  for (double at : {0.5, 1.0}) {
    const double t = at / alpha;
    const auto ev = build_evolution_be(spec, t, 1e-3);
    CHECK(ev.enc.desc.flag_qubits == ev.ham.enc.desc.flag_qubits + 2);
    CHECK(ev.queries == ev.polys.even.degree() + ev.polys.odd.degree());
    const auto res = extract_block(ev.enc.circuit, ev.enc.desc);
    const DenseMatrix two_b = 2.0 * res.block;
    CHECK(spectral_norm(two_b - exp_i(h, t)) <= 1e-3);
    CHECK(spectral_norm(two_b.adjoint() * two_b - DenseMatrix::Identity(h.rows(), h.cols())) <= 3e-3);
  }
  const auto zero = build_evolution_be(spec, 0.0, 1e-3);
  const auto res = extract_block(zero.enc.circuit, zero.enc.desc);
  CHECK((res.block - 0.5 * DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(build_evolution_be(spec, 5.0 / alpha, 1e-3), TractabilityError);
}
