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

#include "hamforge/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "hamforge/errors.hpp"

namespace hamforge {

namespace {

constexpr double kZero = 1e-14;

}  // namespace

int SparsityPattern::num_qubits() const {
  int total = 0;
  for (int w : widths) total += w;
  return total;
}

int index_bits(int bands) {
  int l = 0;
  while ((1 << l) < bands) ++l;
  return l;
}

SparsityPattern make_pattern(int n, const std::vector<std::int64_t>& offsets) {
  SparsityPattern p;
  p.widths = {n};
  std::set<std::int64_t> sorted;
  for (auto o : offsets) sorted.insert(((o % (std::int64_t{1} << n)) + (std::int64_t{1} << n)) %
                                       (std::int64_t{1} << n));
  for (auto o : sorted) p.offsets.push_back({o});
  p.l = index_bits(p.bands());
  return p;
}

SparsityPattern sparsity_of(const DenseMatrix& m, const std::vector<int>& widths) {
  int total = 0;
  for (int w : widths) total += w;
  if (m.rows() != (Eigen::Index{1} << total) || m.cols() != m.rows())
    throw DimensionMismatch("matrix does not match the dimension widths");
  const int d = static_cast<int>(widths.size());
  auto split = [&](Eigen::Index i) {
    std::vector<std::int64_t> parts(d);
    for (int y = d - 1; y >= 0; --y) {
      parts[y] = i & ((Eigen::Index{1} << widths[y]) - 1);
      i >>= widths[y];
    }
    return parts;
  };
  std::set<std::vector<std::int64_t>> found;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto ri = split(i);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) <= kZero) continue;
      const auto cj = split(j);
      std::vector<std::int64_t> off(d);
      for (int y = 0; y < d; ++y) {
        const std::int64_t dim = std::int64_t{1} << widths[y];
        off[y] = ((cj[y] - ri[y]) % dim + dim) % dim;
      }
      found.insert(off);
    }
  }
  SparsityPattern p;
  p.widths = widths;
  p.offsets.assign(found.begin(), found.end());
  p.l = index_bits(p.bands());
  return p;
}

std::vector<double> grid_points(const GridSpec& g) {
  const std::size_t dim = std::size_t{1} << g.n;
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = g.a + static_cast<double>(i) * g.delta_x();
  return x;
}

DenseMatrix build_x_matrix(const GridSpec& g) {
  const auto x = grid_points(g);
  DenseMatrix m = DenseMatrix::Zero(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m(i, i) = x[i];
  return m;
}

double x_norm(const GridSpec& g) {
  double s = 0.0;
  for (double v : grid_points(g)) s += v * v;
  return std::sqrt(s);
}

DenseMatrix build_p_matrix(const GridSpec& g) {
  const Eigen::Index dim = Eigen::Index{1} << g.n;
  const cplx f(0.0, -1.0 / (2.0 * g.delta_x()));
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, (i + 1) % dim) += f;
    m(i, (i + dim - 1) % dim) -= f;
  }
  return m;
}

BandedPower matrix_power_banded(const DenseMatrix& p, int m) {
  if (m < 1) throw DomainError("momentum power must be at least 1");
  BandedPower out;
  out.matrix = p;
  for (int k = 1; k < m; ++k) out.matrix = out.matrix * p;
  int n = 0;
  while ((Eigen::Index{1} << n) < p.rows()) ++n;
  out.pattern = sparsity_of(out.matrix, {n});
  for (int s = 0; s < out.pattern.bands(); ++s)
    out.band_values.push_back(out.matrix(0, out.pattern.offset(s)));
  return out;
}

DenseMatrix poly_of_diagonal(const Polynomial& p, const GridSpec& g) {
  const auto x = grid_points(g);
  DenseMatrix m = DenseMatrix::Zero(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m(i, i) = p(x[i]);
  return m;
}

DenseMatrix factor_matrix(const GridSpec& g, const Factor& f) {
  const DenseMatrix pm = matrix_power_banded(build_p_matrix(g), f.m).matrix;
  const DenseMatrix poly = poly_of_diagonal(f.poly, g);
  return f.ordering == 0 ? DenseMatrix(poly * pm) : DenseMatrix(pm * poly);
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseMatrix build_hamiltonian_dense(const HamiltonianSpec& spec) {
  const Eigen::Index dim = Eigen::Index{1} << spec.data_qubits();
  DenseMatrix h = DenseMatrix::Zero(dim, dim);
  for (const auto& t : general_terms(spec)) {
    if (t.synthetic) continue;
    DenseMatrix prod = DenseMatrix::Identity(1, 1);
    for (int y = 0; y < spec.num_dims(); ++y) prod = kron(prod, factor_matrix(spec.dim(y), t.factors[y]));
    h += t.alpha * prod;
  }
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw HermiticityError("assembled Hamiltonian is not Hermitian (deviation " +
                           std::to_string(asym) + ")");
  return h;
}

int binary_norm(std::uint64_t i) { return __builtin_popcountll(i); }

WalshCoefficients walsh_coefficients(const std::vector<double>& diag_values,
                                     const std::vector<cplx>& poly_weights) {
  const std::size_t dim = diag_values.size();
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw DimensionMismatch("diagonal length must be a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  std::vector<cplx> f(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    cplx acc = 0.0, pw = 1.0;
    for (const auto& w : poly_weights) {
      acc += w * pw;
      pw *= diag_values[k];
    }
    f[k] = acc;
  }
  double norm = 0.0;
  for (const auto& v : f) norm += std::norm(v);
  norm = std::sqrt(norm);
  if (norm == 0.0) throw DegenerateState("polynomial vanishes on the grid");

  // In-place fast Walsh-Hadamard transform.
  std::vector<cplx> beta = f;
  for (std::size_t h = 1; h < dim; h <<= 1)
    for (std::size_t i = 0; i < dim; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx x = beta[j], y = beta[j + h];
        beta[j] = x + y;
        beta[j + h] = x - y;
      }
  const double scale = 1.0 / (std::sqrt(static_cast<double>(dim)) * norm);
  for (auto& v : beta) v *= scale;

  WalshCoefficients out;
  out.norm = norm;
  out.beta = std::move(beta);
  for (int q = static_cast<int>(poly_weights.size()) - 1; q >= 0; --q)
    if (poly_weights[q] != cplx(0.0)) {
      out.support_bound = std::min(q, n);
      break;
    }
  return out;
}

std::vector<cplx> inverse_walsh(const WalshCoefficients& w) {
  std::vector<cplx> f = w.beta;
  const std::size_t dim = f.size();
  for (std::size_t h = 1; h < dim; h <<= 1)
    for (std::size_t i = 0; i < dim; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx x = f[j], y = f[j + h];
        f[j] = x + y;
        f[j + h] = x - y;
      }
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (auto& v : f) v *= scale;
  return f;
}

std::string matrix_to_csv(const DenseMatrix& m, double threshold) {
  std::string out;
  char buf[128];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) <= threshold) continue;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(i),
                    static_cast<long long>(j), m(i, j).real(), m(i, j).imag());
      out += buf;
    }
  return out;
}

}  // namespace hamforge
