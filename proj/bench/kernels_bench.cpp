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

// Serial against OpenMP state-vector kernels, and a full-circuit run.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hamforge/assembly.hpp"
#include "hamforge/kernels.hpp"
#include "hamforge/simulator.hpp"
#include "hamforge/spec.hpp"

using namespace hamforge;

namespace {

std::vector<cplx> random_state(int bits) {
  std::vector<cplx> psi(std::size_t{1} << bits);
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = cplx(std::sin(0.37 * i), std::cos(0.11 * i));
  return psi;
}

const Mat2 kH = {cplx(M_SQRT1_2), cplx(M_SQRT1_2), cplx(M_SQRT1_2), cplx(-M_SQRT1_2)};

template <void (*Kernel)(cplx*, int, int, const Mat2&)>
void BM_OneQubit(benchmark::State& st) {
  const int bits = static_cast<int>(st.range(0));
  auto psi = random_state(bits);
  int pos = 0;
  for (auto _ : st) {
    Kernel(psi.data(), bits, pos, kH);
    pos = (pos + 1) % bits;
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

template <void (*Kernel)(cplx*, int, int, int)>
void BM_Cx(benchmark::State& st) {
  const int bits = static_cast<int>(st.range(0));
  auto psi = random_state(bits);
  for (auto _ : st) {
    Kernel(psi.data(), bits, bits - 1, 0);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

void BM_BlockExtraction(benchmark::State& st) {
  const auto spec = parse_spec(R"({"grid":{"n":3,"a":-1,"b":1},"terms":[{"alpha":[1,0],"poly":[0,0.5],"m":1}]})");
  const auto he = build_U_H(spec);
  SimOptions opt = default_sim_options();
  opt.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(extract_block(he.enc.circuit, he.enc.desc, opt));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_OneQubit, kernels::apply_1q_serial)->DenseRange(16, 22, 3);
BENCHMARK_TEMPLATE(BM_OneQubit, kernels::apply_1q_omp)->DenseRange(16, 22, 3);
BENCHMARK_TEMPLATE(BM_Cx, kernels::apply_cx_serial)->DenseRange(16, 22, 3);
BENCHMARK_TEMPLATE(BM_Cx, kernels::apply_cx_omp)->DenseRange(16, 22, 3);
BENCHMARK(BM_BlockExtraction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
