// Copyright 2026 The qnetcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "qnc/network.hpp"
#include "qnc/protocol.hpp"
#include "qnc/state_vector.hpp"

namespace {

qnc::Instance fixture(const char* name) {
  return qnc::load_instance(std::filesystem::path(QNC_INSTANCE_DIR) / name);
}

void BM_Fourier(benchmark::State& state) {
  const auto ring = qnc::Ring::parse("Z(" + std::to_string(state.range(0)) + ")");
  auto s = qnc::uniform_state(ring, 1, 3);
  for (auto _ : state) {
    s.apply_fourier(qnc::reg(1));
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.amplitudes().size()));
}
BENCHMARK(BM_Fourier)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ButterflyRun(benchmark::State& state) {
  const auto inst = fixture(state.range(0) ? "butterfly_gf4.json" : "butterfly.json");
  const auto input = qnc::uniform_state(inst.scheme.ring_ptr(), 1, 2);
  qnc::ProtocolOptions opts;
  opts.skip_classical_check = true;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto src = qnc::OutcomeSource::seeded(seed++);
    auto run = qnc::run_protocol(inst, input, src, opts);
    benchmark::DoNotOptimize(run.probability);
  }
}
BENCHMARK(BM_ButterflyRun)->Arg(0)->Arg(1);

void BM_EnumerateButterfly(benchmark::State& state) {
  const auto inst = fixture("butterfly.json");
  const auto input = qnc::uniform_state(inst.scheme.ring_ptr(), 1, 2);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto s = qnc::enumerate_branches(inst, input, {}, qnc::kDefaultBranchCap, threads);
    benchmark::DoNotOptimize(s.min_fidelity);
  }
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_EnumerateButterfly)->Arg(1)->Arg(2)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_VerifySolution(benchmark::State& state) {
  const auto inst = fixture("butterfly_z2xz4.json");
  for (auto _ : state) benchmark::DoNotOptimize(qnc::verify_solution(inst).valid);
}
BENCHMARK(BM_VerifySolution);

}  // namespace

BENCHMARK_MAIN();
