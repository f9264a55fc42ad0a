// Copyright 2026 The telexp Authors
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

// Compares the OpenMP kernels against their serial references, and times the
// sampled protocol.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "telexp/expansion.hpp"
#include "telexp/kernels.hpp"
#include "telexp/protocol.hpp"

namespace {

using telexp::kernels::Amplitude;

std::vector<Amplitude> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Amplitude> v(n);
    for (auto& x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

using ApplyFn = void (*)(std::span<const Amplitude>, std::span<Amplitude>, int, std::span<const int>,
                         std::span<const Amplitude>);

template <ApplyFn F>
void BM_Apply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const auto in = random_vector(std::size_t{1} << n, 1);
    const auto m = random_vector(std::size_t{1} << (2 * k), 2);
    std::vector<Amplitude> out(in.size());
    std::vector<int> targets;
    for (int t = 0; t < k; ++t) {
        targets.push_back(n - 1 - 2 * t);
    }
    for (auto _ : state) {
        F(in, out, n, targets, m);
        benchmark::DoNotOptimize(out.data());
    }
}

template <ApplyFn F>
void BM_Project(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto in = random_vector(std::size_t{1} << n, 3);
    const auto pattern = random_vector(4, 4);
    std::vector<Amplitude> out(in.size() / 4);
    const std::vector<int> targets{0, 3};
    for (auto _ : state) {
        F(in, out, n, targets, pattern);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_SampledProtocol(benchmark::State& state) {
    const telexp::ChannelSpec channel(0.6, 0.4, 0.5, 0.4795831523312719);
    const telexp::InputState input(0.5, 0.5, 0.5, 0.5);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto report = telexp::run_protocol(input, channel, telexp::Sampled{7, trials});
        benchmark::DoNotOptimize(report.total_success);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}

}  // namespace

BENCHMARK(BM_Apply<telexp::kernels::apply_matrix>)->Name("apply/omp")->Args({6, 2})->Args({8, 2})->Args({8, 3});
BENCHMARK(BM_Apply<telexp::kernels::serial::apply_matrix>)->Name("apply/serial")->Args({6, 2})->Args({8, 2})->Args({8, 3});
BENCHMARK(BM_Project<telexp::kernels::project>)->Name("project/omp")->Arg(6)->Arg(8);
BENCHMARK(BM_Project<telexp::kernels::serial::project>)->Name("project/serial")->Arg(6)->Arg(8);
BENCHMARK(BM_SampledProtocol)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
