/*
   Copyright 2026 The chainconcur Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include <chainconcur/graph.hpp>
#include <chainconcur/metrics.hpp>

namespace {

using namespace chainconcur;

// Transfers over a fixed address pool; a smaller pool means more conflicts.
AccountBlock account_block(std::uint64_t txs, std::uint64_t pool) {
    std::mt19937_64 rng{txs * 31 + pool};
    AccountBlock block{1, {}};
    auto addr = [&] { return "0x" + std::to_string(rng() % pool); };
    for (std::uint64_t i = 0; i < txs; ++i) block.records.push_back({1, i, addr(), addr(), 21000});
    return block;
}

UtxoBlock utxo_block(std::uint64_t txs) {
    std::mt19937_64 rng{txs};
    UtxoBlock block{1, {{1, "coinbase", std::nullopt}}};
    for (std::uint64_t i = 0; i < txs; ++i) {
        const auto spent = i > 0 && rng() % 8 == 0 ? "t" + std::to_string(rng() % i) : "ext" + std::to_string(i);
        block.records.push_back({1, "t" + std::to_string(i), spent});
    }
    return block;
}

void BM_AccountGraph(benchmark::State& state) {
    const auto block = account_block(static_cast<std::uint64_t>(state.range(0)), static_cast<std::uint64_t>(state.range(0)) * 2);
    for (auto _ : state) benchmark::DoNotOptimize(build_account_graph(block));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AccountGraph)->Arg(100)->Arg(1000)->Arg(10000);

void BM_UtxoGraph(benchmark::State& state) {
    const auto block = utxo_block(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_utxo_graph(block));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UtxoGraph)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BlockMetrics(benchmark::State& state) {
    const auto graph = build_utxo_graph(utxo_block(static_cast<std::uint64_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(block_metrics(graph));
}
BENCHMARK(BM_BlockMetrics)->Arg(1000)->Arg(10000);

}  // namespace
