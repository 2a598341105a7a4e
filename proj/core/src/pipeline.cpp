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

#include <chainconcur/pipeline.hpp>

#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chainconcur/errors.hpp>
#include <chainconcur/parallel.hpp>

namespace chainconcur {

BlockAnalysis analyze_block(const UtxoBlock& block) {
    auto graph = build_utxo_graph(block);
    auto metrics = block_metrics(graph);
    return {std::move(graph), metrics};
}

BlockAnalysis analyze_block(const AccountBlock& block) {
    auto graph = build_account_graph(block);
    auto metrics = block_metrics(graph);
    return {std::move(graph), metrics};
}

std::vector<BlockAnalysis> analyze_blocks(std::span<const UtxoBlock> blocks, std::size_t workers) {
    return parallel_map(blocks.size(), workers, [&](std::size_t i) { return analyze_block(blocks[i]); });
}

std::vector<BlockAnalysis> analyze_blocks(std::span<const AccountBlock> blocks, std::size_t workers) {
    return parallel_map(blocks.size(), workers, [&](std::size_t i) { return analyze_block(blocks[i]); });
}

std::vector<BlockMetrics> metrics_of(std::span<const BlockAnalysis> analyses) {
    std::vector<BlockMetrics> out;
    out.reserve(analyses.size());
    for (const auto& a : analyses) out.push_back(a.metrics);
    return out;
}

std::vector<SpeedupEstimate> evaluate_blocks(std::span<const BlockAnalysis> analyses,
                                             std::span<const std::uint64_t> cores, const Rational& preproc_cost,
                                             std::size_t workers) {
    const auto per_block = parallel_map(analyses.size(), workers, [&](std::size_t i) {
        return evaluate_block(analyses[i].metrics, analyses[i].graph, cores, preproc_cost);
    });
    std::vector<SpeedupEstimate> out;
    for (const auto& rows : per_block) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

std::vector<SpeedupBucketRow> bucket_speedups(std::span<const BlockAnalysis> analyses,
                                              std::span<const SpeedupEstimate> estimates,
                                              std::span<const std::uint64_t> cores, std::size_t bucket_count) {
    if (analyses.empty()) throw DataError{"no blocks to bucket"};
    std::set<std::uint64_t> distinct;
    std::map<std::uint64_t, std::uint64_t> weight;
    for (const auto& a : analyses) {
        distinct.insert(a.metrics.block_number);
        weight[a.metrics.block_number] += a.metrics.tx_count;
    }
    if (bucket_count == 0 || bucket_count > distinct.size()) {
        throw DataError{fmt::format("bucket count must be between 1 and {} (distinct blocks), got {}",
                                    distinct.size(), bucket_count)};
    }

    std::vector<SpeedupBucketRow> rows;
    for (const auto model : kAllSpeedupModels) {
        for (const auto n : cores) {
            std::vector<WeightedValue> values;
            for (const auto& e : estimates) {
                if (e.model == model && e.cores == n) {
                    values.push_back(WeightedValue{e.block_number, weight[e.block_number], e.speedup});
                }
            }
            const auto buckets = bucket_weighted(values, *distinct.begin(), *distinct.rbegin(), bucket_count);
            for (std::size_t i = 0; i < buckets.size(); ++i) {
                rows.push_back(SpeedupBucketRow{model, n, i, buckets[i]});
            }
        }
    }
    return rows;
}

void write_speedup_bucket_csv(std::ostream& out, std::span<const SpeedupBucketRow> rows) {
    out << kSpeedupBucketCsvHeader << '\n';
    for (const auto& r : rows) {
        const auto mean = r.bucket.weighted_mean ? fmt::format("{:.6f}", *r.bucket.weighted_mean) : std::string{};
        fmt::print(out, "{},{},{},{},{},{},{}\n", to_string(r.model), r.cores, r.bucket_index, r.bucket.block_lo,
                   r.bucket.block_hi, mean, r.bucket.total_weight);
    }
}

std::vector<SimulationRow> simulate_block(const BlockAnalysis& analysis, std::span<const std::uint64_t> cores) {
    std::vector<SimulationRow> rows;
    const auto x = analysis.metrics.tx_count;
    if (x == 0) return rows;

    std::vector<std::uint64_t> sizes;
    for (const auto s : analysis.graph.component_sizes()) sizes.push_back(s);

    auto row = [&](std::uint64_t n, Scheduler scheduler, Schedule schedule) {
        const auto speedup = Rational{static_cast<std::int64_t>(x), static_cast<std::int64_t>(schedule.makespan)};
        return SimulationRow{analysis.metrics.block_number, n, scheduler, sizes.size(),
                             makespan_lower_bound(sizes, n), std::move(schedule), speedup};
    };
    for (const auto n : cores) {
        rows.push_back(row(n, Scheduler::kLpt, schedule_lpt(sizes, n)));
        if (auto opt = find_optimal_schedule(sizes, n)) rows.push_back(row(n, Scheduler::kOptimal, std::move(*opt)));
    }
    return rows;
}

std::vector<SimulationRow> simulate_blocks(std::span<const BlockAnalysis> analyses,
                                           std::span<const std::uint64_t> cores, std::size_t workers) {
    const auto per_block =
        parallel_map(analyses.size(), workers, [&](std::size_t i) { return simulate_block(analyses[i], cores); });
    std::vector<SimulationRow> out;
    for (const auto& rows : per_block) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

void write_simulation_csv(std::ostream& out, std::span<const SimulationRow> rows) {
    out << kSimulationCsvHeader << '\n';
    for (const auto& r : rows) {
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", r.block_number, r.cores,
                   r.scheduler == Scheduler::kLpt ? "LPT" : "OPT", r.components, r.lower_bound, r.schedule.makespan,
                   to_decimal(r.speedup), fmt::join(r.schedule.core_loads, ";"));
    }
}

}  // namespace chainconcur
