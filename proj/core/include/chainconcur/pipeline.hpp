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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <chainconcur/graph.hpp>
#include <chainconcur/ingest.hpp>
#include <chainconcur/metrics.hpp>
#include <chainconcur/rational.hpp>
#include <chainconcur/speedup.hpp>

namespace chainconcur {

struct BlockAnalysis {
    BlockGraph graph;
    BlockMetrics metrics;
};

BlockAnalysis analyze_block(const UtxoBlock& block);
BlockAnalysis analyze_block(const AccountBlock& block);

//! Per-block analysis on `workers` threads; results keep the input block order.
std::vector<BlockAnalysis> analyze_blocks(std::span<const UtxoBlock> blocks, std::size_t workers);
std::vector<BlockAnalysis> analyze_blocks(std::span<const AccountBlock> blocks, std::size_t workers);

std::vector<BlockMetrics> metrics_of(std::span<const BlockAnalysis> analyses);

//! evaluate_block() over every analysed block, concatenated in block order.
std::vector<SpeedupEstimate> evaluate_blocks(std::span<const BlockAnalysis> analyses,
                                             std::span<const std::uint64_t> cores, const Rational& preproc_cost,
                                             std::size_t workers);

//! Speed-up of one (model, core count) pair averaged per bucket, weighted by transaction count.
struct SpeedupBucketRow {
    SpeedupModel model{SpeedupModel::kSpeculative};
    std::uint64_t cores{1};
    std::size_t bucket_index{0};
    Bucket bucket;
};

//! Buckets span the block range of `analyses`; blocks without an estimate for a
//! pair (empty blocks, refused exact searches) contribute nothing to it.
std::vector<SpeedupBucketRow> bucket_speedups(std::span<const BlockAnalysis> analyses,
                                              std::span<const SpeedupEstimate> estimates,
                                              std::span<const std::uint64_t> cores, std::size_t bucket_count);

inline constexpr std::string_view kSpeedupBucketCsvHeader{
    "model,cores,bucket_index,block_lo,block_hi,weighted_mean,total_weight"};

void write_speedup_bucket_csv(std::ostream& out, std::span<const SpeedupBucketRow> rows);

enum class Scheduler { kLpt, kOptimal };

//! One realised component schedule.
struct SimulationRow {
    std::uint64_t block_number{0};
    std::uint64_t cores{1};
    Scheduler scheduler{Scheduler::kLpt};
    std::size_t components{0};
    std::uint64_t lower_bound{0};
    Schedule schedule;
    Rational speedup{0};
};

//! LPT and exact schedules of the block's components for each core count.
//! Exact rows are omitted where the search is refused; empty blocks yield nothing.
std::vector<SimulationRow> simulate_block(const BlockAnalysis& analysis, std::span<const std::uint64_t> cores);

std::vector<SimulationRow> simulate_blocks(std::span<const BlockAnalysis> analyses,
                                           std::span<const std::uint64_t> cores, std::size_t workers);

inline constexpr std::string_view kSimulationCsvHeader{
    "block_number,cores,scheduler,components,lower_bound,makespan,speedup,core_loads"};

//! core_loads is rendered as a ';'-separated list, one entry per core.
void write_simulation_csv(std::ostream& out, std::span<const SimulationRow> rows);

}  // namespace chainconcur
