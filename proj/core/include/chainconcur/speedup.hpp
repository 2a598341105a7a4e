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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <chainconcur/graph.hpp>
#include <chainconcur/metrics.hpp>
#include <chainconcur/rational.hpp>

namespace chainconcur {

// Time is measured in transaction executions: every transaction costs one unit
// and a block of x transactions takes x units sequentially.

enum class SpeedupModel { kSpeculative, kPerfectInfo, kGroupBound, kScheduledLpt, kScheduledOpt };

inline constexpr std::array<SpeedupModel, 5> kAllSpeedupModels{
    SpeedupModel::kSpeculative, SpeedupModel::kPerfectInfo, SpeedupModel::kGroupBound,
    SpeedupModel::kScheduledLpt, SpeedupModel::kScheduledOpt};

//! "SPECULATIVE", "PERFECT_INFO", "GROUP_BOUND", "SCHEDULED_LPT", "SCHEDULED_OPT".
std::string_view to_string(SpeedupModel model);

struct SpeedupEstimate {
    std::uint64_t block_number{0};
    SpeedupModel model{SpeedupModel::kSpeculative};
    std::uint64_t cores{1};
    Rational preproc_cost{0};
    Rational new_time{0};
    Rational speedup{0};

    friend bool operator==(const SpeedupEstimate&, const SpeedupEstimate&) = default;
};

//! Two-phase speculative execution: run all x transactions in parallel, then re-run
//! the c*x conflicted ones sequentially. T' = ceil(x/n) + c*x.
//! Throws DataError unless x >= 1, n >= 1, 0 <= c <= 1 and c*x is an integer.
SpeedupEstimate speculative_speedup(std::uint64_t tx_count, const Rational& conflict_rate, std::uint64_t cores);

//! Conflicts known up front at cost K: only the (1-c)*x clean transactions run in
//! the parallel phase. T' = K + ceil((1-c)*x/n) + c*x.
SpeedupEstimate perfect_info_speedup(std::uint64_t tx_count, const Rational& conflict_rate, std::uint64_t cores,
                                     const Rational& preproc_cost);

//! Upper bound from group concurrency: R = x / (max(x/n, l*x) + K), i.e. min(n, 1/l)
//! when K = 0. Throws DataError unless 1/x <= l <= 1.
SpeedupEstimate group_bound_speedup(std::uint64_t tx_count, const Rational& group_rate, std::uint64_t cores,
                                    const Rational& preproc_cost);

//! Components placed on cores, each component running entirely on one core.
struct Schedule {
    std::vector<std::uint64_t> core_loads;  // one entry per core
    std::vector<std::size_t> assignment;    // component -> core
    std::uint64_t makespan{0};
};

//! Longest-processing-time-first: largest component first (ties by input order),
//! each onto the least loaded core (ties to the lowest core index).
Schedule schedule_lpt(std::span<const std::uint64_t> sizes, std::uint64_t cores);

//! The exhaustive search runs over components of size >= 2 only; unit components
//! are packed afterwards, which cannot change the optimum. The search is refused
//! above these bounds unless LPT already meets the trivial lower bound.
inline constexpr std::uint64_t kOracleMaxTotal = 24;
inline constexpr std::size_t kOracleMaxComponents = 12;

//! Minimum-makespan schedule, or nullopt when the instance is above the search bound.
std::optional<Schedule> find_optimal_schedule(std::span<const std::uint64_t> sizes, std::uint64_t cores);

//! As find_optimal_schedule(), throwing DataError for oversized instances.
Schedule schedule_optimal(std::span<const std::uint64_t> sizes, std::uint64_t cores);

//! max(largest component, ceil(total / cores)); no schedule can beat it.
std::uint64_t makespan_lower_bound(std::span<const std::uint64_t> sizes, std::uint64_t cores);

//! All five models for every core count, grouped by model in declaration order.
//! SCHEDULED_OPT rows are left out for core counts where the exact search is
//! refused. SPECULATIVE rows report a preprocessing cost of 0. Empty blocks
//! produce no estimates.
std::vector<SpeedupEstimate> evaluate_block(const BlockMetrics& metrics, const BlockGraph& graph,
                                            std::span<const std::uint64_t> cores, const Rational& preproc_cost);

inline constexpr std::string_view kSpeedupCsvHeader{"block_number,model,cores,preproc_cost,new_time,speedup"};

void write_speedup_csv(std::ostream& out, std::span<const SpeedupEstimate> estimates);

}  // namespace chainconcur
