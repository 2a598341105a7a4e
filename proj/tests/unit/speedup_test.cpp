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

#include <chainconcur/speedup.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <chainconcur/errors.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace chainconcur {
namespace {

using Sizes = std::vector<std::uint64_t>;

TEST(Speculative, WorkedExamples) {
    const auto small = speculative_speedup(5, Rational(2, 5), 8);
    EXPECT_EQ(small.new_time, Rational(3));
    EXPECT_EQ(small.speedup, Rational(5, 3));
    EXPECT_EQ(speculative_speedup(5, Rational(2, 5), 5).speedup, Rational(5, 3));

    const auto wide = speculative_speedup(16, Rational(7, 8), 16);
    EXPECT_EQ(wide.new_time, Rational(15));
    EXPECT_EQ(wide.speedup, Rational(16, 15));

    const auto eight = speculative_speedup(16, Rational(7, 8), 8);
    EXPECT_EQ(eight.new_time, Rational(16));
    EXPECT_EQ(eight.speedup, Rational(1));
    for (std::uint64_t n = 8; n <= 15; ++n) EXPECT_EQ(speculative_speedup(16, Rational(7, 8), n).speedup, Rational(1));

    EXPECT_EQ(speculative_speedup(10, Rational(0), 1).speedup, Rational(1));
}

TEST(Speculative, SlowerThanSequentialOnOneCore) {
    for (std::uint64_t x = 1; x <= 30; ++x) {
        for (std::uint64_t k = 0; k <= x; ++k) {
            const Rational c(static_cast<std::int64_t>(k), static_cast<std::int64_t>(x));
            const auto r = speculative_speedup(x, c, 1).speedup;
            EXPECT_EQ(r, Rational(static_cast<std::int64_t>(x), static_cast<std::int64_t>(x + k)));
            EXPECT_LE(r, Rational(1));
        }
    }
}

TEST(Speculative, Errors) {
    EXPECT_THROW(speculative_speedup(5, Rational(1, 3), 4), DataError);
    EXPECT_THROW(speculative_speedup(0, Rational(0), 4), DataError);
    EXPECT_THROW(speculative_speedup(5, Rational(0), 0), DataError);
    EXPECT_THROW(speculative_speedup(5, Rational(6, 5), 4), DataError);
    EXPECT_THROW(speculative_speedup(5, Rational(-1, 5), 4), DataError);
}

TEST(PerfectInfo, WorkedExamples) {
    EXPECT_EQ(perfect_info_speedup(5, Rational(2, 5), 8, Rational(0)).speedup, Rational(5, 3));
    const auto all = perfect_info_speedup(10, Rational(1), 4, Rational(0));
    EXPECT_EQ(all.new_time, Rational(10));
    EXPECT_EQ(all.speedup, Rational(1));
    const auto costly = perfect_info_speedup(10, Rational(0), 10, Rational(2));
    EXPECT_EQ(costly.new_time, Rational(3));
    EXPECT_EQ(costly.speedup, Rational(10, 3));
    EXPECT_EQ(costly.preproc_cost, Rational(2));
}

TEST(GroupBound, WorkedExamples) {
    EXPECT_EQ(group_bound_speedup(48, Rational(1, 6), 8, Rational(0)).speedup, Rational(6));
    EXPECT_EQ(group_bound_speedup(120, Rational(1, 6), 8, Rational(0)).speedup, Rational(6));
    EXPECT_EQ(group_bound_speedup(64, Rational(1, 8), 64, Rational(0)).speedup, Rational(8));
    EXPECT_EQ(group_bound_speedup(16, Rational(9, 16), 4, Rational(0)).speedup, Rational(16, 9));
    EXPECT_EQ(group_bound_speedup(5, Rational(2, 5), 8, Rational(0)).speedup, Rational(5, 2));
}

TEST(GroupBound, ExactIdentityAtZeroCost) {
    for (std::uint64_t x = 1; x <= 40; ++x) {
        for (std::uint64_t big_l = 1; big_l <= x; ++big_l) {
            for (const std::uint64_t n : {1, 2, 3, 4, 8, 16, 64}) {
                const Rational l(static_cast<std::int64_t>(big_l), static_cast<std::int64_t>(x));
                const auto r = group_bound_speedup(x, l, n, Rational(0)).speedup;
                const Rational xr(static_cast<std::int64_t>(x));
                const auto denom = std::max(xr / Rational(static_cast<std::int64_t>(n)), Rational(static_cast<std::int64_t>(big_l)));
                EXPECT_EQ(r * denom, xr);
                EXPECT_LE(r, Rational(static_cast<std::int64_t>(n)));
            }
        }
    }
}

TEST(GroupBound, Errors) {
    EXPECT_THROW(group_bound_speedup(10, Rational(1, 20), 4, Rational(0)), DataError);
    EXPECT_THROW(group_bound_speedup(10, Rational(11, 10), 4, Rational(0)), DataError);
    EXPECT_THROW(group_bound_speedup(10, Rational(1, 2), 0, Rational(0)), DataError);
}

TEST(GroupBound, PreprocessingCostLowersSpeedup) {
    const auto free = group_bound_speedup(5, Rational(2, 5), 8, Rational(0)).speedup;
    const auto paid = group_bound_speedup(5, Rational(2, 5), 8, Rational(1000)).speedup;
    EXPECT_GT(free, paid);
}

// Speed-up never decreases with more cores and never increases with more conflict.
TEST(Monotonicity, AnalyticalModels) {
    for (std::uint64_t x = 1; x <= 24; ++x) {
        for (std::uint64_t k = 0; k <= x; ++k) {
            const Rational rate(static_cast<std::int64_t>(k), static_cast<std::int64_t>(x));
            for (std::uint64_t n = 1; n < 40; ++n) {
                EXPECT_LE(speculative_speedup(x, rate, n).speedup, speculative_speedup(x, rate, n + 1).speedup);
                EXPECT_LE(perfect_info_speedup(x, rate, n, Rational(1)).speedup,
                          perfect_info_speedup(x, rate, n + 1, Rational(1)).speedup);
                if (k < x) {
                    const Rational higher(static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(x));
                    EXPECT_GE(speculative_speedup(x, rate, n).speedup, speculative_speedup(x, higher, n).speedup);
                    EXPECT_GE(perfect_info_speedup(x, rate, n, Rational(1)).speedup,
                              perfect_info_speedup(x, higher, n, Rational(1)).speedup);
                }
                if (k >= 1) {
                    EXPECT_LE(group_bound_speedup(x, rate, n, Rational(0)).speedup,
                              group_bound_speedup(x, rate, n + 1, Rational(0)).speedup);
                    if (k < x) {
                        const Rational higher(static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(x));
                        EXPECT_GE(group_bound_speedup(x, rate, n, Rational(0)).speedup,
                                  group_bound_speedup(x, higher, n, Rational(0)).speedup);
                    }
                }
            }
        }
    }
}

TEST(Lpt, WorkedExamples) {
    const Sizes blocks{9, 3, 2, 1, 1};
    const auto two = schedule_lpt(blocks, 2);
    EXPECT_EQ(two.core_loads, (Sizes{9, 7}));
    EXPECT_EQ(two.makespan, 9u);

    const Sizes units{1, 1, 1, 1};
    EXPECT_EQ(schedule_lpt(units, 4).makespan, 1u);

    const Sizes single{5};
    const auto wide = schedule_lpt(single, 8);
    EXPECT_EQ(wide.makespan, 5u);
    EXPECT_EQ(wide.core_loads.size(), 8u);

    EXPECT_EQ(schedule_lpt({}, 4).makespan, 0u);
    EXPECT_THROW(schedule_lpt(single, 0), DataError);
}

TEST(Optimal, WorkedExamples) {
    EXPECT_EQ(schedule_optimal(Sizes{3, 3, 2, 2}, 2).makespan, 5u);
    EXPECT_EQ(schedule_optimal(Sizes{9, 3, 2, 1, 1}, 2).makespan, 9u);
    EXPECT_EQ(schedule_optimal(Sizes{2, 2, 2}, 3).makespan, 2u);
    // LPT gives 7 here, the optimum is 6
    EXPECT_EQ(schedule_lpt(Sizes{3, 3, 2, 2, 2}, 2).makespan, 7u);
    EXPECT_EQ(schedule_optimal(Sizes{3, 3, 2, 2, 2}, 2).makespan, 6u);
}

TEST(Optimal, ScheduleIsConsistent) {
    const Sizes sizes{5, 4, 3, 3, 2, 2, 1};
    const auto s = schedule_optimal(sizes, 3);
    ASSERT_EQ(s.assignment.size(), sizes.size());
    Sizes loads(3, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) loads[s.assignment[i]] += sizes[i];
    EXPECT_EQ(loads, s.core_loads);
    EXPECT_EQ(s.makespan, *std::max_element(loads.begin(), loads.end()));
    EXPECT_EQ(s.makespan, 7u);
}

TEST(Optimal, RefusesOversizedInstances) {
    Sizes big;
    for (int i = 0; i < 3; ++i) big.insert(big.end(), {3, 3, 2, 2, 2});
    EXPECT_FALSE(find_optimal_schedule(big, 2).has_value());
    EXPECT_THROW(schedule_optimal(big, 2), DataError);
    // many unit components stay within reach
    const Sizes units(500, 1);
    EXPECT_EQ(schedule_optimal(units, 7).makespan, 72u);
}

// Exact search against exhaustive enumeration, and LPT against Graham's bound.
TEST(Optimal, MatchesBruteForceAndBoundsLpt) {
    std::mt19937_64 rng{7};
    int instances = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const auto n = 1 + rng() % 4;
        const auto k = 1 + rng() % 7;
        Sizes sizes;
        for (std::uint64_t i = 0; i < k; ++i) sizes.push_back(1 + rng() % 6);
        const auto opt = find_optimal_schedule(sizes, n);
        if (!opt) continue;
        ++instances;
        const auto lpt = schedule_lpt(sizes, n);
        EXPECT_EQ(opt->makespan, test::brute_force_makespan(sizes, n));
        EXPECT_GE(lpt.makespan, opt->makespan);
        EXPECT_GE(opt->makespan, makespan_lower_bound(sizes, n));
        const Rational ratio(static_cast<std::int64_t>(lpt.makespan), static_cast<std::int64_t>(opt->makespan));
        EXPECT_LE(ratio, Rational(4, 3) - Rational(1, 3 * static_cast<std::int64_t>(n)));
    }
    EXPECT_GE(instances, 500);
}

// No realised schedule beats the group bound.
TEST(Optimal, NeverBeatsGroupBound) {
    std::mt19937_64 rng{11};
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = build_account_graph(test::random_account_block(rng, 1));
        const auto sizes = g.component_sizes();
        const Sizes jobs(sizes.begin(), sizes.end());
        const auto m = block_metrics(g);
        for (const std::uint64_t n : {1, 2, 4, 8, 16}) {
            const auto opt = find_optimal_schedule(jobs, n);
            if (!opt) continue;
            const Rational realised(static_cast<std::int64_t>(m.tx_count), static_cast<std::int64_t>(opt->makespan));
            const auto bound = std::min(Rational(static_cast<std::int64_t>(n)), Rational(1) / m.group_conflict_rate());
            EXPECT_LE(realised, bound);
        }
    }
}

TEST(EvaluateBlock, Block1000007) {
    const auto g = build_account_graph(test::block_1000007());
    const Sizes cores{8};
    const auto rows = evaluate_block(block_metrics(g), g, cores, Rational(0));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0].model, SpeedupModel::kSpeculative);
    EXPECT_EQ(rows[0].speedup, Rational(5, 3));
    EXPECT_EQ(rows[2].model, SpeedupModel::kGroupBound);
    EXPECT_EQ(rows[2].speedup, Rational(5, 2));
    EXPECT_EQ(rows[3].model, SpeedupModel::kScheduledLpt);
    EXPECT_EQ(rows[3].speedup, Rational(5, 2));
    EXPECT_EQ(rows[4].speedup, Rational(5, 2));
    for (const auto& r : rows) EXPECT_EQ(r.block_number, 1000007u);
}

TEST(EvaluateBlock, Block1000124) {
    const auto g = build_account_graph(test::block_1000124());
    const Sizes cores{2, 16};
    const auto rows = evaluate_block(block_metrics(g), g, cores, Rational(0));
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[1].model, SpeedupModel::kSpeculative);
    EXPECT_EQ(rows[1].cores, 16u);
    EXPECT_EQ(rows[1].speedup, Rational(16, 15));
    // scheduled models reach the group bound here
    for (const auto& r : rows) {
        if (r.model == SpeedupModel::kScheduledLpt || r.model == SpeedupModel::kScheduledOpt) {
            EXPECT_EQ(r.speedup, Rational(16, 9));
        }
    }
}

TEST(EvaluateBlock, ScheduledNeverExceedsGroupBound) {
    std::mt19937_64 rng{13};
    const Sizes cores{1, 2, 4, 8, 16};
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = build_account_graph(test::random_account_block(rng, 1));
        const auto rows = evaluate_block(block_metrics(g), g, cores, Rational(0));
        for (const auto& r : rows) {
            EXPECT_GT(r.speedup, Rational(0));
            if (r.model == SpeedupModel::kScheduledLpt || r.model == SpeedupModel::kScheduledOpt) {
                const auto bound = std::find_if(rows.begin(), rows.end(), [&](const auto& b) {
                    return b.model == SpeedupModel::kGroupBound && b.cores == r.cores;
                });
                ASSERT_NE(bound, rows.end());
                EXPECT_LE(r.speedup, bound->speedup);
            }
        }
    }
}

TEST(EvaluateBlock, EmptyBlock) {
    const auto g = build_account_graph(AccountBlock{1, {}});
    const Sizes cores{1, 8};
    EXPECT_TRUE(evaluate_block(block_metrics(g), g, cores, Rational(0)).empty());
}

TEST(SpeedupCsv, Rendering) {
    const std::vector<SpeedupEstimate> rows{speculative_speedup(5, Rational(2, 5), 8)};
    std::ostringstream out;
    write_speedup_csv(out, rows);
    EXPECT_EQ(out.str(), "block_number,model,cores,preproc_cost,new_time,speedup\n0,SPECULATIVE,8,0.000000,3.000000,1.666667\n");
}

}  // namespace
}  // namespace chainconcur
