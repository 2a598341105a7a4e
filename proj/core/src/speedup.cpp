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
#include <functional>
#include <numeric>
#include <ostream>
#include <queue>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chainconcur/errors.hpp>

namespace chainconcur {

namespace {

    Rational as_rational(std::uint64_t v) { return Rational{static_cast<std::int64_t>(v)}; }

    void check_common(std::uint64_t tx_count, std::uint64_t cores) {
        if (tx_count == 0) throw DataError{"speed-up is undefined for a block without transactions"};
        if (cores == 0) throw DataError{"core count must be at least 1"};
    }

    void check_conflict_rate(std::uint64_t tx_count, const Rational& c) {
        if (c < 0 || c > 1) throw DataError{fmt::format("conflict rate {} outside [0, 1]", to_decimal(c))};
        if ((c * as_rational(tx_count)).denominator() != 1) {
            throw DataError{fmt::format("conflict rate {} times {} transactions is not a transaction count",
                                        to_decimal(c), tx_count)};
        }
    }

    void check_preproc(const Rational& k) {
        if (k < 0) throw DataError{"preprocessing cost must be non-negative"};
    }

    SpeedupEstimate make_estimate(SpeedupModel model, std::uint64_t tx_count, std::uint64_t cores,
                                  const Rational& preproc, const Rational& new_time) {
        return SpeedupEstimate{0, model, cores, preproc, new_time, as_rational(tx_count) / new_time};
    }

    std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0 ? 1 : 0); }

    void validate_instance(std::span<const std::uint64_t> sizes, std::uint64_t cores) {
        if (cores == 0) throw DataError{"core count must be at least 1"};
        if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
            throw DataError{"component sizes must be at least 1"};
        }
    }

    Schedule finish(Schedule s) {
        s.makespan = s.core_loads.empty() ? 0 : *std::max_element(s.core_loads.begin(), s.core_loads.end());
        return s;
    }

    //! Depth-first branch and bound over job -> core assignments. Cores holding the
    //! same load are interchangeable, so only one of them is tried per level.
    class ExactSearch {
      public:
        ExactSearch(std::vector<std::uint64_t> jobs, std::size_t cores, std::uint64_t lower_bound,
                    std::uint64_t upper_bound, std::vector<std::size_t> upper_assignment)
            : jobs_{std::move(jobs)},
              loads_(cores, 0),
              current_(jobs_.size(), 0),
              lower_bound_{lower_bound},
              best_{upper_bound},
              best_assignment_{std::move(upper_assignment)} {}

        void run() { descend(0, 0); }

        [[nodiscard]] std::uint64_t best() const { return best_; }
        [[nodiscard]] const std::vector<std::size_t>& best_assignment() const { return best_assignment_; }

      private:
        bool descend(std::size_t k, std::uint64_t current_max) {
            if (k == jobs_.size()) {
                if (current_max < best_) {
                    best_ = current_max;
                    best_assignment_ = current_;
                }
                return best_ == lower_bound_;
            }
            const auto job = jobs_[k];
            std::vector<std::uint64_t> tried;
            for (std::size_t c = 0; c < loads_.size(); ++c) {
                const auto load = loads_[c];
                if (std::find(tried.begin(), tried.end(), load) != tried.end()) continue;
                tried.push_back(load);
                const auto next_max = std::max(current_max, load + job);
                if (next_max >= best_) continue;
                loads_[c] += job;
                current_[k] = c;
                const bool done = descend(k + 1, next_max);
                loads_[c] -= job;
                if (done) return true;
            }
            return false;
        }

        std::vector<std::uint64_t> jobs_;
        std::vector<std::uint64_t> loads_;
        std::vector<std::size_t> current_;
        std::uint64_t lower_bound_;
        std::uint64_t best_;
        std::vector<std::size_t> best_assignment_;
    };

}  // namespace

std::string_view to_string(SpeedupModel model) {
    switch (model) {
        case SpeedupModel::kSpeculative: return "SPECULATIVE";
        case SpeedupModel::kPerfectInfo: return "PERFECT_INFO";
        case SpeedupModel::kGroupBound: return "GROUP_BOUND";
        case SpeedupModel::kScheduledLpt: return "SCHEDULED_LPT";
        case SpeedupModel::kScheduledOpt: return "SCHEDULED_OPT";
    }
    return "UNKNOWN";
}

SpeedupEstimate speculative_speedup(std::uint64_t tx_count, const Rational& conflict_rate, std::uint64_t cores) {
    check_common(tx_count, cores);
    check_conflict_rate(tx_count, conflict_rate);
    // ceil(x/n) rather than floor(x/n)+1: the two differ only when n divides x,
    // where the parallel phase needs exactly x/n units.
    const auto parallel_phase = as_rational(ceil_div(tx_count, cores));
    const auto sequential_phase = conflict_rate * as_rational(tx_count);
    return make_estimate(SpeedupModel::kSpeculative, tx_count, cores, Rational{0}, parallel_phase + sequential_phase);
}

SpeedupEstimate perfect_info_speedup(std::uint64_t tx_count, const Rational& conflict_rate, std::uint64_t cores,
                                     const Rational& preproc_cost) {
    check_common(tx_count, cores);
    check_conflict_rate(tx_count, conflict_rate);
    check_preproc(preproc_cost);
    const auto conflicted = conflict_rate * as_rational(tx_count);
    const auto clean = static_cast<std::uint64_t>(tx_count - static_cast<std::uint64_t>(conflicted.numerator()));
    const auto parallel_phase = as_rational(ceil_div(clean, cores));
    return make_estimate(SpeedupModel::kPerfectInfo, tx_count, cores, preproc_cost,
                         preproc_cost + parallel_phase + conflicted);
}

SpeedupEstimate group_bound_speedup(std::uint64_t tx_count, const Rational& group_rate, std::uint64_t cores,
                                    const Rational& preproc_cost) {
    check_common(tx_count, cores);
    check_preproc(preproc_cost);
    const auto x = as_rational(tx_count);
    if (group_rate * x < 1 || group_rate > 1) {
        throw DataError{fmt::format("group conflict rate {} outside [1/{}, 1]", to_decimal(group_rate), tx_count)};
    }
    const auto busy = std::max(x / as_rational(cores), group_rate * x);
    return make_estimate(SpeedupModel::kGroupBound, tx_count, cores, preproc_cost, busy + preproc_cost);
}

std::uint64_t makespan_lower_bound(std::span<const std::uint64_t> sizes, std::uint64_t cores) {
    validate_instance(sizes, cores);
    if (sizes.empty()) return 0;
    const auto total = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
    return std::max(*std::max_element(sizes.begin(), sizes.end()), ceil_div(total, cores));
}

Schedule schedule_lpt(std::span<const std::uint64_t> sizes, std::uint64_t cores) {
    validate_instance(sizes, cores);

    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });

    Schedule s;
    s.core_loads.assign(cores, 0);
    s.assignment.assign(sizes.size(), 0);

    // (load, core) min-heap; equal loads pop the lowest core index first
    using Slot = std::pair<std::uint64_t, std::size_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> heap;
    const auto used = std::min<std::uint64_t>(cores, std::max<std::size_t>(sizes.size(), 1));
    for (std::size_t c = 0; c < used; ++c) heap.emplace(0, c);

    for (const auto job : order) {
        auto [load, core] = heap.top();
        heap.pop();
        load += sizes[job];
        s.assignment[job] = core;
        s.core_loads[core] = load;
        heap.emplace(load, core);
    }
    return finish(std::move(s));
}

std::optional<Schedule> find_optimal_schedule(std::span<const std::uint64_t> sizes, std::uint64_t cores) {
    validate_instance(sizes, cores);
    auto lpt = schedule_lpt(sizes, cores);
    const auto lower = makespan_lower_bound(sizes, cores);
    if (lpt.makespan == lower) return lpt;

    std::vector<std::size_t> big;
    std::uint64_t big_total = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] >= 2) {
            big.push_back(i);
            big_total += sizes[i];
        }
    }
    if (big_total > kOracleMaxTotal && big.size() > kOracleMaxComponents) return std::nullopt;

    std::stable_sort(big.begin(), big.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
    std::vector<std::uint64_t> jobs;
    for (const auto i : big) jobs.push_back(sizes[i]);

    const auto search_cores = std::min<std::uint64_t>(cores, jobs.size());
    const auto seed = schedule_lpt(jobs, search_cores);
    ExactSearch search{jobs, static_cast<std::size_t>(search_cores), makespan_lower_bound(jobs, search_cores),
                       seed.makespan, seed.assignment};
    search.run();

    Schedule s;
    s.core_loads.assign(cores, 0);
    s.assignment.assign(sizes.size(), 0);
    for (std::size_t k = 0; k < big.size(); ++k) {
        const auto core = search.best_assignment()[k];
        s.assignment[big[k]] = core;
        s.core_loads[core] += jobs[k];
    }
    // Unit components fill the least loaded cores: the result is
    // max(optimum over the large components, ceil(total / cores)).
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] != 1) continue;
        const auto core =
            static_cast<std::size_t>(std::min_element(s.core_loads.begin(), s.core_loads.end()) - s.core_loads.begin());
        s.assignment[i] = core;
        s.core_loads[core] += 1;
    }
    return finish(std::move(s));
}

Schedule schedule_optimal(std::span<const std::uint64_t> sizes, std::uint64_t cores) {
    auto s = find_optimal_schedule(sizes, cores);
    if (!s) {
        throw DataError{fmt::format("instance too large for exact scheduling: more than {} components of size >= 2 "
                                    "and more than {} transactions in them",
                                    kOracleMaxComponents, kOracleMaxTotal)};
    }
    return std::move(*s);
}

std::vector<SpeedupEstimate> evaluate_block(const BlockMetrics& metrics, const BlockGraph& graph,
                                            std::span<const std::uint64_t> cores, const Rational& preproc_cost) {
    std::vector<SpeedupEstimate> out;
    const auto x = metrics.tx_count;
    if (x == 0) return out;
    check_preproc(preproc_cost);

    std::vector<std::uint64_t> sizes;
    for (const auto s : graph.component_sizes()) sizes.push_back(s);

    for (const auto model : kAllSpeedupModels) {
        for (const auto n : cores) {
            std::optional<SpeedupEstimate> e;
            switch (model) {
                case SpeedupModel::kSpeculative:
                    e = speculative_speedup(x, metrics.single_conflict_rate(), n);
                    break;
                case SpeedupModel::kPerfectInfo:
                    e = perfect_info_speedup(x, metrics.single_conflict_rate(), n, preproc_cost);
                    break;
                case SpeedupModel::kGroupBound:
                    e = group_bound_speedup(x, metrics.group_conflict_rate(), n, preproc_cost);
                    break;
                case SpeedupModel::kScheduledLpt: {
                    const auto s = schedule_lpt(sizes, n);
                    e = make_estimate(model, x, n, preproc_cost, as_rational(s.makespan) + preproc_cost);
                    break;
                }
                case SpeedupModel::kScheduledOpt:
                    if (const auto s = find_optimal_schedule(sizes, n)) {
                        e = make_estimate(model, x, n, preproc_cost, as_rational(s->makespan) + preproc_cost);
                    }
                    break;
            }
            if (!e) continue;
            e->block_number = metrics.block_number;
            out.push_back(*e);
        }
    }
    return out;
}

void write_speedup_csv(std::ostream& out, std::span<const SpeedupEstimate> estimates) {
    out << kSpeedupCsvHeader << '\n';
    for (const auto& e : estimates) {
        fmt::print(out, "{},{},{},{},{},{}\n", e.block_number, to_string(e.model), e.cores, to_decimal(e.preproc_cost),
                   to_decimal(e.new_time), to_decimal(e.speedup));
    }
}

}  // namespace chainconcur
