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

#include <chainconcur/metrics.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chainconcur/errors.hpp>
#include <chainconcur/ingest.hpp>

namespace chainconcur {

namespace {

    Rational ratio(std::uint64_t part, std::uint64_t whole) {
        if (whole == 0) return Rational{0};
        return Rational{static_cast<std::int64_t>(part), static_cast<std::int64_t>(whole)};
    }

    constexpr std::array<std::string_view, 12> kMetricNames{
        "tx_count",        "conflicted_tx_count", "single_conflict_rate", "lcc_tx_count",
        "group_conflict_rate", "max_depth",       "inblock_spent_txos",   "total_gas",
        "conflicted_gas",  "lcc_gas",             "gas_single_conflict_rate", "gas_group_conflict_rate",
    };

}  // namespace

Rational BlockMetrics::single_conflict_rate() const { return ratio(conflicted_tx_count, tx_count); }
Rational BlockMetrics::group_conflict_rate() const { return ratio(lcc_tx_count, tx_count); }
Rational BlockMetrics::gas_single_conflict_rate() const { return ratio(conflicted_gas, total_gas); }
Rational BlockMetrics::gas_group_conflict_rate() const { return ratio(lcc_gas, total_gas); }

BlockMetrics block_metrics(const BlockGraph& graph) {
    BlockMetrics m;
    m.block_number = graph.block_number;
    m.tx_count = graph.tx_count();
    for (const auto& c : graph.components) {
        if (c.tx_count() >= 2) {
            m.conflicted_tx_count += c.tx_count();
            m.conflicted_gas += c.gas_total;
        }
        m.total_gas += c.gas_total;
    }
    if (const auto lcc = graph.largest_component()) {
        m.lcc_tx_count = graph.components[*lcc].tx_count();
        m.lcc_gas = graph.components[*lcc].gas_total;
    }
    if (graph.model == DataModel::kUtxo) {
        m.max_depth = max_depth(graph);
        m.inblock_spent_txos = graph.inblock_spent_txos;
    }
    return m;
}

std::span<const std::string_view> metric_names() { return kMetricNames; }

std::string_view to_string(Metric metric) { return kMetricNames[static_cast<std::size_t>(metric)]; }

Metric parse_metric(std::string_view name) {
    const auto it = std::find(kMetricNames.begin(), kMetricNames.end(), name);
    if (it == kMetricNames.end()) {
        throw DataError{fmt::format("unknown metric '{}'; valid metrics: {}", name, fmt::join(kMetricNames, ", "))};
    }
    return static_cast<Metric>(it - kMetricNames.begin());
}

Rational metric_value(const BlockMetrics& m, Metric metric) {
    auto count = [](std::uint64_t v) { return Rational{static_cast<std::int64_t>(v)}; };
    switch (metric) {
        case Metric::kTxCount: return count(m.tx_count);
        case Metric::kConflictedTxCount: return count(m.conflicted_tx_count);
        case Metric::kSingleConflictRate: return m.single_conflict_rate();
        case Metric::kLccTxCount: return count(m.lcc_tx_count);
        case Metric::kGroupConflictRate: return m.group_conflict_rate();
        case Metric::kMaxDepth: return count(m.max_depth);
        case Metric::kInblockSpentTxos: return count(m.inblock_spent_txos);
        case Metric::kTotalGas: return count(m.total_gas);
        case Metric::kConflictedGas: return count(m.conflicted_gas);
        case Metric::kLccGas: return count(m.lcc_gas);
        case Metric::kGasSingleConflictRate: return m.gas_single_conflict_rate();
        case Metric::kGasGroupConflictRate: return m.gas_group_conflict_rate();
    }
    return Rational{0};
}

std::string_view to_string(WeightKind kind) { return kind == WeightKind::kTxCount ? "tx_count" : "gas"; }

WeightKind parse_weight_kind(std::string_view name) {
    if (name == "tx" || name == "tx_count") return WeightKind::kTxCount;
    if (name == "gas") return WeightKind::kGas;
    throw DataError{fmt::format("unknown weight '{}'; valid weights: tx, gas", name)};
}

std::vector<Bucket> bucket_weighted(std::span<const WeightedValue> values, std::uint64_t range_lo,
                                    std::uint64_t range_hi, std::size_t bucket_count) {
    if (range_hi < range_lo) throw DataError{"empty block range"};
    const unsigned __int128 span = static_cast<unsigned __int128>(range_hi - range_lo) + 1;
    if (bucket_count == 0 || bucket_count > span) {
        throw DataError{fmt::format("bucket count must be between 1 and the block range width, got {}", bucket_count)};
    }
    const unsigned __int128 count = bucket_count;

    auto start_of = [&](std::size_t i) {
        // lo + ceil(i * span / B)
        const unsigned __int128 scaled = static_cast<unsigned __int128>(i) * span;
        return range_lo + static_cast<std::uint64_t>((scaled + count - 1) / count);
    };

    std::vector<Bucket> buckets(bucket_count);
    for (std::size_t i = 0; i < bucket_count; ++i) {
        buckets[i].block_lo = start_of(i);
        buckets[i].block_hi = start_of(i + 1) - 1;
    }

    std::vector<long double> weighted_sum(bucket_count, 0.0L);
    for (const auto& v : values) {
        if (v.block_number < range_lo || v.block_number > range_hi) {
            throw DataError{fmt::format("block {} outside bucket range [{}, {}]", v.block_number, range_lo, range_hi)};
        }
        if (v.weight == 0) continue;
        const auto index =
            static_cast<std::size_t>(static_cast<unsigned __int128>(v.block_number - range_lo) * count / span);
        // w * m is an exact integer whenever the weight is the rate's own denominator
        const auto term = Rational{static_cast<std::int64_t>(v.weight)} * v.value;
        weighted_sum[index] += static_cast<long double>(term.numerator()) / term.denominator();
        buckets[index].total_weight += v.weight;
    }
    for (std::size_t i = 0; i < bucket_count; ++i) {
        if (buckets[i].total_weight > 0) {
            buckets[i].weighted_mean = static_cast<double>(weighted_sum[i] / buckets[i].total_weight);
        }
    }
    return buckets;
}

BucketSeries bucket_series(std::span<const BlockMetrics> metrics, Metric metric, WeightKind weight_kind,
                           std::size_t bucket_count) {
    if (metrics.empty()) throw DataError{"no blocks to bucket"};
    std::set<std::uint64_t> distinct;
    for (const auto& m : metrics) distinct.insert(m.block_number);
    if (bucket_count == 0 || bucket_count > distinct.size()) {
        throw DataError{fmt::format("bucket count must be between 1 and {} (distinct blocks), got {}",
                                    distinct.size(), bucket_count)};
    }

    std::vector<WeightedValue> values;
    values.reserve(metrics.size());
    std::uint64_t grand_total = 0;
    for (const auto& m : metrics) {
        const auto weight = weight_kind == WeightKind::kTxCount ? m.tx_count : m.total_gas;
        values.push_back(WeightedValue{m.block_number, weight, metric_value(m, metric)});
        grand_total += weight;
    }
    if (grand_total == 0) {
        throw DataError{fmt::format("zero total weight: no block carries {} weight", to_string(weight_kind))};
    }

    BucketSeries series;
    series.metric = metric;
    series.weight_kind = weight_kind;
    series.buckets = bucket_weighted(values, *distinct.begin(), *distinct.rbegin(), bucket_count);
    return series;
}

void write_metrics_csv(std::ostream& out, std::span<const BlockMetrics> metrics) {
    out << kMetricsCsvHeader << '\n';
    for (const auto& m : metrics) {
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{}\n", m.block_number, m.tx_count, m.conflicted_tx_count,
                   to_decimal(m.single_conflict_rate()), m.lcc_tx_count, to_decimal(m.group_conflict_rate()),
                   m.max_depth, m.inblock_spent_txos, m.total_gas, m.conflicted_gas, m.lcc_gas,
                   to_decimal(m.gas_single_conflict_rate()), to_decimal(m.gas_group_conflict_rate()));
    }
}

void export_metrics_csv(std::span<const BlockMetrics> metrics, const std::filesystem::path& path) {
    std::ofstream out{path, std::ios::binary};
    if (!out) throw IoError{"cannot open output file", path.string()};
    write_metrics_csv(out, metrics);
    out.flush();
    if (!out) throw IoError{"write failure", path.string()};
}

std::vector<BlockMetrics> read_metrics_csv(std::istream& in) {
    std::vector<BlockMetrics> rows;
    std::string text;
    std::uint64_t line = 0;
    bool header_seen = false;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != kMetricsCsvHeader) throw ParseError{"not a metrics CSV header", line};
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(text);
        if (f.size() != kMetricNames.size() + 1) {
            throw ParseError{fmt::format("expected {} fields, got {}", kMetricNames.size() + 1, f.size()), line};
        }
        auto num = [&](std::size_t i) {
            std::uint64_t v = 0;
            const auto* end = f[i].data() + f[i].size();
            const auto [ptr, ec] = std::from_chars(f[i].data(), end, v);
            if (f[i].empty() || ec != std::errc{} || ptr != end) {
                throw ParseError{fmt::format("invalid integer '{}' in column {}", f[i], i + 1), line};
            }
            return v;
        };
        BlockMetrics m;
        m.block_number = num(0);
        m.tx_count = num(1);
        m.conflicted_tx_count = num(2);
        m.lcc_tx_count = num(4);
        m.max_depth = num(6);
        m.inblock_spent_txos = num(7);
        m.total_gas = num(8);
        m.conflicted_gas = num(9);
        m.lcc_gas = num(10);
        if (m.conflicted_tx_count > m.tx_count || m.lcc_tx_count > m.tx_count || m.conflicted_gas > m.total_gas ||
            m.lcc_gas > m.total_gas) {
            throw ParseError{"counts exceed their totals", line};
        }
        const std::array<std::pair<std::size_t, Rational>, 4> rates{{
            {3, m.single_conflict_rate()},
            {5, m.group_conflict_rate()},
            {11, m.gas_single_conflict_rate()},
            {12, m.gas_group_conflict_rate()},
        }};
        for (const auto& [column, rate] : rates) {
            if (f[column] != to_decimal(rate)) {
                throw ParseError{fmt::format("{} '{}' disagrees with its counts ({})", kMetricNames[column - 1],
                                             f[column], to_decimal(rate)),
                                 line};
            }
        }
        rows.push_back(m);
    }
    if (in.bad()) throw IoError{"read failure", "<stream>"};
    if (!header_seen) throw ParseError{"empty metrics file", 0};
    return rows;
}

std::vector<BlockMetrics> load_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw IoError{"cannot open input file", path.string()};
    return read_metrics_csv(in);
}

void write_bucket_csv(std::ostream& out, const BucketSeries& series) {
    out << kBucketCsvHeader << '\n';
    for (std::size_t i = 0; i < series.buckets.size(); ++i) {
        const auto& b = series.buckets[i];
        const auto mean = b.weighted_mean ? fmt::format("{:.6f}", *b.weighted_mean) : std::string{};
        fmt::print(out, "{},{},{},{},{}\n", i, b.block_lo, b.block_hi, mean, b.total_weight);
    }
}

}  // namespace chainconcur
