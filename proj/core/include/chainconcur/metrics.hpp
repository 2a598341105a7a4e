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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <chainconcur/graph.hpp>
#include <chainconcur/rational.hpp>

namespace chainconcur {

//! Per-block concurrency figures. Rates are derived from the stored counts, so
//! they are exact and never drift from them.
struct BlockMetrics {
    std::uint64_t block_number{0};
    std::uint64_t tx_count{0};             // x, coinbase excluded
    std::uint64_t conflicted_tx_count{0};  // transactions in components of size >= 2
    std::uint64_t lcc_tx_count{0};         // L
    std::uint64_t max_depth{0};            // UTXO only
    std::uint64_t inblock_spent_txos{0};   // UTXO only
    std::uint64_t total_gas{0};            // account only
    std::uint64_t conflicted_gas{0};
    std::uint64_t lcc_gas{0};

    //! c = conflicted / x; 0 for empty blocks.
    [[nodiscard]] Rational single_conflict_rate() const;
    //! l = L / x; 0 for empty blocks, 1/x when every component is a singleton.
    [[nodiscard]] Rational group_conflict_rate() const;
    [[nodiscard]] Rational gas_single_conflict_rate() const;
    [[nodiscard]] Rational gas_group_conflict_rate() const;

    friend bool operator==(const BlockMetrics&, const BlockMetrics&) = default;
};

BlockMetrics block_metrics(const BlockGraph& graph);

enum class Metric {
    kTxCount,
    kConflictedTxCount,
    kSingleConflictRate,
    kLccTxCount,
    kGroupConflictRate,
    kMaxDepth,
    kInblockSpentTxos,
    kTotalGas,
    kConflictedGas,
    kLccGas,
    kGasSingleConflictRate,
    kGasGroupConflictRate,
};

//! Valid metric names, in metrics CSV column order.
std::span<const std::string_view> metric_names();
std::string_view to_string(Metric metric);
//! Throws DataError listing the valid names.
Metric parse_metric(std::string_view name);
Rational metric_value(const BlockMetrics& m, Metric metric);

enum class WeightKind { kTxCount, kGas };

std::string_view to_string(WeightKind kind);
//! Accepts "tx"/"tx_count" and "gas".
WeightKind parse_weight_kind(std::string_view name);

struct Bucket {
    std::uint64_t block_lo{0};
    std::uint64_t block_hi{0};
    std::optional<double> weighted_mean;  // empty when the bucket carries no weight
    std::uint64_t total_weight{0};
};

struct BucketSeries {
    Metric metric{Metric::kSingleConflictRate};
    WeightKind weight_kind{WeightKind::kTxCount};
    std::vector<Bucket> buckets;
};

//! One block's contribution to a bucketed series.
struct WeightedValue {
    std::uint64_t block_number{0};
    std::uint64_t weight{0};
    Rational value{0};
};

//! Splits [range_lo, range_hi] into `bucket_count` contiguous equal-width ranges
//! (widths differ by at most one when the span is not divisible) and returns the
//! weight-averaged value in each. Values outside the range are a DataError.
std::vector<Bucket> bucket_weighted(std::span<const WeightedValue> values, std::uint64_t range_lo,
                                    std::uint64_t range_hi, std::size_t bucket_count);

//! Buckets `metric` over [min block, max block] of `metrics`, weighting each
//! block by its transaction count or total gas.
//!
//! Throws DataError when `metrics` is empty, when bucket_count is 0 or exceeds
//! the number of distinct blocks, or when the whole input carries zero weight.
BucketSeries bucket_series(std::span<const BlockMetrics> metrics, Metric metric, WeightKind weight_kind,
                           std::size_t bucket_count);

inline constexpr std::string_view kMetricsCsvHeader{
    "block_number,tx_count,conflicted_tx_count,single_conflict_rate,lcc_tx_count,group_conflict_rate,"
    "max_depth,inblock_spent_txos,total_gas,conflicted_gas,lcc_gas,gas_single_conflict_rate,"
    "gas_group_conflict_rate"};

inline constexpr std::string_view kBucketCsvHeader{"bucket_index,block_lo,block_hi,weighted_mean,total_weight"};

void write_metrics_csv(std::ostream& out, std::span<const BlockMetrics> metrics);
void export_metrics_csv(std::span<const BlockMetrics> metrics, const std::filesystem::path& path);

//! Reads a metrics CSV back. Rates are rebuilt from the integer columns and the
//! printed decimals are checked against them.
std::vector<BlockMetrics> read_metrics_csv(std::istream& in);
std::vector<BlockMetrics> load_metrics_csv(const std::filesystem::path& path);

void write_bucket_csv(std::ostream& out, const BucketSeries& series);

}  // namespace chainconcur
