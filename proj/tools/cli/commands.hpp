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
#include <optional>
#include <string>
#include <vector>

#include <chainconcur/ingest.hpp>
#include <chainconcur/metrics.hpp>
#include <chainconcur/rational.hpp>

namespace chainconcur::cli {

enum class Command { kAnalyze, kBucket, kSpeedup, kSimulate };

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitIoError = 3;

inline constexpr std::size_t kMaxBuckets = 10000;
inline constexpr std::uint64_t kMaxCores = 65536;

struct PipelineConfig {
    Command command{Command::kAnalyze};
    DataModel model{DataModel::kAccount};
    std::string input_path;
    std::string output_path;  // "-" writes to stdout
    InputFormat format{InputFormat::kCsv};
    std::optional<std::size_t> buckets;
    WeightKind weight_kind{WeightKind::kTxCount};
    std::string metric{"group_conflict_rate"};
    std::vector<std::uint64_t> cores{1, 2, 4, 8, 16, 32, 64};
    Rational preproc_cost{0};
    std::size_t worker_count{1};
};

//! Throws DataError when a field is out of range.
void validate(const PipelineConfig& config);

int cmd_analyze(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_bucket(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_speedup(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const PipelineConfig& config, std::ostream& out, std::ostream& err);

//! Parses argv, dispatches to the command and maps errors onto exit codes.
//! `out` receives data written to "-"; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

//! Worker count from CHAINCONCUR_WORKERS, else the hardware thread count.
std::size_t default_worker_count();

}  // namespace chainconcur::cli
