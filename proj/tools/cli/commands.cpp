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

#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chainconcur/errors.hpp>
#include <chainconcur/pipeline.hpp>
#include <chainconcur/speedup.hpp>

namespace chainconcur::cli {

namespace {

    int guarded(std::ostream& err, const std::function<void()>& body) {
        try {
            body();
            return kExitOk;
        } catch (const ParseError& e) {
            fmt::print(err, "error: {}\n", e.what());
            return kExitDataError;
        } catch (const DataError& e) {
            fmt::print(err, "error: {}\n", e.what());
            return kExitDataError;
        } catch (const IoError& e) {
            fmt::print(err, "error: {}\n", e.what());
            return kExitIoError;
        }
    }

    //! Renders into memory first so a failing run never leaves a truncated file.
    void emit(const PipelineConfig& config, std::ostream& out, const std::function<void(std::ostream&)>& render) {
        if (config.output_path.empty() || config.output_path == "-") {
            render(out);
            return;
        }
        std::ostringstream buffer;
        render(buffer);
        std::ofstream file{config.output_path, std::ios::binary | std::ios::trunc};
        if (!file) throw IoError{"cannot open output file", config.output_path};
        file << buffer.str();
        file.flush();
        if (!file) throw IoError{"write failure", config.output_path};
    }

    std::vector<BlockAnalysis> load_and_analyze(const PipelineConfig& config) {
        if (config.model == DataModel::kUtxo) {
            const auto blocks = load_utxo(config.input_path, config.format);
            return analyze_blocks(blocks, config.worker_count);
        }
        const auto blocks = load_account(config.input_path, config.format);
        return analyze_blocks(blocks, config.worker_count);
    }

}  // namespace

void validate(const PipelineConfig& config) {
    if (config.input_path.empty()) throw DataError{"--input is required"};
    if (config.buckets && (*config.buckets < 1 || *config.buckets > kMaxBuckets)) {
        throw DataError{fmt::format("--buckets must be in [1, {}]", kMaxBuckets)};
    }
    if (config.cores.empty()) throw DataError{"--cores needs at least one core count"};
    for (const auto n : config.cores) {
        if (n < 1 || n > kMaxCores) throw DataError{fmt::format("core counts must be in [1, {}], got {}", kMaxCores, n)};
    }
    if (config.preproc_cost < 0) throw DataError{"--preproc must be non-negative"};
    if (config.worker_count < 1) throw DataError{"--workers must be at least 1"};
}

int cmd_analyze(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto metrics = metrics_of(load_and_analyze(config));
        emit(config, out, [&](std::ostream& o) { write_metrics_csv(o, metrics); });
    });
}

int cmd_bucket(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto metric = parse_metric(config.metric);
        const auto metrics = load_metrics_csv(config.input_path);
        const auto series = bucket_series(metrics, metric, config.weight_kind, config.buckets.value_or(20));
        emit(config, out, [&](std::ostream& o) { write_bucket_csv(o, series); });
    });
}

int cmd_speedup(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto analyses = load_and_analyze(config);
        const auto estimates = evaluate_blocks(analyses, config.cores, config.preproc_cost, config.worker_count);
        if (config.buckets) {
            const auto rows = bucket_speedups(analyses, estimates, config.cores, *config.buckets);
            emit(config, out, [&](std::ostream& o) { write_speedup_bucket_csv(o, rows); });
        } else {
            emit(config, out, [&](std::ostream& o) { write_speedup_csv(o, estimates); });
        }
    });
}

int cmd_simulate(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto analyses = load_and_analyze(config);
        const auto rows = simulate_blocks(analyses, config.cores, config.worker_count);
        emit(config, out, [&](std::ostream& o) { write_simulation_csv(o, rows); });
    });
}

std::size_t default_worker_count() {
    if (const char* env = std::getenv("CHAINCONCUR_WORKERS")) {
        char* end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || value == 0) {
            throw DataError{fmt::format("CHAINCONCUR_WORKERS must be a positive integer, got '{}'", env)};
        }
        return static_cast<std::size_t>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transaction concurrency and parallel speed-up analysis for blockchain blocks", "chainconcur"};
    app.require_subcommand(1);

    PipelineConfig config;
    std::string model_name{"account"};
    std::string format_name{"csv"};
    std::string weight_name{"tx"};
    std::string preproc_text{"0"};
    std::optional<std::size_t> workers;

    const std::map<std::string, DataModel> models{{"utxo", DataModel::kUtxo}, {"account", DataModel::kAccount}};
    const std::map<std::string, InputFormat> formats{{"csv", InputFormat::kCsv}, {"jsonl", InputFormat::kJsonl}};

    auto add_input = [&](CLI::App* sub, bool with_model) {
        sub->add_option("--input", config.input_path, "Input file")->required();
        sub->add_option("--output", config.output_path, "Output CSV ('-' or omitted for stdout)");
        if (with_model) {
            sub->add_option("--model", model_name, "Data model of the input")
                ->check(CLI::IsMember({"utxo", "account"}))
                ->required();
            sub->add_option("--format", format_name, "Input format")->check(CLI::IsMember({"csv", "jsonl"}));
            sub->add_option("--workers", workers, "Worker threads (default: $CHAINCONCUR_WORKERS or all cores)");
        }
    };
    auto add_cores = [&](CLI::App* sub) {
        sub->add_option("--cores", config.cores, "Comma-separated core counts")->delimiter(',');
    };

    auto* analyze = app.add_subcommand("analyze", "Per-block concurrency metrics");
    add_input(analyze, true);

    auto* bucket = app.add_subcommand("bucket", "Weighted bucketed series from a metrics CSV");
    add_input(bucket, false);
    bucket->add_option("--metric", config.metric, "Metric column to aggregate");
    bucket->add_option("--weight", weight_name, "Block weight: tx or gas")->check(CLI::IsMember({"tx", "gas"}));
    bucket->add_option("--buckets", config.buckets, "Number of buckets (default 20)");

    auto* speedup = app.add_subcommand("speedup", "Speed-up estimates for every block, model and core count");
    add_input(speedup, true);
    add_cores(speedup);
    speedup->add_option("--preproc", preproc_text, "Preprocessing cost K in transaction-execution units");
    speedup->add_option("--buckets", config.buckets, "Aggregate speed-ups into this many buckets");

    auto* simulate = app.add_subcommand("simulate", "Schedule each block's components onto cores");
    add_input(simulate, true);
    add_cores(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const auto code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDataError;
    }

    const auto status = guarded(err, [&] {
        config.model = models.at(model_name);
        config.format = formats.at(format_name);
        config.weight_kind = parse_weight_kind(weight_name);
        config.preproc_cost = parse_decimal(preproc_text);
        config.worker_count = workers ? *workers : default_worker_count();
    });
    if (status != kExitOk) return status;

    if (analyze->parsed()) {
        config.command = Command::kAnalyze;
        return cmd_analyze(config, out, err);
    }
    if (bucket->parsed()) {
        config.command = Command::kBucket;
        return cmd_bucket(config, out, err);
    }
    if (speedup->parsed()) {
        config.command = Command::kSpeedup;
        return cmd_speedup(config, out, err);
    }
    config.command = Command::kSimulate;
    return cmd_simulate(config, out, err);
}

}  // namespace chainconcur::cli
