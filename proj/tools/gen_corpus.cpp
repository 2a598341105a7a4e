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

// Writes a reproducible synthetic block dump in either input schema.
//
// Account blocks mix a few hot addresses (exchanges, pools, contracts with
// internal call chains) into a large population of ordinary senders; UTXO
// blocks chain a fraction of their inputs onto earlier transactions of the same
// block. Only std::mt19937_64 output is used directly, so a given seed yields
// the same file on every platform.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <chainconcur/ingest.hpp>

namespace {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(unsigned percent) { return below(100) < percent; }

    std::string hex(std::size_t digits) {
        static constexpr char kDigits[] = "0123456789abcdef";
        std::string out;
        out.reserve(digits);
        for (std::size_t i = 0; i < digits; ++i) out.push_back(kDigits[below(16)]);
        return out;
    }

  private:
    std::mt19937_64 engine_;
};

std::vector<chainconcur::AccountBlock> account_corpus(Rng& rng, std::uint64_t first, std::uint64_t count) {
    std::vector<std::string> users(5000);
    for (auto& u : users) u = "0x" + rng.hex(40);
    std::vector<std::string> hot(12);
    for (auto& h : hot) h = "0x" + rng.hex(40);
    std::vector<std::string> contracts(6);
    for (auto& c : contracts) c = "0x" + rng.hex(40);

    std::vector<chainconcur::AccountBlock> blocks;
    for (std::uint64_t b = 0; b < count; ++b) {
        chainconcur::AccountBlock block{first + b, {}};
        const auto tx_count = rng.between(4, 60);
        for (std::uint64_t tx = 0; tx < tx_count; ++tx) {
            chainconcur::TraceRecord top{block.block_number, tx, users[rng.below(users.size())], std::nullopt, 21000};
            const auto kind = rng.below(100);
            if (kind < 25) {
                top.to_addr = hot[rng.below(hot.size())];
            } else if (kind < 32) {
                top.from_addr = hot[rng.below(hot.size())];
                top.to_addr = users[rng.below(users.size())];
            } else if (kind < 45) {
                top.to_addr = contracts[rng.below(contracts.size())];
                top.gas_used = rng.between(40000, 400000);
            } else if (kind < 48) {
                top.gas_used = rng.between(500000, 3000000);  // contract creation
            } else {
                top.to_addr = users[rng.below(users.size())];
            }
            block.records.push_back(top);
            if (kind >= 32 && kind < 45) {
                // internal call chain through other contracts
                auto caller = *top.to_addr;
                for (auto depth = rng.below(3); depth > 0; --depth) {
                    auto callee = contracts[rng.below(contracts.size())];
                    block.records.push_back({block.block_number, tx, caller, callee, top.gas_used});
                    caller = callee;
                }
            }
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::vector<chainconcur::UtxoBlock> utxo_corpus(Rng& rng, std::uint64_t first, std::uint64_t count) {
    std::vector<chainconcur::UtxoBlock> blocks;
    for (std::uint64_t b = 0; b < count; ++b) {
        chainconcur::UtxoBlock block{first + b, {}};
        block.records.push_back({block.block_number, rng.hex(64), std::nullopt});  // coinbase
        std::vector<std::string> hashes;
        const auto tx_count = rng.between(4, 80);
        for (std::uint64_t tx = 0; tx < tx_count; ++tx) {
            auto hash = rng.hex(64);
            const auto inputs = rng.between(1, 3);
            for (std::uint64_t i = 0; i < inputs; ++i) {
                std::string spent = !hashes.empty() && rng.chance(12) ? hashes[rng.below(hashes.size())] : rng.hex(64);
                block.records.push_back({block.block_number, hash, std::move(spent)});
            }
            hashes.push_back(std::move(hash));
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate a reproducible synthetic block dump", "chainconcur-gen-corpus"};
    std::string model{"account"};
    std::string format{"csv"};
    std::string output;
    std::uint64_t blocks = 200;
    std::uint64_t first = 0;
    std::uint64_t seed = 20200101;
    app.add_option("--model", model, "utxo or account")->check(CLI::IsMember({"utxo", "account"}));
    app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--output", output, "Output file")->required();
    app.add_option("--blocks", blocks, "Number of blocks")->check(CLI::PositiveNumber);
    app.add_option("--first-block", first, "Number of the first block (default 1000000 / 500000)");
    app.add_option("--seed", seed, "Random seed");
    CLI11_PARSE(app, argc, argv);

    std::ofstream out{output, std::ios::binary};
    if (!out) {
        std::cerr << "error: cannot open output file: " << output << '\n';
        return 3;
    }
    Rng rng{seed};
    const bool csv = format == "csv";
    if (model == "account") {
        const auto corpus = account_corpus(rng, first == 0 ? 1000000 : first, blocks);
        csv ? chainconcur::write_account_csv(out, corpus) : chainconcur::write_account_jsonl(out, corpus);
    } else {
        const auto corpus = utxo_corpus(rng, first == 0 ? 500000 : first, blocks);
        csv ? chainconcur::write_utxo_csv(out, corpus) : chainconcur::write_utxo_jsonl(out, corpus);
    }
    return out ? 0 : 3;
}
