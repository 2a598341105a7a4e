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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <chainconcur/ingest.hpp>

namespace chainconcur::test {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path{CHAINCONCUR_TEST_DATA_DIR} / name;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline const std::vector<AccountBlock>& example_account_blocks() {
    static const auto blocks = load_account(data_path("eth_example_blocks.csv"), InputFormat::kCsv);
    return blocks;
}

inline const AccountBlock& block_1000007() { return example_account_blocks().at(0); }
inline const AccountBlock& block_1000124() { return example_account_blocks().at(1); }

inline const UtxoBlock& chain_block_500000() {
    static const auto blocks = load_utxo(data_path("btc_chain_500000.csv"), InputFormat::kCsv);
    return blocks.at(0);
}

inline std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::mt19937_64& rng, std::size_t nodes) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (nodes == 0) return edges;
    const auto count = rng() % (nodes * 2 + 1);
    for (std::uint64_t i = 0; i < count; ++i) edges.emplace_back(rng() % nodes, rng() % nodes);
    return edges;
}

//! Random account block over a small address pool so conflicts are common.
inline AccountBlock random_account_block(std::mt19937_64& rng, std::uint64_t block_number) {
    AccountBlock block{block_number, {}};
    const auto txs = 1 + rng() % 24;
    const auto pool = 2 + rng() % 40;
    auto addr = [&] { return "0x" + std::to_string(rng() % pool); };
    for (std::uint64_t tx = 0; tx < txs; ++tx) {
        const auto gas = 21000 + rng() % 100000;
        std::optional<std::string> to;
        if (rng() % 10 != 0) to = addr();
        block.records.push_back({block_number, tx, addr(), to, gas});
        for (auto internal = rng() % 3; internal > 0; --internal) {
            block.records.push_back({block_number, tx, addr(), addr(), gas});
        }
    }
    return block;
}

//! Random UTXO block whose in-block spends only reference earlier transactions.
inline UtxoBlock random_utxo_block(std::mt19937_64& rng, std::uint64_t block_number) {
    UtxoBlock block{block_number, {}};
    block.records.push_back({block_number, "coinbase" + std::to_string(block_number), std::nullopt});
    const auto txs = 1 + rng() % 30;
    std::vector<std::string> hashes;
    for (std::uint64_t tx = 0; tx < txs; ++tx) {
        auto hash = "t" + std::to_string(rng());
        const auto inputs = 1 + rng() % 3;
        for (std::uint64_t i = 0; i < inputs; ++i) {
            std::string spent =
                !hashes.empty() && rng() % 3 == 0 ? hashes[rng() % hashes.size()] : "ext" + std::to_string(rng());
            block.records.push_back({block_number, hash, spent});
        }
        hashes.push_back(std::move(hash));
    }
    return block;
}

}  // namespace chainconcur::test
