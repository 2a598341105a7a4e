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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chainconcur {

enum class DataModel { kUtxo, kAccount };

enum class InputFormat { kCsv, kJsonl };

std::string_view to_string(DataModel model);
std::string_view to_string(InputFormat format);

//! One input TXO of one transaction. spent_tx_hash is empty for coinbase inputs.
struct UtxoInputRecord {
    std::uint64_t block_number{0};
    std::string tx_hash;
    std::optional<std::string> spent_tx_hash;

    friend bool operator==(const UtxoInputRecord&, const UtxoInputRecord&) = default;
};

//! One trace (regular or internal call). to_addr is empty for contract creations.
//! gas_used is the receipt gas of the enclosing transaction, repeated on every trace row.
struct TraceRecord {
    std::uint64_t block_number{0};
    std::uint64_t tx_index{0};
    std::string from_addr;
    std::optional<std::string> to_addr;
    std::uint64_t gas_used{0};

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

//! All rows of a single block, in original file order.
template <typename Record>
struct BlockRecords {
    std::uint64_t block_number{0};
    std::vector<Record> records;

    friend bool operator==(const BlockRecords&, const BlockRecords&) = default;
};

using UtxoBlock = BlockRecords<UtxoInputRecord>;
using AccountBlock = BlockRecords<TraceRecord>;

inline constexpr std::string_view kUtxoCsvHeader{"block_number,tx_hash,spent_tx_hash"};
inline constexpr std::string_view kAccountCsvHeader{"block_number,tx_index,from_addr,to_addr,gas_used"};

//! Parses a UTXO input dump and groups it by block in ascending block order.
//! Rows of an unsorted file are stably sorted by block_number first, so the
//! whole file is held in memory. Throws IoError / ParseError.
std::vector<UtxoBlock> load_utxo(const std::filesystem::path& path, InputFormat format);
std::vector<AccountBlock> load_account(const std::filesystem::path& path, InputFormat format);

// Stream variants of the loaders above.
std::vector<UtxoBlock> read_utxo(std::istream& in, InputFormat format);
std::vector<AccountBlock> read_account(std::istream& in, InputFormat format);

void write_utxo_csv(std::ostream& out, const std::vector<UtxoBlock>& blocks);
void write_account_csv(std::ostream& out, const std::vector<AccountBlock>& blocks);
void write_utxo_jsonl(std::ostream& out, const std::vector<UtxoBlock>& blocks);
void write_account_jsonl(std::ostream& out, const std::vector<AccountBlock>& blocks);

//! Splits one CSV line into fields. Handles double-quoted fields with "" escapes
//! and strips a trailing carriage return.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace chainconcur
