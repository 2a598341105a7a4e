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

#include <chainconcur/ingest.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include <chainconcur/errors.hpp>

namespace chainconcur {

std::string_view to_string(DataModel model) {
    return model == DataModel::kUtxo ? "utxo" : "account";
}

std::string_view to_string(InputFormat format) {
    return format == InputFormat::kCsv ? "csv" : "jsonl";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

namespace {

    std::uint64_t parse_unsigned(std::string_view text, std::string_view column, std::uint64_t line) {
        if (!text.empty() && text.front() == '-') {
            throw ParseError{"negative " + std::string{column} + " '" + std::string{text} + "'", line};
        }
        std::uint64_t value{0};
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, value);
        if (text.empty() || ec != std::errc{} || ptr != end) {
            throw ParseError{"invalid " + std::string{column} + " '" + std::string{text} + "'", line};
        }
        return value;
    }

    std::optional<std::string> optional_field(std::string value) {
        if (value.empty()) return std::nullopt;
        return value;
    }

    //! Column positions resolved from a CSV header row.
    class CsvColumns {
      public:
        CsvColumns(std::string_view header_line, std::initializer_list<std::string_view> required,
                   std::uint64_t line) {
            const auto names = split_csv_line(header_line);
            for (const auto name : required) {
                const auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end()) {
                    throw ParseError{"header is missing column '" + std::string{name} + "'", line};
                }
                index_.emplace(std::string{name}, static_cast<std::size_t>(it - names.begin()));
            }
            width_ = names.size();
        }

        [[nodiscard]] const std::string& get(const std::vector<std::string>& row, std::string_view name) const {
            return row[index_.at(std::string{name})];
        }

        [[nodiscard]] std::size_t width() const { return width_; }

      private:
        std::unordered_map<std::string, std::size_t> index_;
        std::size_t width_{0};
    };

    std::uint64_t json_unsigned(const nlohmann::json& obj, const char* key, std::uint64_t line) {
        const auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) throw ParseError{std::string{"missing "} + key, line};
        if (it->is_number_unsigned()) return it->get<std::uint64_t>();
        if (it->is_number_integer()) {
            const auto v = it->get<std::int64_t>();
            if (v < 0) throw ParseError{std::string{"negative "} + key, line};
            return static_cast<std::uint64_t>(v);
        }
        if (it->is_string()) return parse_unsigned(it->get_ref<const std::string&>(), key, line);
        throw ParseError{std::string{"invalid "} + key, line};
    }

    std::optional<std::string> json_string(const nlohmann::json& obj, const char* key, std::uint64_t line) {
        const auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw ParseError{std::string{"field "} + key + " must be a string", line};
        return optional_field(it->get<std::string>());
    }

    nlohmann::json parse_json_line(const std::string& text, std::uint64_t line) {
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError{std::string{"malformed JSON: "} + e.what(), line};
        }
        if (!obj.is_object()) throw ParseError{"expected a JSON object", line};
        return obj;
    }

    UtxoInputRecord utxo_from_csv(const CsvColumns& cols, const std::vector<std::string>& row, std::uint64_t line) {
        UtxoInputRecord rec;
        rec.block_number = parse_unsigned(cols.get(row, "block_number"), "block_number", line);
        rec.tx_hash = cols.get(row, "tx_hash");
        if (rec.tx_hash.empty()) throw ParseError{"empty tx_hash", line};
        rec.spent_tx_hash = optional_field(cols.get(row, "spent_tx_hash"));
        return rec;
    }

    UtxoInputRecord utxo_from_json(const nlohmann::json& obj, std::uint64_t line) {
        UtxoInputRecord rec;
        rec.block_number = json_unsigned(obj, "block_number", line);
        auto hash = json_string(obj, "tx_hash", line);
        if (!hash) throw ParseError{"missing tx_hash", line};
        rec.tx_hash = std::move(*hash);
        rec.spent_tx_hash = json_string(obj, "spent_tx_hash", line);
        return rec;
    }

    TraceRecord trace_from_csv(const CsvColumns& cols, const std::vector<std::string>& row, std::uint64_t line) {
        TraceRecord rec;
        rec.block_number = parse_unsigned(cols.get(row, "block_number"), "block_number", line);
        rec.tx_index = parse_unsigned(cols.get(row, "tx_index"), "tx_index", line);
        rec.from_addr = cols.get(row, "from_addr");
        if (rec.from_addr.empty()) throw ParseError{"missing from_addr", line};
        rec.to_addr = optional_field(cols.get(row, "to_addr"));
        rec.gas_used = parse_unsigned(cols.get(row, "gas_used"), "gas_used", line);
        return rec;
    }

    TraceRecord trace_from_json(const nlohmann::json& obj, std::uint64_t line) {
        TraceRecord rec;
        rec.block_number = json_unsigned(obj, "block_number", line);
        rec.tx_index = json_unsigned(obj, "tx_index", line);
        auto from = json_string(obj, "from_addr", line);
        if (!from) throw ParseError{"missing from_addr", line};
        rec.from_addr = std::move(*from);
        rec.to_addr = json_string(obj, "to_addr", line);
        rec.gas_used = json_unsigned(obj, "gas_used", line);
        return rec;
    }

    template <typename Record>
    std::vector<BlockRecords<Record>> group_by_block(std::vector<Record> rows) {
        // BigQuery exports carry no ordering guarantee
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Record& a, const Record& b) { return a.block_number < b.block_number; });
        std::vector<BlockRecords<Record>> blocks;
        for (auto& row : rows) {
            if (blocks.empty() || blocks.back().block_number != row.block_number) {
                blocks.push_back(BlockRecords<Record>{row.block_number, {}});
            }
            blocks.back().records.push_back(std::move(row));
        }
        return blocks;
    }

    template <typename Record, typename FromCsv, typename FromJson>
    std::vector<BlockRecords<Record>> read_rows(std::istream& in, InputFormat format,
                                                std::initializer_list<std::string_view> columns, FromCsv from_csv,
                                                FromJson from_json) {
        std::vector<Record> rows;
        std::string text;
        std::uint64_t line = 0;

        if (format == InputFormat::kCsv) {
            std::optional<CsvColumns> cols;
            while (std::getline(in, text)) {
                ++line;
                if (text.empty() || text == "\r") continue;
                if (!cols) {
                    cols.emplace(text, columns, line);
                    continue;
                }
                const auto fields = split_csv_line(text);
                if (fields.size() != cols->width()) {
                    throw ParseError{"expected " + std::to_string(cols->width()) + " fields, got " +
                                         std::to_string(fields.size()),
                                     line};
                }
                rows.push_back(from_csv(*cols, fields, line));
            }
        } else {
            while (std::getline(in, text)) {
                ++line;
                if (text.empty() || text == "\r") continue;
                rows.push_back(from_json(parse_json_line(text, line), line));
            }
        }
        if (in.bad()) throw IoError{"read failure", "<stream>"};
        return group_by_block(std::move(rows));
    }

    std::ifstream open_input(const std::filesystem::path& path) {
        std::ifstream in{path};
        if (!in) throw IoError{"cannot open input file", path.string()};
        return in;
    }

    std::string quote_if_needed(const std::string& value) {
        if (value.find_first_of(",\"\n") == std::string::npos) return value;
        std::string out{"\""};
        for (const char ch : value) {
            if (ch == '"') out.push_back('"');
            out.push_back(ch);
        }
        out.push_back('"');
        return out;
    }

}  // namespace

std::vector<UtxoBlock> read_utxo(std::istream& in, InputFormat format) {
    return read_rows<UtxoInputRecord>(in, format, {"block_number", "tx_hash", "spent_tx_hash"}, utxo_from_csv,
                                      utxo_from_json);
}

std::vector<AccountBlock> read_account(std::istream& in, InputFormat format) {
    return read_rows<TraceRecord>(in, format, {"block_number", "tx_index", "from_addr", "to_addr", "gas_used"},
                                  trace_from_csv, trace_from_json);
}

std::vector<UtxoBlock> load_utxo(const std::filesystem::path& path, InputFormat format) {
    auto in = open_input(path);
    try {
        return read_utxo(in, format);
    } catch (const IoError&) {
        throw IoError{"read failure", path.string()};
    }
}

std::vector<AccountBlock> load_account(const std::filesystem::path& path, InputFormat format) {
    auto in = open_input(path);
    try {
        return read_account(in, format);
    } catch (const IoError&) {
        throw IoError{"read failure", path.string()};
    }
}

void write_utxo_csv(std::ostream& out, const std::vector<UtxoBlock>& blocks) {
    out << kUtxoCsvHeader << '\n';
    for (const auto& block : blocks) {
        for (const auto& rec : block.records) {
            out << rec.block_number << ',' << quote_if_needed(rec.tx_hash) << ','
                << quote_if_needed(rec.spent_tx_hash.value_or("")) << '\n';
        }
    }
}

void write_account_csv(std::ostream& out, const std::vector<AccountBlock>& blocks) {
    out << kAccountCsvHeader << '\n';
    for (const auto& block : blocks) {
        for (const auto& rec : block.records) {
            out << rec.block_number << ',' << rec.tx_index << ',' << quote_if_needed(rec.from_addr) << ','
                << quote_if_needed(rec.to_addr.value_or("")) << ',' << rec.gas_used << '\n';
        }
    }
}

void write_utxo_jsonl(std::ostream& out, const std::vector<UtxoBlock>& blocks) {
    for (const auto& block : blocks) {
        for (const auto& rec : block.records) {
            nlohmann::ordered_json obj;
            obj["block_number"] = rec.block_number;
            obj["tx_hash"] = rec.tx_hash;
            obj["spent_tx_hash"] = rec.spent_tx_hash ? nlohmann::ordered_json(*rec.spent_tx_hash) : nlohmann::ordered_json(nullptr);
            out << obj.dump() << '\n';
        }
    }
}

void write_account_jsonl(std::ostream& out, const std::vector<AccountBlock>& blocks) {
    for (const auto& block : blocks) {
        for (const auto& rec : block.records) {
            nlohmann::ordered_json obj;
            obj["block_number"] = rec.block_number;
            obj["tx_index"] = rec.tx_index;
            obj["from_addr"] = rec.from_addr;
            obj["to_addr"] = rec.to_addr ? nlohmann::ordered_json(*rec.to_addr) : nlohmann::ordered_json(nullptr);
            obj["gas_used"] = rec.gas_used;
            out << obj.dump() << '\n';
        }
    }
}

}  // namespace chainconcur
