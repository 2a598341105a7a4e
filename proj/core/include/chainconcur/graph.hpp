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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <chainconcur/ingest.hpp>

namespace chainconcur {

struct Edge {
    std::size_t from{0};
    std::size_t to{0};
};

//! Partitions nodes 0..node_count-1 into connected components of the undirected
//! closure of `edges`, by breadth-first search. Members of each component are
//! ascending and components are ordered by their smallest member.
std::vector<std::vector<std::size_t>> connected_components(std::size_t node_count, std::span<const Edge> edges);

//! A set of transactions that must run one after another.
struct TxComponent {
    //! Positions into the owning BlockGraph's transaction list, ascending.
    std::vector<std::size_t> members;
    //! Sum of member gas (account model); always 0 for UTXO blocks.
    std::uint64_t gas_total{0};

    [[nodiscard]] std::size_t tx_count() const noexcept { return members.size(); }
};

//! A (possibly internal) call from one address to another inside transaction tx_index.
struct AddressEdge {
    std::string from;
    std::optional<std::string> to;
    std::uint64_t tx_index{0};
};

//! Transaction dependency graph of one block plus its component decomposition.
//!
//! For UTXO blocks the transactions are the non-coinbase tx hashes in lexicographic
//! order and `spend_edges` point from the creating to the spending transaction.
//! For account blocks the transactions are the distinct tx indices in ascending
//! order and `address_edges` hold one entry per trace.
struct BlockGraph {
    std::uint64_t block_number{0};
    DataModel model{DataModel::kUtxo};

    std::vector<std::string> tx_hashes;
    std::vector<std::uint64_t> tx_indices;
    std::vector<std::uint64_t> tx_gas;  // aligned with tx_indices

    std::vector<TxComponent> components;

    std::vector<Edge> spend_edges;
    std::vector<AddressEdge> address_edges;

    //! UTXO only: see count_inblock_spent_txos().
    std::uint64_t inblock_spent_txos{0};

    [[nodiscard]] std::size_t tx_count() const noexcept {
        return model == DataModel::kUtxo ? tx_hashes.size() : tx_indices.size();
    }

    //! Index of the component with the most transactions; the earliest one wins ties.
    //! Empty when the block has no transactions.
    [[nodiscard]] std::optional<std::size_t> largest_component() const noexcept;

    [[nodiscard]] std::vector<std::size_t> component_sizes() const;
};

BlockGraph build_utxo_graph(const UtxoBlock& block);

//! Addresses touched by the same transaction are always joined, so every
//! transaction lands in exactly one component even if its traces are disjoint.
BlockGraph build_account_graph(const AccountBlock& block);

//! Edges on the longest directed chain of in-block spends; 0 without in-block spends.
//! Throws DataError for account graphs and for cyclic (corrupt) spend graphs.
std::uint64_t max_depth(const BlockGraph& graph);

//! Input rows whose spent_tx_hash names any transaction of the same block.
std::uint64_t count_inblock_spent_txos(const UtxoBlock& block);

}  // namespace chainconcur
