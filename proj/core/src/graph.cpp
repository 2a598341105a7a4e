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

#include <chainconcur/graph.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <chainconcur/errors.hpp>

namespace chainconcur {

std::vector<std::vector<std::size_t>> connected_components(std::size_t node_count, std::span<const Edge> edges) {
    // CSR adjacency of the undirected closure
    std::vector<std::size_t> degree(node_count + 1, 0);
    for (const auto& e : edges) {
        ++degree[e.from + 1];
        ++degree[e.to + 1];
    }
    for (std::size_t i = 1; i <= node_count; ++i) degree[i] += degree[i - 1];
    std::vector<std::size_t> adjacency(degree.back());
    std::vector<std::size_t> fill(degree.begin(), degree.end() - 1);
    for (const auto& e : edges) {
        adjacency[fill[e.from]++] = e.to;
        adjacency[fill[e.to]++] = e.from;
    }

    std::vector<std::vector<std::size_t>> components;
    std::vector<bool> visited(node_count, false);
    std::deque<std::size_t> frontier;
    for (std::size_t start = 0; start < node_count; ++start) {
        if (visited[start]) continue;
        std::vector<std::size_t> members{start};
        visited[start] = true;
        frontier.push_back(start);
        while (!frontier.empty()) {
            const auto node = frontier.front();
            frontier.pop_front();
            for (auto k = degree[node]; k < degree[node + 1]; ++k) {
                const auto next = adjacency[k];
                if (visited[next]) continue;
                visited[next] = true;
                members.push_back(next);
                frontier.push_back(next);
            }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    return components;
}

std::optional<std::size_t> BlockGraph::largest_component() const noexcept {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (!best || components[i].tx_count() > components[*best].tx_count()) best = i;
    }
    return best;
}

std::vector<std::size_t> BlockGraph::component_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(components.size());
    for (const auto& c : components) sizes.push_back(c.tx_count());
    return sizes;
}

BlockGraph build_utxo_graph(const UtxoBlock& block) {
    BlockGraph graph;
    graph.block_number = block.block_number;
    graph.model = DataModel::kUtxo;

    // A transaction none of whose inputs spends a TXO is a coinbase.
    std::map<std::string_view, bool> spends_something;
    for (const auto& rec : block.records) {
        auto& flag = spends_something[rec.tx_hash];
        flag = flag || rec.spent_tx_hash.has_value();
    }
    std::unordered_map<std::string_view, std::size_t> position;
    for (const auto& [hash, spends] : spends_something) {
        if (!spends) continue;
        position.emplace(hash, graph.tx_hashes.size());
        graph.tx_hashes.emplace_back(hash);
    }

    for (const auto& rec : block.records) {
        if (!rec.spent_tx_hash) continue;
        const auto creator = position.find(*rec.spent_tx_hash);
        if (creator == position.end()) continue;
        const auto spender = position.find(rec.tx_hash);
        if (spender == position.end()) continue;
        graph.spend_edges.push_back(Edge{creator->second, spender->second});
    }

    graph.inblock_spent_txos = count_inblock_spent_txos(block);

    for (auto& members : connected_components(graph.tx_hashes.size(), graph.spend_edges)) {
        graph.components.push_back(TxComponent{std::move(members), 0});
    }
    return graph;
}

BlockGraph build_account_graph(const AccountBlock& block) {
    BlockGraph graph;
    graph.block_number = block.block_number;
    graph.model = DataModel::kAccount;

    std::unordered_map<std::string_view, std::size_t> address_id;
    auto intern = [&address_id](std::string_view addr) {
        return address_id.try_emplace(addr, address_id.size()).first->second;
    };

    // tx_index -> (first sender address id, gas of first row)
    std::map<std::uint64_t, std::pair<std::size_t, std::uint64_t>> txs;
    std::vector<Edge> edges;
    for (const auto& rec : block.records) {
        const auto from = intern(rec.from_addr);
        if (rec.to_addr) edges.push_back(Edge{from, intern(*rec.to_addr)});
        const auto [it, inserted] = txs.try_emplace(rec.tx_index, from, rec.gas_used);
        if (!inserted && it->second.first != from) edges.push_back(Edge{it->second.first, from});
        graph.address_edges.push_back(AddressEdge{rec.from_addr, rec.to_addr, rec.tx_index});
    }

    const auto address_components = connected_components(address_id.size(), edges);
    std::vector<std::size_t> label(address_id.size());
    for (std::size_t c = 0; c < address_components.size(); ++c) {
        for (const auto addr : address_components[c]) label[addr] = c;
    }

    // Transactions are visited in ascending tx_index order, so components come
    // out ordered by their smallest member.
    std::unordered_map<std::size_t, std::size_t> component_of_label;
    for (const auto& [tx_index, info] : txs) {
        const auto [sender, gas] = info;
        const auto pos = graph.tx_indices.size();
        graph.tx_indices.push_back(tx_index);
        graph.tx_gas.push_back(gas);

        const auto [slot, fresh] = component_of_label.try_emplace(label[sender], graph.components.size());
        if (fresh) graph.components.emplace_back();
        auto& component = graph.components[slot->second];
        component.members.push_back(pos);
        component.gas_total += gas;
    }
    return graph;
}

std::uint64_t max_depth(const BlockGraph& graph) {
    if (graph.model != DataModel::kUtxo) throw DataError{"max_depth is defined for UTXO graphs only"};

    const auto n = graph.tx_hashes.size();
    std::vector<std::vector<std::size_t>> successors(n);
    std::vector<std::size_t> in_degree(n, 0);
    for (const auto& e : graph.spend_edges) {
        successors[e.from].push_back(e.to);
        ++in_degree[e.to];
    }

    // Kahn's algorithm; depth[v] = edges on the longest chain ending in v
    std::vector<std::uint64_t> depth(n, 0);
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (in_degree[v] == 0) ready.push_back(v);
    }
    std::size_t processed = 0;
    std::uint64_t longest = 0;
    while (!ready.empty()) {
        const auto v = ready.back();
        ready.pop_back();
        ++processed;
        longest = std::max(longest, depth[v]);
        for (const auto w : successors[v]) {
            depth[w] = std::max(depth[w], depth[v] + 1);
            if (--in_degree[w] == 0) ready.push_back(w);
        }
    }
    if (processed != n) {
        throw DataError{"block " + std::to_string(graph.block_number) + ": cyclic in-block spends"};
    }
    return longest;
}

std::uint64_t count_inblock_spent_txos(const UtxoBlock& block) {
    std::unordered_set<std::string_view> in_block;
    for (const auto& rec : block.records) in_block.insert(rec.tx_hash);
    std::uint64_t count = 0;
    for (const auto& rec : block.records) {
        if (rec.spent_tx_hash && in_block.contains(*rec.spent_tx_hash)) ++count;
    }
    return count;
}

}  // namespace chainconcur
