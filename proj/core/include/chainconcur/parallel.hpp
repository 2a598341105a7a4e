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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace chainconcur {

//! Evaluates fn(0..count-1) on up to `workers` threads and returns the results in
//! index order, so the output never depends on scheduling. If any call throws,
//! the exception of the lowest failing index is rethrown after all threads join.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);

    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto threads = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(count, 1));
    if (threads == 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(drain);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace chainconcur
