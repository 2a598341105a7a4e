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
#include <stdexcept>
#include <string>
#include <string_view>

namespace chainconcur {

//! Malformed input data. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::uint64_t line)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_{line} {}

    [[nodiscard]] std::uint64_t line() const noexcept { return line_; }

  private:
    std::uint64_t line_;
};

//! Input that parses but violates a domain precondition (bad rate, oversized oracle instance, ...).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! File could not be opened, read or written.
class IoError : public std::runtime_error {
  public:
    IoError(const std::string& message, std::string path)
        : std::runtime_error(message + ": " + path), path_{std::move(path)} {}

    [[nodiscard]] const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

}  // namespace chainconcur
