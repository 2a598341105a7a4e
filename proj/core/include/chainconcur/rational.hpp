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
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace chainconcur {

//! Exact ratio used for every rate and speed-up. Values stay exact until rendered.
using Rational = boost::rational<std::int64_t>;

//! Smallest integer >= r.
std::int64_t ceil(const Rational& r);

//! Largest integer <= r.
std::int64_t floor(const Rational& r);

//! Renders r with exactly `digits` fractional digits, rounding half away from zero.
std::string to_decimal(const Rational& r, int digits = 6);

//! Parses a plain decimal literal ("3", "0.25", "-1.5") into an exact rational.
//! Throws DataError on anything else (exponents, empty strings, garbage).
Rational parse_decimal(std::string_view text);

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace chainconcur
