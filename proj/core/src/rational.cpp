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

#include <chainconcur/rational.hpp>

#include <cstdlib>

#include <chainconcur/errors.hpp>

namespace chainconcur {

std::int64_t floor(const Rational& r) {
    const auto q = r.numerator() / r.denominator();
    const auto rem = r.numerator() % r.denominator();
    // boost keeps the denominator positive, so only negative remainders need adjusting
    return rem < 0 ? q - 1 : q;
}

std::int64_t ceil(const Rational& r) {
    const auto q = r.numerator() / r.denominator();
    const auto rem = r.numerator() % r.denominator();
    return rem > 0 ? q + 1 : q;
}

std::string to_decimal(const Rational& r, int digits) {
    __int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    const bool negative = r.numerator() < 0;
    __int128 num = r.numerator();
    if (negative) num = -num;
    const __int128 den = r.denominator();

    __int128 scaled = (num * scale * 2 + den) / (den * 2);
    const __int128 whole = scaled / scale;
    __int128 frac = scaled % scale;

    std::string frac_digits(static_cast<std::size_t>(digits), '0');
    for (int i = digits - 1; i >= 0; --i) {
        frac_digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }

    std::string whole_digits;
    __int128 w = whole;
    do {
        whole_digits.insert(whole_digits.begin(), static_cast<char>('0' + static_cast<int>(w % 10)));
        w /= 10;
    } while (w > 0);

    std::string out;
    if (negative && scaled != 0) out.push_back('-');
    out += whole_digits;
    if (digits > 0) {
        out.push_back('.');
        out += frac_digits;
    }
    return out;
}

Rational parse_decimal(std::string_view text) {
    const std::string original{text};
    if (text.empty()) throw DataError{"empty decimal value"};

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (const char ch : text) {
        if (ch == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw DataError{"not a decimal number: '" + original + "'"};
        seen_digit = true;
        if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10)) {
            throw DataError{"decimal out of range: '" + original + "'"};
        }
        num = num * 10 + (ch - '0');
        if (seen_point) den *= 10;
    }
    if (!seen_digit) throw DataError{"not a decimal number: '" + original + "'"};
    return Rational{negative ? -num : num, den};
}

}  // namespace chainconcur
