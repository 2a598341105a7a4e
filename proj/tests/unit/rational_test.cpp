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

#include <gtest/gtest.h>

#include <chainconcur/errors.hpp>

namespace chainconcur {
namespace {

TEST(Rational, CeilAndFloor) {
    EXPECT_EQ(ceil(Rational{16, 8}), 2);
    EXPECT_EQ(ceil(Rational{17, 8}), 3);
    EXPECT_EQ(floor(Rational{17, 8}), 2);
    EXPECT_EQ(ceil(Rational{-3, 2}), -1);
    EXPECT_EQ(floor(Rational{-3, 2}), -2);
    EXPECT_EQ(ceil(Rational{0}), 0);
}

TEST(Rational, DecimalRendering) {
    EXPECT_EQ(to_decimal(Rational{2, 5}), "0.400000");
    EXPECT_EQ(to_decimal(Rational{7, 8}), "0.875000");
    EXPECT_EQ(to_decimal(Rational{9, 16}), "0.562500");
    EXPECT_EQ(to_decimal(Rational{5, 3}), "1.666667");
    EXPECT_EQ(to_decimal(Rational{16, 15}), "1.066667");
    EXPECT_EQ(to_decimal(Rational{6}), "6.000000");
    EXPECT_EQ(to_decimal(Rational{-1, 3}), "-0.333333");
    EXPECT_EQ(to_decimal(Rational{1, 2}, 0), "1");
    EXPECT_EQ(to_decimal(Rational{1, 3000000}), "0.000000");
}

TEST(Rational, ParseDecimal) {
    EXPECT_EQ(parse_decimal("0"), Rational{0});
    EXPECT_EQ(parse_decimal("2.5"), Rational(5, 2));
    EXPECT_EQ(parse_decimal("-0.125"), Rational(-1, 8));
    EXPECT_EQ(parse_decimal("1000"), Rational{1000});
    EXPECT_EQ(parse_decimal(".5"), Rational(1, 2));
    EXPECT_THROW(parse_decimal(""), DataError);
    EXPECT_THROW(parse_decimal("1e3"), DataError);
    EXPECT_THROW(parse_decimal("1.2.3"), DataError);
    EXPECT_THROW(parse_decimal("."), DataError);
    EXPECT_THROW(parse_decimal("abc"), DataError);
}

}  // namespace
}  // namespace chainconcur
