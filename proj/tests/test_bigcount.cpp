#include <doctest.h>

#include "dedekind/bigcount.hpp"

using namespace dedekind;

TEST_CASE("decimal round trips, including values past 128 bits") {
    const char* samples[] = {
        "0", "1", "7828354", "2414682040998", "56130437228687557907788",
        "286386577668298411128469151667598498812366"};
    for (const char* s : samples) CHECK(to_decimal(bigcount_from_decimal(s)) == s);
    CHECK_THROWS_AS(bigcount_from_decimal(""), invalid_input_error);
    CHECK_THROWS_AS(bigcount_from_decimal("12x"), invalid_input_error);
    CHECK_THROWS_AS(bigcount_from_decimal("-5"), invalid_input_error);
}

TEST_CASE("u128 conversion covers both halves") {
    CHECK(to_decimal(bigcount_from_u128(0)) == "0");
    CHECK(to_decimal(bigcount_from_u128((u128{1} << 64) + 5)) == "18446744073709551621");
    CHECK(to_decimal(bigcount_from_u128(u128{1} << 127)) ==
          "170141183460469231731687303715884105728");
}

TEST_CASE("pow2") {
    CHECK(bigcount_pow2(0) == 1);
    CHECK(bigcount_pow2(10) == 1024);
    CHECK(to_decimal(bigcount_pow2(130)) == "1361129467683753853853498429727072845824");
}

TEST_CASE("checked multiply flags overflow") {
    u128 out = 0;
    CHECK(checked_mul_u128(u128{1} << 60, u128{1} << 60, &out));
    CHECK(out == u128{1} << 120);
    CHECK_FALSE(checked_mul_u128(u128{1} << 70, u128{1} << 70, &out));
}

TEST_CASE("accumulator promotes exactly on overflow") {
    SumAccumulator acc;
    u128 big = u128{1} << 127;
    for (int i = 0; i < 6; ++i) acc.add(big);
    CHECK(acc.spilled());
    // 6 * 2^127 = 3 * 2^128
    CHECK(to_decimal(acc.total()) == to_decimal(bigcount_pow2(128) * 3));
    acc.add(bigcount_from_decimal("56130437228687557907788"));
    CHECK(to_decimal(acc.total()) ==
          to_decimal(bigcount_pow2(128) * 3 + bigcount_from_decimal("56130437228687557907788")));
}

TEST_CASE("accumulator merge matches plain summation") {
    SumAccumulator a, b;
    for (int i = 1; i <= 1000; ++i) a.add(static_cast<u128>(i));
    for (int i = 1; i <= 5; ++i) b.add(u128{1} << 126);
    a.add(b);
    BigCount expected = BigCount(1000) * 1001 / 2 + bigcount_pow2(126) * 5;
    CHECK(a.total() == expected);
}
