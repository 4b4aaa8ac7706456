#include <doctest.h>

#include <random>

#include "rampr/bigint.hpp"

using rampr::BigInt;

TEST_SUITE_BEGIN("bigint");

TEST_CASE("construction and printing") {
    CHECK(BigInt().to_string() == "0");
    CHECK(BigInt(42).to_string() == "42");
    CHECK(BigInt(-7).to_string() == "-7");
    CHECK(BigInt(INT64_MIN).to_string() == "-9223372036854775808");
    CHECK(BigInt::from_decimal("123456789012345678901234567890").to_string() ==
          "123456789012345678901234567890");
    CHECK(BigInt::from_decimal("-00012").to_string() == "-12");
    CHECK_THROWS_AS(BigInt::from_decimal("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_decimal(""), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with int64 on random small values") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 5000; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).to_i64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_i64() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_i64() == a * b);
        CHECK(BigInt::cmp(BigInt(a), BigInt(b)) == (a < b ? -1 : a > b ? 1 : 0));
    }
}

TEST_CASE("large multiplication and power") {
    BigInt p = BigInt::pow(BigInt(2), 128);
    CHECK(p.to_string() == "340282366920938463463374607431768211456");
    CHECK(p.bit_length() == 129);
    BigInt q = BigInt::pow(BigInt(10), 30);
    CHECK((q * q).to_string() == "1" + std::string(60, '0'));
    CHECK(BigInt::pow(BigInt(-3), 3).to_i64() == -27);
    CHECK(BigInt::pow(BigInt(7), 0).to_i64() == 1);
}

TEST_CASE("division") {
    auto [q, r] = BigInt::from_decimal("1000000000000000000000").divmod_u32(7);
    CHECK(q.to_string() == "142857142857142857142");
    CHECK(r == 6);
    CHECK(BigInt::from_decimal("123456789123456789").mod_u32(1000) == 789);

    BigInt a = BigInt::pow(BigInt(3), 100) + BigInt(17);
    BigInt d = BigInt::pow(BigInt(3), 40);
    auto [bq, br] = BigInt::divmod(a, d);
    CHECK((bq * d + br == a));
    CHECK(br < d);
    CHECK(br.sign() >= 0);

    CHECK_THROWS_AS(BigInt(10).divmod_u32(0), std::domain_error);
    CHECK_THROWS_AS(BigInt::divmod(BigInt(-10), BigInt(3)), std::domain_error);
}

TEST_CASE("divmod round-trips on random values") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        BigInt a = BigInt(rng() % 1000000007) * BigInt(rng() % 1000000007) + BigInt(rng() % 997);
        BigInt d = BigInt(1 + rng() % 1000000000);
        auto [q, r] = BigInt::divmod(a, d);
        CHECK(q * d + r == a);
        CHECK(r >= BigInt(0));
        CHECK(r < d);
    }
}

TEST_CASE("nth root") {
    CHECK(BigInt(1000000).nth_root(2).to_i64() == 1000);
    CHECK(BigInt(999999).nth_root(2).to_i64() == 999);
    CHECK(BigInt(8).nth_root(3).to_i64() == 2);
    CHECK(BigInt(7).nth_root(3).to_i64() == 1);
    BigInt big = BigInt::pow(BigInt(123456789), 5);
    CHECK(big.nth_root(5).to_i64() == 123456789);
    CHECK((big - BigInt(1)).nth_root(5).to_i64() == 123456788);
    CHECK((big + BigInt(1)).nth_root(5).to_i64() == 123456789);
}

TEST_CASE("fits and conversions") {
    CHECK(BigInt(0).fits_u64());
    CHECK(BigInt::from_decimal("18446744073709551615").fits_u64());
    CHECK(BigInt::from_decimal("18446744073709551615").to_u64() == UINT64_MAX);
    CHECK_FALSE(BigInt::from_decimal("18446744073709551616").fits_u64());
    CHECK_FALSE(BigInt(-1).fits_u64());
    CHECK(BigInt(-1).to_i64() == -1);
    CHECK_THROWS_AS(BigInt::from_decimal("9223372036854775808").to_i64(), std::overflow_error);
}

TEST_SUITE_END();
