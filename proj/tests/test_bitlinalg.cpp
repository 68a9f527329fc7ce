#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "polarlab/bitblock.hpp"

using namespace polarlab;
using test_helpers::random_block;
using test_helpers::unit_block;

TEST_CASE("polar transform on hand-computable inputs")
{
    CHECK(polar_transform({0, 1}) == BitBlock{1, 1});
    CHECK(polar_transform(BitBlock(64, 0)) == BitBlock(64, 0));
    // last row of G_64 is all ones
    CHECK(polar_transform(unit_block(64, 63)) == BitBlock(64, 1));
}

TEST_CASE("polar transform rejects non-power-of-two lengths")
{
    CHECK_THROWS_AS(polar_transform(BitBlock(3, 0)), ValidationError);
    CHECK_THROWS_AS(polar_transform(BitBlock(0)), ValidationError);
}

TEST_CASE("row weights")
{
    CHECK(row_weight(0, 6) == 1);
    CHECK(row_weight(63, 6) == 64);
    CHECK(row_weight(54, 6) == 16); // bin(54)=110110, weight 4
    CHECK_THROWS_AS(row_weight(64, 6), ValidationError);
}

TEST_CASE("row weight formula matches the expanded row for all N <= 256")
{
    for (int n = 1; n <= 8; ++n) {
        const int N = 1 << n;
        for (int i = 0; i < N; ++i) {
            BitBlock row = polar_transform(unit_block(N, i));
            CHECK(weight(row) == row_weight(i, n));
        }
    }
}

TEST_CASE("support")
{
    CHECK(support({0, 0, 1, 1}) == std::vector<int>{2, 3});
    CHECK(support(BitBlock(8, 0)).empty());
    CHECK(min_support(BitBlock(8, 0)) == -1);
    BitBlock g54 = polar_transform(unit_block(64, 54));
    CHECK(support(g54).size() == 16);
}

TEST_CASE("involution: transform is its own inverse")
{
    std::mt19937 rng(7);
    for (int n = 1; n <= 8; ++n) {
        const int N = 1 << n;
        for (int t = 0; t < 200; ++t) {
            BitBlock u = random_block(N, rng);
            CHECK(polar_transform(polar_transform(u)) == u);
        }
    }
}

TEST_CASE("linearity over random pairs")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 500; ++t) {
        BitBlock a = random_block(64, rng);
        BitBlock b = random_block(64, rng);
        BitBlock s(64);
        for (int i = 0; i < 64; ++i)
            s[i] = a[i] ^ b[i];
        BitBlock ta = polar_transform(a), tb = polar_transform(b);
        BitBlock txor(64);
        for (int i = 0; i < 64; ++i)
            txor[i] = ta[i] ^ tb[i];
        CHECK(polar_transform(s) == txor);
    }
}

TEST_CASE("coset weight lower bound: w(g_i + sum_h g_h) >= w(g_i)")
{
    std::mt19937 rng(13);
    for (int n = 2; n <= 6; ++n) {
        const int N = 1 << n;
        for (int t = 0; t < 400; ++t) {
            int i = int(rng() % (N - 1));
            BitBlock u(N, 0);
            u[i] = 1;
            for (int h = i + 1; h < N; ++h)
                u[h] = rng() & 1;
            CHECK(weight(polar_transform(u)) >= row_weight(i, n));
        }
    }
}

TEST_CASE("index info")
{
    auto info = IndexInfo::of(54, 6);
    CHECK(info.support_bits == std::vector<int>{1, 2, 4, 5});
    CHECK(info.weight == 16);
}
