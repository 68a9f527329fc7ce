#pragma once

#include <random>
#include <vector>

#include "polarlab/precode.hpp"
#include "polarlab/profile.hpp"

namespace test_helpers {

// The (64,14) profile of the worked example, published information set.
inline polarlab::CodeProfile example1_profile()
{
    std::vector<int> info{31, 46, 47, 51, 53, 54, 55, 57, 58, 59, 60, 61, 62, 63};
    return polarlab::make_external_profile(64, info);
}

inline polarlab::BitBlock random_block(int n, std::mt19937& rng)
{
    polarlab::BitBlock b(n);
    for (auto& x : b)
        x = rng() & 1;
    return b;
}

inline polarlab::BitBlock unit_block(int n, int pos)
{
    polarlab::BitBlock b(n, 0);
    b[pos] = 1;
    return b;
}

} // namespace test_helpers
