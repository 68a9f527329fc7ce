#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "polarlab/errors.hpp"

namespace polarlab {

// Length-N binary vector (N a power of two). Plays the roles of v, u and x
// along the encoding chain. Elements are 0/1 stored one per byte; all
// interfaces speak in index positions, i_0 being the least significant bit
// of an index.
using BitBlock = std::vector<std::uint8_t>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n)
{
    if (!is_pow2(n))
        throw ValidationError("length " + std::to_string(n) + " is not a power of two");
    return std::countr_zero(n);
}

// Hamming weight of row g_i of G_N, i.e. 2^{wt(bin(i))}.
inline int row_weight(int i, int n)
{
    if (i < 0 || i >= (1 << n))
        throw ValidationError("row index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
    return 1 << std::popcount(static_cast<unsigned>(i));
}

// Bit positions of bin(index), LSB first.
inline std::vector<int> binary_support(int index, int n)
{
    std::vector<int> s;
    for (int b = 0; b < n; ++b)
        if ((index >> b) & 1)
            s.push_back(b);
    return s;
}

struct IndexInfo {
    int index;
    std::vector<int> support_bits; // supp(bin(index)) as bit positions
    int weight;                    // w(g_index) = 2^{|support_bits|}

    static IndexInfo of(int index, int n)
    {
        IndexInfo info;
        info.index = index;
        info.support_bits = binary_support(index, n);
        info.weight = row_weight(index, n);
        return info;
    }
};

// x = u * G_N over F_2, with G_N the n-fold Kronecker power of the
// lower-triangular 2x2 kernel. Butterfly passes, O(N log N). G_N is its own
// inverse, so this also maps x back to u.
inline BitBlock polar_transform(BitBlock u)
{
    const std::size_t n = u.size();
    log2_exact(n); // validates
    for (std::size_t inc = 1; inc < n; inc <<= 1)
        for (std::size_t a = 0; a < n; a += 2 * inc)
            for (std::size_t j = 0; j < inc; ++j)
                u[a + j] ^= u[a + j + inc];
    return u;
}

// Positions where v is 1 (ascending). Empty for the all-zero vector.
inline std::vector<int> support(const BitBlock& v)
{
    std::vector<int> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            s.push_back(static_cast<int>(i));
    return s;
}

inline int min_support(const BitBlock& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            return static_cast<int>(i);
    return -1; // all-zero
}

inline int weight(const BitBlock& v)
{
    int w = 0;
    for (auto b : v)
        w += b;
    return w;
}

} // namespace polarlab
