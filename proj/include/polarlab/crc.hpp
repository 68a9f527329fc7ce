#pragma once

#include <cstdint>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/profile.hpp"

namespace polarlab {

// Systematic CRC over F_2: the remainder of m(x) * x^r divided by g(x) is
// appended after the message bits.
struct CrcSpec {
    std::vector<std::uint8_t> g; // g_r ... g_0, MSB first, g_r = g_0 = 1

    int degree() const { return static_cast<int>(g.size()) - 1; }

    void validate() const
    {
        if (g.size() < 2 || g.front() != 1 || g.back() != 1)
            throw ValidationError("CRC generator must have leading and trailing 1");
    }

    // g(x) = x^11 + x^10 + x^9 + x^5 + 1
    static CrcSpec crc11()
    {
        return CrcSpec{{1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1}};
    }
};

inline std::vector<std::uint8_t> crc_remainder(const std::vector<std::uint8_t>& msg, const CrcSpec& crc)
{
    const int r = crc.degree();
    std::vector<std::uint8_t> reg(msg);
    reg.insert(reg.end(), static_cast<std::size_t>(r), 0);
    for (std::size_t i = 0; i + r < reg.size(); ++i)
        if (reg[i])
            for (int j = 0; j <= r; ++j)
                reg[i + j] ^= crc.g[j];
    return {reg.end() - r, reg.end()};
}

inline std::vector<std::uint8_t> crc_attach(const std::vector<std::uint8_t>& msg, const CrcSpec& crc)
{
    std::vector<std::uint8_t> out(msg);
    auto rem = crc_remainder(msg, crc);
    out.insert(out.end(), rem.begin(), rem.end());
    return out;
}

// bits = message followed by its CRC; passes iff the appended remainder matches.
inline bool crc_check(const std::vector<std::uint8_t>& bits, const CrcSpec& crc)
{
    const int r = crc.degree();
    if (static_cast<int>(bits.size()) < r)
        throw ValidationError("bit string shorter than the CRC");
    std::vector<std::uint8_t> msg(bits.begin(), bits.end() - r);
    auto rem = crc_remainder(msg, crc);
    return std::equal(rem.begin(), rem.end(), bits.end() - r);
}

// CRC-polar occupies the K + r most reliable bit-channels: K message bits in
// the lower-index part of the extended set, CRC bits in the upper part.
inline CodeProfile crc_extended_profile(const CodeProfile& base, const CrcSpec& crc)
{
    const int r = crc.degree();
    if (base.K + r > base.N)
        throw ValidationError("no room for CRC bits in the block");
    if (base.external)
        throw ValidationError("CRC extension needs a reliability-ordered profile");
    CodeProfile ext = construct_profile(base.N, base.K + r, base.design_snr_db);
    return ext;
}

} // namespace polarlab
