#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/decode.hpp"
#include "polarlab/errors.hpp"

namespace polarlab {

// BI-AWGN with BPSK mapping b -> 1-2b. Eb/N0 convention includes the code
// rate: sigma = sqrt( 1 / (2 R 10^{EbN0/10}) ).
struct ChannelConfig {
    double ebn0_db = 0.0;
    double rate = 0.5;
    std::uint64_t seed = 0;

    double sigma() const
    {
        double s2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
        return std::sqrt(s2);
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Counter-based stream keyed by (seed, trial): draw i is a pure function of
// the key and i, so sharding trials across workers cannot perturb anything.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t trial)
        : key_(detail::splitmix64(seed ^ detail::splitmix64(trial ^ 0x517cc1b727220a95ULL)))
    {
    }

    std::uint64_t next_u64() { return detail::splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_); }

    std::uint8_t next_bit() { return static_cast<std::uint8_t>(next_u64() & 1); }

    // uniform in (0,1)
    double next_uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53; }

    // standard normal, Box-Muller
    double next_gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Modulate, add noise for this trial, return channel LLRs 2 y / sigma^2.
inline LlrBlock transmit(const BitBlock& x, const ChannelConfig& cfg, std::uint64_t trial)
{
    const double sigma = cfg.sigma();
    CounterRng rng(cfg.seed, trial);
    LlrBlock llr(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double y = (1.0 - 2.0 * x[j]) + sigma * rng.next_gaussian();
        llr[j] = 2.0 * y / (sigma * sigma);
    }
    return llr;
}

} // namespace polarlab
