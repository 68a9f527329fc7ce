#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "polarlab/channel.hpp"
#include "polarlab/crc.hpp"
#include "polarlab/decode.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/precode.hpp"
#include "polarlab/profile.hpp"
#include "polarlab/spectrum.hpp"
#include "polarlab/structure.hpp"

namespace polarlab {

struct StopRule {
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 1000000;
};

struct BlerPoint {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t block_errors = 0;
    double bler = 0.0;
    double elapsed_s = 0.0;
    std::optional<double> union_bound;
};

// Message length carried per block: K, minus the CRC bits for crc_polar.
inline int message_length(const CodeProfile& profile, const DecoderConfig& cfg)
{
    int r = cfg.crc ? cfg.crc->degree() : 0;
    if (profile.K <= r)
        throw ValidationError("profile too small for the CRC");
    return profile.K - r;
}

// Full encoding chain x = map(v) * G_N for a message of message_length bits.
inline BitBlock encode_message(const CodeProfile& profile, const DecoderConfig& cfg,
                               const std::vector<std::uint8_t>& msg)
{
    std::vector<std::uint8_t> bits = cfg.crc ? crc_attach(msg, *cfg.crc) : msg;
    if (bits.size() != profile.info_set.size())
        throw ValidationError("message length does not match the information set");
    BitBlock v(profile.N, 0);
    for (std::size_t b = 0; b < bits.size(); ++b)
        v[profile.info_set[b]] = bits[b];
    return polar_transform(apply_map(v, cfg.precoder, profile));
}

// Monte Carlo BLER sweep. Per SNR point: random-message encode -> transmit ->
// decode until min_errors block errors or max_frames. A block error is any
// rank-1 message mismatch (decoder aliasing counts). Deterministic in
// (seed, configs): trial t of point k uses the counter streams for
// (seed, point, t) only.
inline std::vector<BlerPoint> run_bler(const CodeProfile& profile, const DecoderConfig& cfg,
                                       const std::vector<double>& snr_list, const StopRule& stop,
                                       std::uint64_t seed)
{
    if (stop.min_errors < 1)
        throw ValidationError("min_errors must be at least 1");
    validate_config(profile, cfg);
    const int k_msg = message_length(profile, cfg);
    const double rate = static_cast<double>(k_msg) / profile.N;

    std::vector<BlerPoint> points;
    for (std::size_t pt = 0; pt < snr_list.size(); ++pt) {
        ChannelConfig chan;
        chan.ebn0_db = snr_list[pt];
        chan.rate = rate;
        chan.seed = detail::splitmix64(seed ^ (0xc2b2ae3d27d4eb4fULL * (pt + 1)));

        BlerPoint p;
        p.ebn0_db = snr_list[pt];
        auto t0 = std::chrono::steady_clock::now();
        std::vector<std::uint8_t> msg(k_msg);
        while (p.block_errors < stop.min_errors && p.frames < stop.max_frames) {
            const std::uint64_t trial = p.frames;
            CounterRng msg_rng(chan.seed ^ 0xa0761d6478bd642fULL, trial);
            for (int b = 0; b < k_msg; ++b)
                msg[b] = msg_rng.next_bit();
            BitBlock x = encode_message(profile, cfg, msg);
            LlrBlock llr = transmit(x, chan, trial);
            DecodeResult res = decode(llr, profile, cfg);
            const BitBlock& est = res.ranked.front().message;
            bool err = !std::equal(msg.begin(), msg.end(), est.begin());
            p.block_errors += err;
            ++p.frames;
        }
        p.bler = p.frames ? static_cast<double>(p.block_errors) / p.frames : 0.0;
        p.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        points.push_back(p);
    }
    return points;
}

// Append the truncated-union-bound column from a spectrum of the same scheme.
inline void overlay_union_bound(std::vector<BlerPoint>& points, const SpectrumReport& spectrum,
                                const CodeProfile& profile, const DecoderConfig& cfg)
{
    if (spectrum.scheme != std::string(to_string(cfg.scheme)))
        throw ValidationError("spectrum scheme '" + spectrum.scheme +
                              "' does not match decoder scheme '" + to_string(cfg.scheme) + "'");
    const double rate = static_cast<double>(message_length(profile, cfg)) / profile.N;
    for (auto& p : points)
        p.union_bound = union_bound(static_cast<double>(spectrum.A_wmin),
                                    std::max(spectrum.wmin_observed, 0), rate, p.ebn0_db);
}

inline void write_bler_csv(const std::vector<BlerPoint>& points, std::ostream& os)
{
    os << "ebn0_db,frames,block_errors,bler,union_bound,elapsed_s\n";
    for (const auto& p : points) {
        os << p.ebn0_db << ',' << p.frames << ',' << p.block_errors << ',' << p.bler << ',';
        if (p.union_bound)
            os << *p.union_bound;
        else
            os << 0;
        os << ',' << p.elapsed_s << "\n";
    }
}

} // namespace polarlab
