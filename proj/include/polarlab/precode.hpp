#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/profile.hpp"

namespace polarlab {

enum class PrecoderKind { identity, forward, reverse };

inline const char* to_string(PrecoderKind k)
{
    switch (k) {
    case PrecoderKind::identity: return "identity";
    case PrecoderKind::forward: return "forward";
    case PrecoderKind::reverse: return "reverse";
    }
    return "?";
}

// Convolutional pre-transform v -> u. Forward precoding reads past
// v-coordinates (PAC), reverse precoding reads future ones (RPAC) subject to
// the per-index row-weight condition. p_0 = p_s = 1 by convention.
struct PrecoderSpec {
    PrecoderKind kind = PrecoderKind::identity;
    std::vector<std::uint8_t> p{1};
    int wmin_threshold = 0; // reverse kind only: d_min of the code

    int degree() const { return static_cast<int>(p.size()) - 1; }

    static PrecoderSpec identity() { return {}; }

    static PrecoderSpec forward(std::vector<std::uint8_t> poly)
    {
        PrecoderSpec s{PrecoderKind::forward, std::move(poly)};
        s.validate();
        return s;
    }

    static PrecoderSpec reverse(std::vector<std::uint8_t> poly, int wmin_threshold)
    {
        PrecoderSpec s{PrecoderKind::reverse, std::move(poly), wmin_threshold};
        s.validate();
        return s;
    }

    static PrecoderSpec reverse(std::vector<std::uint8_t> poly, const CodeProfile& profile)
    {
        return reverse(std::move(poly), code_min_weight(profile));
    }

    void validate() const
    {
        if (p.empty() || p.front() != 1 || p.back() != 1)
            throw ValidationError("precoder polynomial must have p_0 = p_s = 1");
        for (auto c : p)
            if (c > 1)
                throw ValidationError("precoder polynomial coefficients must be 0/1");
        if (kind == PrecoderKind::identity && p.size() != 1)
            throw ValidationError("identity precoder must have p = [1]");
    }

    // True when the reverse convolution applies at output index i (Eq.-style
    // conditional rule: only rows at least as heavy as d_min take part).
    bool reverse_active(int i, int n) const
    {
        return row_weight(i, n) >= wmin_threshold;
    }
};

// Comma-separated binary coefficients, p_0 first: "1,1,0,1,1,0,1,1,0,1".
inline std::vector<std::uint8_t> parse_poly(const std::string& text)
{
    std::vector<std::uint8_t> p;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok == "0")
            p.push_back(0);
        else if (tok == "1")
            p.push_back(1);
        else
            throw ParseError("bad polynomial coefficient '" + tok + "'");
    }
    if (p.empty())
        throw ParseError("empty polynomial");
    return p;
}

// Named presets used throughout the experiments.
inline std::vector<std::uint8_t> poly_pac10() { return {1, 1, 0, 1, 1, 0, 1, 1, 0, 1}; }
inline std::vector<std::uint8_t> poly_rpac10() { return poly_pac10(); }
inline std::vector<std::uint8_t> poly_rpac7() { return {1, 1, 0, 1, 1, 0, 1}; }

// u_i = sum_l p_l v_{i-l}, v_j = 0 for j < 0.
inline BitBlock forward_map(const BitBlock& v, const PrecoderSpec& spec)
{
    if (spec.kind != PrecoderKind::forward)
        throw ValidationError("forward_map requires a forward precoder");
    const int N = static_cast<int>(v.size());
    const int s = spec.degree();
    BitBlock u(N, 0);
    for (int i = 0; i < N; ++i) {
        std::uint8_t b = 0;
        for (int l = 0; l <= s && l <= i; ++l)
            b ^= spec.p[l] & v[i - l];
        u[i] = b;
    }
    return u;
}

// u_i = sum_l p_l v_{i+l} when w(g_i) >= wmin, else u_i = v_i; v_j = 0 for j >= N.
inline BitBlock reverse_map(const BitBlock& v, const PrecoderSpec& spec, const CodeProfile& profile)
{
    if (spec.kind != PrecoderKind::reverse)
        throw ValidationError("reverse_map requires a reverse precoder");
    if (spec.wmin_threshold != code_min_weight(profile))
        throw ValidationError("precoder wmin_threshold " + std::to_string(spec.wmin_threshold) +
                              " inconsistent with profile d_min " +
                              std::to_string(code_min_weight(profile)));
    const int N = static_cast<int>(v.size());
    const int n = log2_exact(v.size());
    const int s = spec.degree();
    BitBlock u(N, 0);
    for (int i = 0; i < N; ++i) {
        if (spec.reverse_active(i, n)) {
            std::uint8_t b = 0;
            for (int l = 0; l <= s && i + l < N; ++l)
                b ^= spec.p[l] & v[i + l];
            u[i] = b;
        } else {
            u[i] = v[i];
        }
    }
    return u;
}

inline BitBlock apply_map(const BitBlock& v, const PrecoderSpec& spec, const CodeProfile& profile)
{
    switch (spec.kind) {
    case PrecoderKind::identity: return v;
    case PrecoderKind::forward: return forward_map(v, spec);
    case PrecoderKind::reverse: return reverse_map(v, spec, profile);
    }
    throw ValidationError("unknown precoder kind");
}

// Exact inverse of the pre-transform; P and P' are unit-triangular so plain
// back-substitution recovers v bit by bit.
inline BitBlock demap(const BitBlock& u, const PrecoderSpec& spec, const CodeProfile& profile)
{
    const int N = static_cast<int>(u.size());
    const int s = spec.degree();
    BitBlock v(N, 0);
    switch (spec.kind) {
    case PrecoderKind::identity:
        return u;
    case PrecoderKind::forward:
        for (int i = 0; i < N; ++i) {
            std::uint8_t b = u[i];
            for (int l = 1; l <= s && l <= i; ++l)
                b ^= spec.p[l] & v[i - l];
            v[i] = b;
        }
        return v;
    case PrecoderKind::reverse: {
        const int n = log2_exact(u.size());
        for (int i = N - 1; i >= 0; --i) {
            std::uint8_t b = u[i];
            if (spec.reverse_active(i, n))
                for (int l = 1; l <= s && i + l < N; ++l)
                    b ^= spec.p[l] & v[i + l];
            v[i] = b;
        }
        return v;
    }
    }
    throw ValidationError("unknown precoder kind");
}

// Explicit N x N matrix M with u = v * M; row r holds the contribution of
// v_r to each u_i. Unit diagonal for all kinds.
inline std::vector<BitBlock> precoder_matrix(const PrecoderSpec& spec, const CodeProfile& profile, int N)
{
    std::vector<BitBlock> m(N, BitBlock(N, 0));
    for (int r = 0; r < N; ++r) {
        BitBlock v(N, 0);
        v[r] = 1;
        BitBlock u = apply_map(v, spec, profile);
        for (int c = 0; c < N; ++c)
            m[r][c] = u[c];
    }
    return m;
}

} // namespace polarlab
