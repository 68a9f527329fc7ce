#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/crc.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/precode.hpp"
#include "polarlab/profile.hpp"
#include "polarlab/structure.hpp"

namespace polarlab {

struct SpectrumReport {
    std::string scheme;
    int wmin_observed = -1; // -1: nothing found within the cap
    std::uint64_t A_wmin = 0;
    std::map<int, std::uint64_t> per_coset; // u-domain leader -> count
    std::string method;
    double search_cap = 0; // weight cap (support) or message count (message)
    std::vector<std::uint64_t> weight_hist; // message method: index = weight
};

inline std::string scheme_name(const PrecoderSpec& spec, bool with_crc = false)
{
    if (with_crc)
        return "crc_polar";
    switch (spec.kind) {
    case PrecoderKind::identity: return "polar";
    case PrecoderKind::forward: return "pac";
    case PrecoderKind::reverse: return "rpac";
    }
    return "?";
}

namespace detail {

// Rows of G_N packed into 64-bit words, row-major.
struct PackedRows {
    int N, words;
    std::vector<std::uint64_t> data;

    explicit PackedRows(int N_) : N(N_), words((N_ + 63) / 64), data(std::size_t(N_) * words, 0)
    {
        for (int i = 0; i < N; ++i) {
            BitBlock u(N, 0);
            u[i] = 1;
            BitBlock x = polar_transform(std::move(u));
            for (int j = 0; j < N; ++j)
                if (x[j])
                    data[std::size_t(i) * words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        }
    }

    const std::uint64_t* row(int i) const { return data.data() + std::size_t(i) * words; }
};

inline int popcount_words(const std::uint64_t* w, int words)
{
    int c = 0;
    for (int k = 0; k < words; ++k)
        c += std::popcount(w[k]);
    return c;
}

inline bool get_bit(const std::uint64_t* w, int i)
{
    return (w[i >> 6] >> (i & 63)) & 1;
}

// Membership test for the pre-transformed code: given u = x * G_N, recover v
// by back-substitution and fail as soon as a frozen coordinate is nonzero.
// Returns min supp(u)'s v on success via out parameter v (N bytes).
inline bool demap_is_codeword(const std::uint64_t* u, const CodeProfile& profile,
                              const PrecoderSpec& spec, const std::uint8_t* frozen_flag,
                              std::uint8_t* v)
{
    const int N = profile.N;
    const int s = spec.degree();
    const auto& p = spec.p;

    switch (spec.kind) {
    case PrecoderKind::identity:
        for (int i = 0; i < N; ++i) {
            v[i] = get_bit(u, i);
            if (v[i] && frozen_flag[i])
                return false;
        }
        return true;
    case PrecoderKind::forward:
        for (int i = 0; i < N; ++i) {
            std::uint8_t b = get_bit(u, i);
            for (int l = 1; l <= s && l <= i; ++l)
                b ^= p[l] & v[i - l];
            v[i] = b;
            if (b && frozen_flag[i])
                return false;
        }
        return true;
    case PrecoderKind::reverse: {
        const int n = profile.n();
        for (int i = N - 1; i >= 0; --i) {
            std::uint8_t b = get_bit(u, i);
            if (spec.reverse_active(i, n))
                for (int l = 1; l <= s && i + l < N; ++l)
                    b ^= p[l] & v[i + l];
            v[i] = b;
            if (b && frozen_flag[i])
                return false;
        }
        return true;
    }
    }
    return false;
}

inline bool extract_info_and_crc_check(const std::uint8_t* v, const CodeProfile& profile,
                                       const CrcSpec& crc)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(profile.info_set.size());
    for (int i : profile.info_set)
        bits.push_back(v[i]);
    return crc_check(bits, crc);
}

inline double binom(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

// Oracle 1: iterate every binary vector x with 1 <= w(x) <= w_cap in
// colexicographic support order; x is a codeword iff v = demap(x * G_N) is
// zero on every frozen coordinate (plus the CRC constraint for crc_polar).
// Stops at the smallest weight with a nonzero count.
inline SpectrumReport enumerate_by_support(const CodeProfile& profile, const PrecoderSpec& spec,
                                           int w_cap,
                                           const std::optional<CrcSpec>& crc = std::nullopt,
                                           double budget = 1e8)
{
    if (w_cap < 0)
        throw ValidationError("w_cap must be nonnegative");
    double patterns = 0;
    for (int w = 1; w <= w_cap; ++w)
        patterns += detail::binom(profile.N, w);
    if (patterns > budget)
        throw BudgetError("support enumeration needs about " + std::to_string(patterns) +
                          " patterns, over the budget of " + std::to_string(budget));

    SpectrumReport rep;
    rep.scheme = scheme_name(spec, crc.has_value());
    rep.method = "support_enum";
    rep.search_cap = w_cap;

    const int N = profile.N;
    detail::PackedRows rows(N);
    const int W = rows.words;
    std::vector<std::uint64_t> u(W);
    std::vector<std::uint8_t> v(N);
    std::vector<std::uint8_t> frozen_flag(N, 0);
    for (int f : profile.frozen_set)
        frozen_flag[f] = 1;

    for (int w = 1; w <= w_cap && rep.wmin_observed < 0; ++w) {
        std::vector<int> idx(w);
        // colex: advance the lowest position first
        for (int j = 0; j < w; ++j)
            idx[j] = j;
        while (true) {
            std::fill(u.begin(), u.end(), 0);
            for (int j = 0; j < w; ++j)
                for (int k = 0; k < W; ++k)
                    u[k] ^= rows.row(idx[j])[k];
            if (detail::demap_is_codeword(u.data(), profile, spec, frozen_flag.data(), v.data()) &&
                (!crc || detail::extract_info_and_crc_check(v.data(), profile, *crc))) {
                int leader = 0;
                while (leader < N && !detail::get_bit(u.data(), leader))
                    ++leader;
                ++rep.per_coset[leader];
                ++rep.A_wmin;
            }
            // next colex pattern
            int j = 0;
            while (j < w) {
                ++idx[j];
                if ((j + 1 < w && idx[j] < idx[j + 1]) || (j + 1 == w && idx[j] < N))
                    break;
                ++j;
            }
            if (j == w)
                break;
            for (int t = 0; t < j; ++t)
                idx[t] = t;
        }
        if (rep.A_wmin > 0)
            rep.wmin_observed = w;
    }
    return rep;
}

// Oracle 2: encode every nonzero message and tally the full weight
// distribution. Independent of the support route (no demapping involved).
inline SpectrumReport enumerate_by_message(const CodeProfile& profile, const PrecoderSpec& spec,
                                           const std::optional<CrcSpec>& crc = std::nullopt,
                                           int max_k = 24)
{
    const int r = crc ? crc->degree() : 0;
    const int k_msg = profile.K - r;
    if (k_msg < 1)
        throw ValidationError("profile too small for the CRC");
    if (k_msg > max_k)
        throw BudgetError("message enumeration needs 2^" + std::to_string(k_msg) +
                          " encodings, over the guard rail of 2^" + std::to_string(max_k));

    SpectrumReport rep;
    rep.scheme = scheme_name(spec, crc.has_value());
    rep.method = "message_enum";
    rep.search_cap = std::ldexp(1.0, k_msg);
    rep.weight_hist.assign(profile.N + 1, 0);

    const int N = profile.N;
    detail::PackedRows rows(N);
    const int W = rows.words;
    std::vector<std::uint64_t> x(W);

    for (std::uint64_t msg = 1; msg < (std::uint64_t{1} << k_msg); ++msg) {
        std::vector<std::uint8_t> bits(k_msg);
        for (int b = 0; b < k_msg; ++b)
            bits[b] = (msg >> b) & 1;
        if (crc)
            bits = crc_attach(bits, *crc);
        BitBlock vb(N, 0);
        for (std::size_t b = 0; b < bits.size(); ++b)
            vb[profile.info_set[b]] = bits[b];
        BitBlock u = apply_map(vb, spec, profile);
        std::fill(x.begin(), x.end(), 0);
        int leader = -1;
        for (int i = 0; i < N; ++i)
            if (u[i]) {
                if (leader < 0)
                    leader = i;
                for (int k = 0; k < W; ++k)
                    x[k] ^= rows.row(i)[k];
            }
        int w = detail::popcount_words(x.data(), W);
        ++rep.weight_hist[w];
        if (rep.wmin_observed < 0 || w < rep.wmin_observed) {
            rep.wmin_observed = w;
            rep.A_wmin = 0;
            rep.per_coset.clear();
        }
        if (w == rep.wmin_observed) {
            ++rep.A_wmin;
            ++rep.per_coset[leader];
        }
    }
    return rep;
}

struct SchemeComparison {
    struct Row {
        std::string name;
        SpectrumReport report;
        double reduction_pct = 0.0; // of A_wmin relative to the first scheme
    };
    std::vector<Row> rows;
};

inline SchemeComparison compare_schemes(const CodeProfile& profile,
                                        const std::vector<std::pair<std::string, PrecoderSpec>>& schemes,
                                        int w_cap, double budget = 1e8)
{
    SchemeComparison cmp;
    for (const auto& [name, spec] : schemes) {
        SchemeComparison::Row row;
        row.name = name;
        row.report = enumerate_by_support(profile, spec, w_cap, std::nullopt, budget);
        if (!cmp.rows.empty()) {
            double base = static_cast<double>(cmp.rows.front().report.A_wmin);
            if (base > 0)
                row.reduction_pct = 100.0 * (base - double(row.report.A_wmin)) / base;
        }
        cmp.rows.push_back(std::move(row));
    }
    return cmp;
}

inline void write_spectrum_csv(const SpectrumReport& rep, std::ostream& os)
{
    os << "scheme,wmin,A_wmin,method\n";
    os << rep.scheme << ',' << rep.wmin_observed << ',' << rep.A_wmin << ',' << rep.method << "\n";
}

inline void write_spectrum_text(const SpectrumReport& rep, std::ostream& os)
{
    os << "scheme " << rep.scheme << "\n";
    os << "method " << rep.method << " cap " << rep.search_cap << "\n";
    os << "wmin " << rep.wmin_observed << "\n";
    os << "A_wmin " << rep.A_wmin << "\n";
    for (const auto& [leader, count] : rep.per_coset)
        os << "coset " << leader << " " << count << "\n";
}

} // namespace polarlab
