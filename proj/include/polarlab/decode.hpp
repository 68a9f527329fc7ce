#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/crc.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/precode.hpp"
#include "polarlab/profile.hpp"

namespace polarlab {

enum class Scheme { polar, pac, rpac, crc_polar };

inline const char* to_string(Scheme s)
{
    switch (s) {
    case Scheme::polar: return "polar";
    case Scheme::pac: return "pac";
    case Scheme::rpac: return "rpac";
    case Scheme::crc_polar: return "crc_polar";
    }
    return "?";
}

enum class MetricMode { exact, approximate };

// Channel LLRs lambda_j = log P(y_j|x_j=0) / P(y_j|x_j=1).
using LlrBlock = std::vector<double>;

struct DecoderConfig {
    Scheme scheme = Scheme::polar;
    int list_size = 1;
    MetricMode metric = MetricMode::exact;
    PrecoderSpec precoder;      // forward for pac, reverse for rpac
    std::optional<CrcSpec> crc; // crc_polar only
    bool min_sum = false;       // min-sum instead of exact boxplus in the SC recursion
};

// Penalty for deciding u_hat against llr. Exact: ln(1 + e^{-(1-2u)l});
// approximate: 0 on agreement with the hard decision, |l| otherwise.
inline double branch_metric(int u_hat, double llr, MetricMode mode)
{
    if (mode == MetricMode::approximate) {
        int hard = llr < 0.0 ? 1 : 0;
        return u_hat == hard ? 0.0 : std::abs(llr);
    }
    double a = (1 - 2 * u_hat) * llr;
    return a >= 0.0 ? std::log1p(std::exp(-a)) : -a + std::log1p(std::exp(a));
}

struct DecodeResult {
    struct Entry {
        BitBlock message; // v restricted to the information set, ascending index
        double metric = 0.0;
        bool crc_ok = false;
    };
    std::vector<Entry> ranked;
    std::uint64_t node_visits = 0; // f/g element operations in the SC recursion
};

// Minimum list size for LA-SCL: 2^nu with nu the number of information
// coordinates inside the initial look-ahead window [0, s].
inline int lascl_min_list(const CodeProfile& profile, const PrecoderSpec& spec)
{
    int hi = std::min(spec.degree(), profile.N - 1);
    int nu = 0;
    for (int i : profile.info_set)
        if (i <= hi)
            ++nu;
    return 1 << nu;
}

namespace detail {

// One SC process: layered LLRs and partial sums of the polar butterfly.
// Depth d covers segments of length N >> d; depth 0 is the channel, depth n
// the bit decisions. Flat storage, offsets precomputed by the engine.
struct ScPath {
    std::vector<double> llr;      // 2N-1 values
    std::vector<std::uint8_t> ps; // 2N-1 partial sums
    std::vector<std::uint8_t> v;  // committed v-coordinates
    std::vector<std::uint8_t> u;  // committed u-coordinates
    double metric = 0.0;
};

class ScEngine {
public:
    ScEngine(const CodeProfile& profile, const DecoderConfig& cfg)
        : profile_(profile), cfg_(cfg), N_(profile.N), n_(profile.n()), off_(n_ + 1)
    {
        off_[0] = 0;
        for (int d = 1; d <= n_; ++d)
            off_[d] = off_[d - 1] + (N_ >> (d - 1));
    }

    ScPath root(const LlrBlock& llr) const
    {
        if (static_cast<int>(llr.size()) != N_)
            throw ValidationError("LLR block length " + std::to_string(llr.size()) +
                                  " does not match N=" + std::to_string(N_));
        ScPath p;
        p.llr.assign(2 * N_ - 1, 0.0);
        std::copy(llr.begin(), llr.end(), p.llr.begin());
        p.ps.assign(2 * N_ - 1, 0);
        p.v.assign(N_, 0);
        p.u.assign(N_, 0);
        return p;
    }

    // Decision LLR for bit i; assumes bits 0..i-1 were committed on this path.
    double decision_llr(ScPath& p, int i)
    {
        if (i == 0) {
            for (int d = 1; d <= n_; ++d)
                f_step(p, d);
        } else {
            int d0 = n_ - std::countr_zero(static_cast<unsigned>(i));
            g_step(p, d0);
            for (int d = d0 + 1; d <= n_; ++d)
                f_step(p, d);
        }
        return p.llr[off_[n_]];
    }

    // Commit u_hat for bit i: store it and fold the partial sums upward.
    void commit(ScPath& p, int i, std::uint8_t u_hat)
    {
        p.u[i] = u_hat;
        p.ps[off_[n_]] = u_hat;
        int d = n_, idx = i;
        while (d > 0) {
            const int half = N_ >> d;
            std::uint8_t* child = &p.ps[off_[d]];
            std::uint8_t* parent = &p.ps[off_[d - 1]];
            if (idx & 1) {
                for (int j = 0; j < half; ++j) {
                    parent[j] ^= child[j];
                    parent[j + half] = child[j];
                }
                idx >>= 1;
                --d;
            } else {
                for (int j = 0; j < half; ++j)
                    parent[j] = child[j];
                break;
            }
        }
    }

    std::uint64_t node_visits() const { return visits_; }

private:
    static double boxplus_exact(double a, double b)
    {
        double m = std::copysign(std::min(std::abs(a), std::abs(b)), a * b);
        // correction term keeps the update exact: 2 atanh(tanh(a/2) tanh(b/2))
        return m + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
    }

    void f_step(ScPath& p, int d)
    {
        const int half = N_ >> d;
        const double* in = &p.llr[off_[d - 1]];
        double* out = &p.llr[off_[d]];
        if (cfg_.min_sum) {
            for (int j = 0; j < half; ++j)
                out[j] = std::copysign(std::min(std::abs(in[j]), std::abs(in[j + half])),
                                       in[j] * in[j + half]);
        } else {
            for (int j = 0; j < half; ++j)
                out[j] = boxplus_exact(in[j], in[j + half]);
        }
        visits_ += half;
    }

    void g_step(ScPath& p, int d)
    {
        const int half = N_ >> d;
        const double* in = &p.llr[off_[d - 1]];
        const std::uint8_t* left = &p.ps[off_[d - 1]];
        double* out = &p.llr[off_[d]];
        for (int j = 0; j < half; ++j)
            out[j] = in[j + half] + (1.0 - 2.0 * left[j]) * in[j];
        visits_ += half;
    }

    const CodeProfile& profile_;
    const DecoderConfig& cfg_;
    int N_, n_;
    std::vector<int> off_;
    std::uint64_t visits_ = 0;
};

struct Candidate {
    int parent;
    std::uint8_t v_bit;
    std::uint8_t u_bit;
    double metric;
};

// Keep the `keep` smallest metrics; stable, so lower candidate order (lower
// pre-existing path index, v=0 before v=1) survives ties.
inline std::vector<char> select_survivors(const std::vector<Candidate>& cands, int keep)
{
    std::vector<int> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cands[a].metric < cands[b].metric; });
    std::vector<char> keep_flag(cands.size(), 0);
    for (int r = 0; r < keep && r < static_cast<int>(order.size()); ++r)
        keep_flag[order[r]] = 1;
    return keep_flag;
}

// Replace `paths` by the surviving candidates, copying parents only when a
// parent contributes more than one survivor.
inline void materialize(std::vector<ScPath>& paths, const std::vector<Candidate>& cands,
                        const std::vector<char>& keep)
{
    std::vector<int> uses(paths.size(), 0);
    for (std::size_t c = 0; c < cands.size(); ++c)
        if (keep[c])
            ++uses[cands[c].parent];
    std::vector<ScPath> next;
    next.reserve(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c) {
        if (!keep[c])
            continue;
        int par = cands[c].parent;
        if (--uses[par] == 0)
            next.push_back(std::move(paths[par]));
        else
            next.push_back(paths[par]);
        next.back().metric = cands[c].metric;
    }
    paths = std::move(next);
}

// u_i under the forward convolution given the committed v-history.
inline std::uint8_t forward_u_bit(const std::vector<std::uint8_t>& v, int i, std::uint8_t v_i,
                                  const PrecoderSpec& spec)
{
    std::uint8_t b = v_i; // p_0 = 1
    for (int l = 1; l <= spec.degree() && l <= i; ++l)
        b ^= spec.p[l] & v[i - l];
    return b;
}

// u_i under the conditional reverse convolution; the window [v_i .. v_{i+s}]
// must already be committed on the path (v_j = 0 beyond N-1).
inline std::uint8_t reverse_u_bit(const std::vector<std::uint8_t>& v, int i, int n, int N,
                                  const PrecoderSpec& spec)
{
    if (!spec.reverse_active(i, n))
        return v[i];
    std::uint8_t b = 0;
    for (int l = 0; l <= spec.degree() && i + l < N; ++l)
        b ^= spec.p[l] & v[i + l];
    return b;
}

} // namespace detail

inline void validate_config(const CodeProfile& profile, const DecoderConfig& cfg)
{
    if (cfg.list_size < 1)
        throw ConfigError("list size must be at least 1");
    switch (cfg.scheme) {
    case Scheme::polar:
        if (cfg.precoder.kind != PrecoderKind::identity)
            throw ConfigError("polar decoding takes the identity precoder");
        break;
    case Scheme::pac:
        if (cfg.precoder.kind != PrecoderKind::forward)
            throw ConfigError("pac decoding needs a forward precoder");
        break;
    case Scheme::rpac: {
        if (cfg.precoder.kind != PrecoderKind::reverse)
            throw ConfigError("rpac decoding needs a reverse precoder");
        int lmin = lascl_min_list(profile, cfg.precoder);
        if (cfg.list_size < lmin)
            throw ConfigError("rpac needs list size >= L_min = " + std::to_string(lmin) +
                              " for this profile and polynomial");
        break;
    }
    case Scheme::crc_polar:
        if (cfg.precoder.kind != PrecoderKind::identity)
            throw ConfigError("crc_polar decoding takes the identity precoder");
        if (!cfg.crc)
            throw ConfigError("crc_polar decoding needs a CRC polynomial");
        break;
    }
}

namespace detail {

inline DecodeResult finalize(const CodeProfile& profile, const DecoderConfig& cfg,
                             std::vector<ScPath>& paths, std::uint64_t visits)
{
    std::vector<int> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return paths[a].metric < paths[b].metric; });

    DecodeResult res;
    res.node_visits = visits;
    for (int idx : order) {
        DecodeResult::Entry e;
        e.metric = paths[idx].metric;
        e.message.reserve(profile.info_set.size());
        for (int i : profile.info_set)
            e.message.push_back(paths[idx].v[i]);
        if (cfg.crc)
            e.crc_ok = crc_check(e.message, *cfg.crc);
        res.ranked.push_back(std::move(e));
    }
    // CRC-aided selection: best CRC-passing path first, metric order otherwise
    if (cfg.crc) {
        std::stable_sort(res.ranked.begin(), res.ranked.end(),
                         [](const auto& a, const auto& b) { return a.crc_ok > b.crc_ok; });
    }
    return res;
}

} // namespace detail

// Successive-cancellation list decoding for polar, PAC and CRC-polar codes.
// At each information index every path is duplicated with both bit values and
// the L smallest path metrics survive.
inline DecodeResult scl_decode(const LlrBlock& llr, const CodeProfile& profile,
                               const DecoderConfig& cfg)
{
    if (cfg.scheme == Scheme::rpac)
        throw ConfigError("rpac decoding uses lascl_decode");
    validate_config(profile, cfg);

    const int N = profile.N;
    const int L = cfg.list_size;
    detail::ScEngine engine(profile, cfg);
    std::vector<detail::ScPath> paths;
    paths.push_back(engine.root(llr));

    std::vector<double> lambda;
    std::vector<detail::Candidate> cands;
    for (int i = 0; i < N; ++i) {
        lambda.resize(paths.size());
        for (std::size_t p = 0; p < paths.size(); ++p)
            lambda[p] = engine.decision_llr(paths[p], i);

        cands.clear();
        const bool info = profile.is_info(i);
        for (std::size_t p = 0; p < paths.size(); ++p) {
            if (info) {
                for (std::uint8_t vb = 0; vb <= 1; ++vb) {
                    std::uint8_t ub = cfg.scheme == Scheme::pac
                                          ? detail::forward_u_bit(paths[p].v, i, vb, cfg.precoder)
                                          : vb;
                    cands.push_back({static_cast<int>(p), vb, ub,
                                     paths[p].metric + branch_metric(ub, lambda[p], cfg.metric)});
                }
            } else {
                std::uint8_t ub = cfg.scheme == Scheme::pac
                                      ? detail::forward_u_bit(paths[p].v, i, 0, cfg.precoder)
                                      : std::uint8_t{0};
                cands.push_back({static_cast<int>(p), 0, ub,
                                 paths[p].metric + branch_metric(ub, lambda[p], cfg.metric)});
            }
        }

        std::vector<char> keep(cands.size(), 1);
        if (static_cast<int>(cands.size()) > L)
            keep = detail::select_survivors(cands, L);

        std::vector<detail::Candidate> kept;
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (keep[c])
                kept.push_back(cands[c]);
        std::vector<char> all(kept.size(), 1);
        detail::materialize(paths, kept, all);
        for (std::size_t p = 0; p < paths.size(); ++p) {
            paths[p].v[i] = kept[p].v_bit;
            engine.commit(paths[p], i, kept[p].u_bit);
        }
    }
    return detail::finalize(profile, cfg, paths, engine.node_visits());
}

// Plain SC: the degenerate L = 1 list.
inline BitBlock sc_decode(const LlrBlock& llr, const CodeProfile& profile, DecoderConfig cfg)
{
    cfg.list_size = 1;
    return scl_decode(llr, profile, cfg).ranked.front().message;
}

// Look-ahead SCL for reverse-precoded codes. Twin trees: the main tree holds
// the distinct SC processes over u; the look-ahead tree tracks v-values s
// stages ahead so the reverse convolution window [v_i .. v_{i+s}] is
// committed by the time u_i is needed. Look-ahead paths that share a
// u-history share one SC process (they only differ in guesses the SC
// recursion has not consumed yet), which keeps the SC work at SCL order.
// Pruning drops look-ahead paths and orphaned SC processes in lockstep.
inline DecodeResult lascl_decode(const LlrBlock& llr, const CodeProfile& profile,
                                 const DecoderConfig& cfg)
{
    if (cfg.scheme != Scheme::rpac)
        throw ConfigError("lascl_decode handles the rpac scheme");
    validate_config(profile, cfg);

    const int N = profile.N;
    const int n = profile.n();
    const int L = cfg.list_size;
    const int s = cfg.precoder.degree();
    detail::ScEngine engine(profile, cfg);

    struct LaPath {
        int sc;                      // index of the SC process on the main tree
        std::vector<std::uint8_t> v; // committed look-ahead window
        double metric;
    };
    struct LaCand {
        int parent;
        std::uint8_t u_bit;
        double metric;
        std::vector<std::uint8_t> v;
    };

    std::vector<detail::ScPath> states;
    states.push_back(engine.root(llr));
    std::vector<LaPath> paths{{0, std::vector<std::uint8_t>(N, 0), 0.0}};

    // Initial window [0, min(s, N-1)]: every assignment of its information
    // coordinates becomes one look-ahead path (2^nu of them, nu <= log2 L).
    const int w_hi = std::min(s, N - 1);
    std::vector<int> init_info;
    for (int i : profile.info_set)
        if (i <= w_hi)
            init_info.push_back(i);

    std::vector<double> lambda;
    std::vector<LaCand> cands;
    for (int i = 0; i < N; ++i) {
        lambda.resize(states.size());
        for (std::size_t p = 0; p < states.size(); ++p)
            lambda[p] = engine.decision_llr(states[p], i);

        cands.clear();
        if (i == 0) {
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << init_info.size()); ++a) {
                std::vector<std::uint8_t> win(N, 0);
                for (std::size_t b = 0; b < init_info.size(); ++b)
                    win[init_info[b]] = (a >> b) & 1;
                std::uint8_t ub = detail::reverse_u_bit(win, 0, n, N, cfg.precoder);
                cands.push_back({0, ub, branch_metric(ub, lambda[0], cfg.metric), std::move(win)});
            }
        } else {
            const int j = i + s;
            const bool branch = j < N && profile.is_info(j);
            for (std::size_t p = 0; p < paths.size(); ++p) {
                for (std::uint8_t vj = 0; vj <= (branch ? 1 : 0); ++vj) {
                    std::vector<std::uint8_t> win = paths[p].v;
                    if (j < N)
                        win[j] = vj;
                    std::uint8_t ub = detail::reverse_u_bit(win, i, n, N, cfg.precoder);
                    cands.push_back({static_cast<int>(p), ub,
                                     paths[p].metric +
                                         branch_metric(ub, lambda[paths[p].sc], cfg.metric),
                                     std::move(win)});
                }
            }
        }

        std::vector<char> keep(cands.size(), 1);
        if (static_cast<int>(cands.size()) > L) {
            std::vector<int> order(cands.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return cands[a].metric < cands[b].metric; });
            std::fill(keep.begin(), keep.end(), 0);
            for (int r = 0; r < L; ++r)
                keep[order[r]] = 1;
        }

        // regroup: survivors with the same parent SC process and the same
        // u-decision keep sharing one process on the main tree
        std::vector<int> group(states.size() * 2, -1);
        std::vector<int> uses(states.size(), 0);
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (keep[c]) {
                int key = paths[cands[c].parent].sc * 2 + cands[c].u_bit;
                if (group[key] < 0)
                    ++uses[paths[cands[c].parent].sc];
                group[key] = 0; // mark; indices assigned in candidate order below
            }
        std::fill(group.begin(), group.end(), -1);

        std::vector<detail::ScPath> next_states;
        std::vector<LaPath> next_paths;
        next_states.reserve(L);
        next_paths.reserve(L);
        for (std::size_t c = 0; c < cands.size(); ++c) {
            if (!keep[c])
                continue;
            int par_sc = paths[cands[c].parent].sc;
            int key = par_sc * 2 + cands[c].u_bit;
            if (group[key] < 0) {
                group[key] = static_cast<int>(next_states.size());
                if (--uses[par_sc] == 0)
                    next_states.push_back(std::move(states[par_sc]));
                else
                    next_states.push_back(states[par_sc]);
                engine.commit(next_states.back(), i, cands[c].u_bit);
            }
            next_paths.push_back({group[key], std::move(cands[c].v), cands[c].metric});
        }
        states = std::move(next_states);
        paths = std::move(next_paths);
    }

    std::vector<detail::ScPath> out;
    out.reserve(paths.size());
    for (const auto& lp : paths) {
        detail::ScPath sp = states[lp.sc];
        sp.v = lp.v;
        sp.metric = lp.metric;
        out.push_back(std::move(sp));
    }
    return detail::finalize(profile, cfg, out, engine.node_visits());
}

inline DecodeResult decode(const LlrBlock& llr, const CodeProfile& profile, const DecoderConfig& cfg)
{
    return cfg.scheme == Scheme::rpac ? lascl_decode(llr, profile, cfg)
                                      : scl_decode(llr, profile, cfg);
}

// Metric obtained by force-feeding the true v-sequence through a single SC
// process; the genie reference for the list decoders' metric bookkeeping.
inline double teacher_forced_metric(const LlrBlock& llr, const CodeProfile& profile,
                                    const DecoderConfig& cfg, const BitBlock& v_true)
{
    const int N = profile.N;
    const int n = profile.n();
    if (static_cast<int>(v_true.size()) != N)
        throw ValidationError("v_true must have length N");
    detail::ScEngine engine(profile, cfg);
    detail::ScPath path = engine.root(llr);
    path.v = v_true;
    double metric = 0.0;
    for (int i = 0; i < N; ++i) {
        double lam = engine.decision_llr(path, i);
        std::uint8_t ub;
        switch (cfg.scheme) {
        case Scheme::pac: ub = detail::forward_u_bit(path.v, i, path.v[i], cfg.precoder); break;
        case Scheme::rpac: ub = detail::reverse_u_bit(path.v, i, n, N, cfg.precoder); break;
        default: ub = path.v[i]; break;
        }
        metric += branch_metric(ub, lam, cfg.metric);
        engine.commit(path, i, ub);
    }
    return metric;
}

} // namespace polarlab
