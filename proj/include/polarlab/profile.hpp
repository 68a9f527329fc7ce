#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/errors.hpp"

namespace polarlab {

// Code profile: block length, information/frozen partition and the
// reliability ordering it came from. Immutable after creation.
struct CodeProfile {
    int N = 0;
    int K = 0;
    std::vector<int> info_set;          // sorted ascending
    std::vector<int> frozen_set;        // complement, sorted ascending
    std::vector<int> reliability_order; // least to most reliable
    double design_snr_db = 0.0;
    bool external = false; // loaded/injected set, not GA-constructed

    int n() const { return log2_exact(static_cast<std::size_t>(N)); }

    bool is_info(int i) const
    {
        return std::binary_search(info_set.begin(), info_set.end(), i);
    }
};

namespace detail {

// Chung et al. approximation of phi(x) = 1 - E[tanh(L/2)], L ~ N(x, 2x).
// phi(x) = exp(-0.4527 x^0.86 + 0.0218)            for 0 < x < 10
//        = sqrt(pi/x) e^{-x/4} (1 - 10/(7x))        for x >= 10
inline double ga_phi(double x)
{
    if (x <= 0.0)
        return 1.0;
    if (x < 10.0)
        return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
    return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

inline double ga_phi_inv(double y)
{
    const double y10 = ga_phi(10.0);
    if (y >= y10)
        return std::pow((0.0218 - std::log(y)) / 0.4527, 1.0 / 0.86);
    // tail branch: phi is monotone decreasing, bisect
    double lo = 10.0, hi = 10.0;
    while (ga_phi(hi) > y)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (ga_phi(mid) > y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Per-bit-channel mean LLRs under density evolution with the Gaussian
// approximation. Stage t handles bit t of the index, MSB first; even child
// is the check-node (minus) branch, odd child the variable-node (plus) one.
inline std::vector<double> ga_mean_llrs(int N, double design_snr_db, double rate)
{
    const int n = log2_exact(static_cast<std::size_t>(N));
    const double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> m{2.0 / sigma2};
    for (int t = 0; t < n; ++t) {
        std::vector<double> next(m.size() * 2);
        for (std::size_t j = 0; j < m.size(); ++j) {
            double p = detail::ga_phi(m[j]);
            next[2 * j] = detail::ga_phi_inv(1.0 - (1.0 - p) * (1.0 - p));
            next[2 * j + 1] = 2.0 * m[j];
        }
        m = std::move(next);
    }
    return m;
}

inline CodeProfile construct_profile(int N, int K, double design_snr_db)
{
    log2_exact(static_cast<std::size_t>(N));
    if (K < 1 || K > N)
        throw ValidationError("K=" + std::to_string(K) + " out of range for N=" + std::to_string(N));

    CodeProfile p;
    p.N = N;
    p.K = K;
    p.design_snr_db = design_snr_db;

    std::vector<double> m = ga_mean_llrs(N, design_snr_db, double(K) / N);
    p.reliability_order.resize(N);
    std::iota(p.reliability_order.begin(), p.reliability_order.end(), 0);
    // least to most reliable; ties broken by lower index first
    std::sort(p.reliability_order.begin(), p.reliability_order.end(),
              [&](int a, int b) { return m[a] != m[b] ? m[a] < m[b] : a < b; });

    p.info_set.assign(p.reliability_order.end() - K, p.reliability_order.end());
    std::sort(p.info_set.begin(), p.info_set.end());
    p.frozen_set.assign(p.reliability_order.begin(), p.reliability_order.end() - K);
    std::sort(p.frozen_set.begin(), p.frozen_set.end());
    return p;
}

// Profile with an externally supplied information set (e.g. a published one).
inline CodeProfile make_external_profile(int N, std::vector<int> info_set)
{
    log2_exact(static_cast<std::size_t>(N));
    std::sort(info_set.begin(), info_set.end());
    if (info_set.empty() || info_set.front() < 0 || info_set.back() >= N)
        throw ValidationError("info set index out of range for N=" + std::to_string(N));
    if (std::adjacent_find(info_set.begin(), info_set.end()) != info_set.end())
        throw ValidationError("info set contains duplicate indices");

    CodeProfile p;
    p.N = N;
    p.K = static_cast<int>(info_set.size());
    p.info_set = std::move(info_set);
    p.external = true;
    for (int i = 0; i < N; ++i)
        if (!p.is_info(i))
            p.frozen_set.push_back(i);
    // frozen first, then info, index order inside each group
    p.reliability_order = p.frozen_set;
    p.reliability_order.insert(p.reliability_order.end(), p.info_set.begin(), p.info_set.end());
    return p;
}

// d_min of the (pre-transformed or plain) code: min over i in I of w(g_i).
inline int code_min_weight(const CodeProfile& p)
{
    if (p.info_set.empty())
        throw ValidationError("profile has an empty information set");
    const int n = p.n();
    int w = p.N;
    for (int i : p.info_set)
        w = std::min(w, row_weight(i, n));
    return w;
}

inline void save_profile(const CodeProfile& p, std::ostream& os)
{
    os << "N " << p.N << "\n";
    os << "K " << p.K << "\n";
    if (p.external)
        os << "design_snr_db external\n";
    else {
        std::ostringstream tmp;
        tmp.precision(17);
        tmp << p.design_snr_db;
        os << "design_snr_db " << tmp.str() << "\n";
    }
    os << "info_set";
    for (int i : p.info_set)
        os << ' ' << i;
    os << "\n";
}

inline void save_profile(const CodeProfile& p, const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot open '" + path + "' for writing");
    save_profile(p, f);
}

inline CodeProfile load_profile(std::istream& is)
{
    int N = -1, K = -1;
    double snr = 0.0;
    bool external = false;
    std::vector<int> info;
    bool have_info = false;

    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        const std::string at = " (line " + std::to_string(lineno) + ")";
        if (key == "N") {
            if (!(ls >> N))
                throw ParseError("malformed N" + at);
        } else if (key == "K") {
            if (!(ls >> K))
                throw ParseError("malformed K" + at);
        } else if (key == "design_snr_db") {
            std::string v;
            ls >> v;
            if (v == "external")
                external = true;
            else {
                try {
                    snr = std::stod(v);
                } catch (const std::exception&) {
                    throw ParseError("malformed design_snr_db" + at);
                }
            }
        } else if (key == "info_set") {
            int i;
            while (ls >> i)
                info.push_back(i);
            have_info = true;
        } else {
            throw ParseError("unknown key '" + key + "'" + at);
        }
    }
    if (N <= 0 || K <= 0 || !have_info)
        throw ParseError("profile file missing N, K or info_set");
    if (!is_pow2(static_cast<std::size_t>(N)))
        throw ValidationError("N=" + std::to_string(N) + " is not a power of two");
    if (static_cast<int>(info.size()) != K)
        throw ValidationError("info_set has " + std::to_string(info.size()) +
                              " entries, expected K=" + std::to_string(K));

    CodeProfile p = make_external_profile(N, std::move(info));
    p.external = external;
    p.design_snr_db = snr;
    if (!external) {
        // regenerate reliability order so a GA-built profile round-trips
        CodeProfile ga = construct_profile(N, K, snr);
        if (ga.info_set == p.info_set) {
            p.reliability_order = ga.reliability_order;
            p.external = false;
        } else {
            p.external = true;
        }
    }
    return p;
}

inline CodeProfile load_profile(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open profile file '" + path + "'");
    return load_profile(f);
}

} // namespace polarlab
