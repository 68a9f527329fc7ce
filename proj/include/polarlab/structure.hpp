#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "polarlab/bitblock.hpp"
#include "polarlab/errors.hpp"
#include "polarlab/profile.hpp"

namespace polarlab {

enum class Lemma1Class { incapable_no_frozen, incapable_all_singleton, capable };

inline const char* to_string(Lemma1Class c)
{
    switch (c) {
    case Lemma1Class::incapable_no_frozen: return "incapable_no_frozen";
    case Lemma1Class::incapable_all_singleton: return "incapable_all_singleton";
    case Lemma1Class::capable: return "capable";
    }
    return "?";
}

struct CosetReport {
    int leader = 0;
    std::vector<int> Ki;
    int size_log2 = 0; // |K_i|
    Lemma1Class lemma1_class = Lemma1Class::capable;
};

struct MinWeightSummary {
    int wmin = 0;
    std::vector<int> B;             // {i in I : w(g_i) = wmin}
    std::uint64_t A_wmin = 0;       // sum over B of 2^{|K_i|}
    std::vector<std::uint64_t> per_coset; // aligned with B
};

inline int compute_wmin(const CodeProfile& profile)
{
    return code_min_weight(profile); // throws on empty info set
}

// K_i = { j in I, j > i : |supp(bin(j)) \ supp(bin(i))| = 1 }
inline std::vector<int> compute_Ki(int i, const CodeProfile& profile)
{
    if (!profile.is_info(i))
        throw ValidationError("index " + std::to_string(i) + " is not in the information set");
    std::vector<int> out;
    const unsigned si = static_cast<unsigned>(i);
    for (int j : profile.info_set)
        if (j > i && std::popcount(static_cast<unsigned>(j) & ~si) == 1)
            out.push_back(j);
    return out;
}

// Exact error coefficient of the un-precoded polar code.
inline MinWeightSummary polar_Awmin_formula(const CodeProfile& profile)
{
    MinWeightSummary s;
    s.wmin = compute_wmin(profile);
    const int n = profile.n();
    for (int i : profile.info_set) {
        if (row_weight(i, n) != s.wmin)
            continue;
        s.B.push_back(i);
        std::uint64_t cnt = std::uint64_t{1} << compute_Ki(i, profile).size();
        s.per_coset.push_back(cnt);
        s.A_wmin += cnt;
    }
    return s;
}

inline Lemma1Class classify_coset(int i, const CodeProfile& profile)
{
    if (!profile.is_info(i))
        throw ValidationError("index " + std::to_string(i) + " is not in the information set");
    const unsigned si = static_cast<unsigned>(i);
    bool any_frozen = false;
    bool all_singleton = true;
    for (int f : profile.frozen_set) {
        if (f <= i)
            continue;
        any_frozen = true;
        if (std::popcount(static_cast<unsigned>(f) & ~si) != 1)
            all_singleton = false;
    }
    if (!any_frozen)
        return Lemma1Class::incapable_no_frozen;
    return all_singleton ? Lemma1Class::incapable_all_singleton : Lemma1Class::capable;
}

inline CosetReport coset_report(int i, const CodeProfile& profile)
{
    CosetReport r;
    r.leader = i;
    r.Ki = compute_Ki(i, profile);
    r.size_log2 = static_cast<int>(r.Ki.size());
    r.lemma1_class = classify_coset(i, profile);
    return r;
}

// One row per information index: i, |K_i|, Lemma-1 class, 2^{|K_i|}.
inline void write_coset_report(const CodeProfile& profile, std::ostream& os)
{
    os << "i |Ki| class 2^|Ki|\n";
    for (int i : profile.info_set) {
        CosetReport r = coset_report(i, profile);
        os << i << ' ' << r.size_log2 << ' ' << to_string(r.lemma1_class) << ' '
           << (std::uint64_t{1} << r.size_log2) << "\n";
    }
}

// Gaussian tail function via the complementary error function.
inline double q_function(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// Truncated union bound: A_wmin * Q( sqrt(2 * wmin * R * 10^{EbN0/10}) ).
inline double union_bound(double A_wmin, int wmin, double rate, double ebn0_db)
{
    if (A_wmin < 0.0)
        throw ValidationError("A_wmin must be nonnegative");
    if (A_wmin == 0.0)
        return 0.0;
    const double es = wmin * rate * std::pow(10.0, ebn0_db / 10.0);
    return A_wmin * q_function(std::sqrt(2.0 * es));
}

} // namespace polarlab
