#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "polarlab/structure.hpp"

using namespace polarlab;
using test_helpers::example1_profile;

namespace {

// Independent Q-function: adaptive Simpson quadrature of the normal density
// over [x, x+40].
double simpson(double a, double b, double fa, double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double q_oracle_rec(double a, double b, double fa, double fm, double fb, double whole, int depth)
{
    auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = pdf(lm), frm = pdf(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    if (depth > 40 || std::abs(left + right - whole) < 1e-15 * std::abs(left + right) + 1e-300)
        return left + right;
    return q_oracle_rec(a, m, fa, flm, fm, left, depth + 1) +
           q_oracle_rec(m, b, fm, frm, fb, right, depth + 1);
}

double q_oracle(double x)
{
    auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    double a = x, b = x + 40.0;
    double m = 0.5 * (a + b);
    return q_oracle_rec(a, b, pdf(a), pdf(m), pdf(b), simpson(a, b, pdf(a), pdf(m), pdf(b)), 0);
}

// Exhaustive minimum-weight count over all 2^K messages of a plain polar code.
std::pair<int, std::uint64_t> brute_force_polar_Awmin(const CodeProfile& p)
{
    int wmin = p.N + 1;
    std::uint64_t count = 0;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << p.K); ++m) {
        BitBlock u(p.N, 0);
        for (int b = 0; b < p.K; ++b)
            u[p.info_set[b]] = (m >> b) & 1;
        int w = weight(polar_transform(u));
        if (w < wmin) {
            wmin = w;
            count = 0;
        }
        count += (w == wmin);
    }
    return {wmin, count};
}

} // namespace

TEST_CASE("compute_wmin")
{
    CHECK(compute_wmin(example1_profile()) == 16);
    CHECK(compute_wmin(construct_profile(64, 50, 4.0)) == 4);
    CHECK(compute_wmin(make_external_profile(2, {1})) == 2);
}

TEST_CASE("K_i sets on the RM(1,4)-style profile")
{
    auto p = make_external_profile(16, {7, 11, 13, 14, 15});
    CHECK(compute_Ki(7, p) == std::vector<int>{11, 13, 14, 15});
    CHECK(compute_Ki(14, p) == std::vector<int>{15});
    CHECK(compute_Ki(15, p).empty());
    CHECK_THROWS_AS(compute_Ki(3, p), ValidationError);
}

TEST_CASE("closed-form error coefficient vs exhaustive enumeration")
{
    auto p = make_external_profile(16, {7, 11, 13, 14, 15});
    auto s = polar_Awmin_formula(p);
    CHECK(s.wmin == 8);
    CHECK(s.A_wmin == 30); // 2^4 + 2^3 + 2^2 + 2^1
    auto [bw, bc] = brute_force_polar_Awmin(p);
    CHECK(bw == s.wmin);
    CHECK(bc == s.A_wmin);
}

TEST_CASE("Table-style coefficients for the GA constructions")
{
    CHECK(polar_Awmin_formula(construct_profile(64, 50, 4.0)).A_wmin == 944);
    CHECK(polar_Awmin_formula(construct_profile(128, 110, 4.0)).A_wmin == 4448);
}

TEST_CASE("coset classification")
{
    auto p = example1_profile();
    CHECK(classify_coset(63, p) == Lemma1Class::incapable_no_frozen);
    CHECK(classify_coset(57, p) == Lemma1Class::incapable_no_frozen);
    // every frozen index above 31 adds exactly bit 5 beyond supp(bin(31))
    CHECK(classify_coset(31, p) == Lemma1Class::incapable_all_singleton);
    auto q = construct_profile(64, 50, 4.0);
    // frozen 17 = 010001 adds two bits beyond supp(bin(14))
    CHECK(classify_coset(14, q) == Lemma1Class::capable);
    CHECK(classify_coset(7, q) == Lemma1Class::incapable_all_singleton);
    CHECK_THROWS_AS(classify_coset(0, p), ValidationError);
}

TEST_CASE("coset report text")
{
    auto p = make_external_profile(16, {7, 11, 13, 14, 15});
    std::ostringstream os;
    write_coset_report(p, os);
    CHECK(os.str().find("7 4 ") != std::string::npos);
    CHECK(os.str().find("15 0 incapable_no_frozen 1") != std::string::npos);
}

TEST_CASE("union bound against the quadrature oracle")
{
    CHECK(union_bound(0, 4, 0.5, 3.0) == 0.0);
    // argument 0 : rate or energy degenerate
    CHECK(union_bound(1, 0, 0.5, 3.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(union_bound(-1, 4, 0.5, 3.0), ValidationError);

    for (double x : {0.1, 0.5, 1.0, 2.0, 4.446, 6.0}) {
        double impl = q_function(x);
        double orc = q_oracle(x);
        CHECK(std::abs(impl - orc) / orc < 1e-12);
    }
    double b = union_bound(944, 4, 50.0 / 64.0, 5.0);
    double arg = std::sqrt(2.0 * 4 * (50.0 / 64.0) * std::pow(10.0, 0.5));
    CHECK(b == doctest::Approx(944 * q_oracle(arg)).epsilon(1e-12));
}
