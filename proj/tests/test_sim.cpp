#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "polarlab/sim.hpp"

using namespace polarlab;

TEST_CASE("sigma convention")
{
    ChannelConfig c;
    c.ebn0_db = 0.0;
    c.rate = 0.5;
    CHECK(c.sigma() == doctest::Approx(1.0));
    c.rate = 1.0;
    CHECK(c.sigma() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("counter rng streams are pure functions of (seed, trial)")
{
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next_u64();
        all_equal &= x == b.next_u64();
        any_diff |= x != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("gaussian moments")
{
    CounterRng rng(9, 0);
    const int M = 100000;
    double s = 0, s2 = 0;
    for (int i = 0; i < M; ++i) {
        double g = rng.next_gaussian();
        s += g;
        s2 += g * g;
    }
    double mean = s / M, var = s2 / M - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(M)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("llr statistics match 2y/sigma^2")
{
    // for an all-zero codeword the LLRs are N(2/s^2, 4/s^2)
    ChannelConfig chan;
    chan.ebn0_db = 2.0;
    chan.rate = 0.5;
    chan.seed = 1;
    const double s2 = chan.sigma() * chan.sigma();
    BitBlock x(256, 0);
    double sum = 0;
    int cnt = 0;
    for (int t = 0; t < 400; ++t) {
        auto llr = transmit(x, chan, t);
        for (double l : llr)
            sum += l;
        cnt += 256;
    }
    double mean = sum / cnt;
    double se = std::sqrt(4.0 / s2 / cnt);
    CHECK(std::abs(mean - 2.0 / s2) < 4.0 * se);
}

TEST_CASE("sign flips follow the transmitted bits at vanishing noise")
{
    ChannelConfig chan;
    chan.ebn0_db = 60.0;
    chan.rate = 0.5;
    chan.seed = 3;
    BitBlock x{0, 1, 1, 0, 1, 0, 0, 1};
    auto llr = transmit(x, chan, 0);
    for (std::size_t j = 0; j < x.size(); ++j)
        CHECK((llr[j] < 0) == (x[j] == 1));
}

TEST_CASE("run_bler is deterministic and obeys the stop rule")
{
    auto p = construct_profile(64, 32, 4.0);
    DecoderConfig cfg;
    cfg.list_size = 2;
    StopRule stop{10, 400};
    auto a = run_bler(p, cfg, {1.0, 2.0}, stop, 99);
    auto b = run_bler(p, cfg, {1.0, 2.0}, stop, 99);
    REQUIRE(a.size() == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(a[i].frames == b[i].frames);
        CHECK(a[i].block_errors == b[i].block_errors);
        CHECK(a[i].bler == b[i].bler);
        CHECK((a[i].block_errors >= 10 || a[i].frames == 400));
        CHECK(a[i].bler == doctest::Approx(double(a[i].block_errors) / a[i].frames));
    }
    // 1 dB is noisier than 2 dB for the same code
    CHECK(a[0].bler >= a[1].bler);

    auto c = run_bler(p, cfg, {1.0}, stop, 100);
    CHECK((c[0].frames != a[0].frames || c[0].block_errors != a[0].block_errors));

    CHECK(run_bler(p, cfg, {}, stop, 1).empty());
    CHECK_THROWS_AS(run_bler(p, cfg, {1.0}, StopRule{0, 10}, 1), ValidationError);
}

TEST_CASE("union bound overlay and csv output")
{
    auto p = make_external_profile(16, {7, 11, 13, 14, 15});
    DecoderConfig cfg;
    cfg.list_size = 1;
    auto pts = run_bler(p, cfg, {2.0, 4.0}, StopRule{5, 50}, 7);
    auto spec = enumerate_by_message(p, PrecoderSpec::identity());
    overlay_union_bound(pts, spec, p, cfg);
    REQUIRE(pts[0].union_bound.has_value());
    double rate = 5.0 / 16.0;
    CHECK(*pts[0].union_bound ==
          doctest::Approx(union_bound(30.0, 8, rate, 2.0)));
    CHECK(*pts[0].union_bound > *pts[1].union_bound);

    // scheme mismatch is rejected
    auto pac_spec = enumerate_by_message(p, PrecoderSpec::forward({1, 1}));
    CHECK_THROWS_AS(overlay_union_bound(pts, pac_spec, p, cfg), ValidationError);

    std::ostringstream os;
    write_bler_csv(pts, os);
    auto text = os.str();
    CHECK(text.rfind("ebn0_db,frames,block_errors,bler,union_bound,elapsed_s\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("encode_message matches the manual chain")
{
    auto p = construct_profile(32, 12, 4.0);
    DecoderConfig cfg;
    cfg.scheme = Scheme::pac;
    cfg.precoder = PrecoderSpec::forward(poly_rpac7());
    CounterRng rng(1, 0);
    BitBlock msg(12);
    for (auto& b : msg)
        b = rng.next_bit();
    BitBlock v(32, 0);
    for (int b = 0; b < 12; ++b)
        v[p.info_set[b]] = msg[b];
    BitBlock want = polar_transform(apply_map(v, cfg.precoder, p));
    CHECK(encode_message(p, cfg, msg) == want);

    CHECK_THROWS_AS(encode_message(p, cfg, BitBlock(11, 0)), ValidationError);
}
