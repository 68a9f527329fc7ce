#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "polarlab/profile.hpp"

using namespace polarlab;

TEST_CASE("small constructions")
{
    CHECK(construct_profile(2, 1, 2.0).info_set == std::vector<int>{1});
    CHECK(construct_profile(4, 4, 2.0).info_set == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(construct_profile(64, 0, 2.0), ValidationError);
    CHECK_THROWS_AS(construct_profile(64, 65, 2.0), ValidationError);
    CHECK_THROWS_AS(construct_profile(63, 10, 2.0), ValidationError);
}

TEST_CASE("GA (64,14) matches the published information set")
{
    auto paper = test_helpers::example1_profile();
    // the GA ordering happens to agree across the whole tested SNR range
    for (double snr : {1.0, 2.0, 4.0, 6.0}) {
        CodeProfile p = construct_profile(64, 14, snr);
        CHECK(p.info_set == paper.info_set);
    }
}

TEST_CASE("rate monotonicity: info set nests as K grows")
{
    for (int K = 1; K < 64; ++K) {
        auto a = construct_profile(64, K, 3.0);
        auto b = construct_profile(64, K + 1, 3.0);
        CHECK(std::includes(b.info_set.begin(), b.info_set.end(), a.info_set.begin(),
                            a.info_set.end()));
    }
}

TEST_CASE("reliability ranks of the chosen set")
{
    CodeProfile p = construct_profile(128, 110, 4.0);
    std::vector<int> rank(p.N);
    for (int r = 0; r < p.N; ++r)
        rank[p.reliability_order[r]] = r;
    for (int i : p.info_set)
        CHECK(rank[i] >= p.N - p.K);
}

TEST_CASE("profile save/load round trip, byte for byte")
{
    for (const CodeProfile& p :
         {construct_profile(64, 50, 4.0), test_helpers::example1_profile()}) {
        std::ostringstream s1;
        save_profile(p, s1);
        std::istringstream in(s1.str());
        CodeProfile q = load_profile(in);
        std::ostringstream s2;
        save_profile(q, s2);
        CHECK(s1.str() == s2.str());
        CHECK(p.info_set == q.info_set);
        CHECK(p.reliability_order == q.reliability_order);
    }
}

TEST_CASE("profile file validation")
{
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return load_profile(in);
    };
    CHECK_THROWS_AS(parse("N 8\nK 3\ninfo_set 5 6 7 4\n"), ValidationError); // |set| != K
    CHECK_THROWS_AS(parse("N 8\nK 2\ninfo_set 7 8\n"), ValidationError);    // index >= N
    CHECK_THROWS_AS(parse("N 8\nK 2\ninfo_set 7 7\n"), ValidationError);    // duplicate
    CHECK_THROWS_AS(parse("N banana\nK 2\ninfo_set 6 7\n"), ParseError);
    CHECK_THROWS_AS(parse("nonsense 4\n"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(load_profile(std::string("/no/such/file")), ParseError);
}
