#include <catch2/catch_amalgamated.hpp>

#include "rankone/parse.hpp"
#include "rankone/witness.hpp"

using namespace rankone;

namespace {
ParamSpec odd_pair_spec() {
    ParamSpec s;
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    return s;
}

void check_pair(const ParamSpec& s, const WitnessPair& w, Int n) {
    CHECK(w.alpha.total_length - w.beta.total_length == w.target);
    std::string a = render_block(s, w.alpha);
    std::string b = render_block(s, w.beta);
    CHECK(static_cast<Int>(a.size()) == w.alpha.total_length);
    CHECK(static_cast<Int>(b.size()) == w.beta.total_length);
    CHECK(is_n_block(a, s, n, w.context_level));
    CHECK(is_n_block(b, s, n, w.context_level));
}
}  // namespace

TEST_CASE("chacon witness pairs hit every small difference exactly") {
    ParamSpec s = chacon_spec();
    for (Int n = 0; n <= 2; ++n) {
        for (Int h = 1; h <= 5; ++h) {
            WitnessPair w = witness_difference(s, n, h);
            CHECK(w.target == h);  // p_max = 1
            check_pair(s, w, n);
        }
    }
}

TEST_CASE("odd pair witnesses land on multiples of p_max") {
    ParamSpec s = odd_pair_spec();
    for (Int h = 1; h <= 3; ++h) {
        WitnessPair w = witness_difference(s, 0, h);
        CHECK(w.target == 2 * h);
        check_pair(s, w, 0);
    }
}

TEST_CASE("staircase witnesses work through the one-step route") {
    ParamSpec s = staircase_spec();
    WitnessPair w = witness_difference(s, 0, 1);
    CHECK(w.target == 1);
    check_pair(s, w, 0);
}

TEST_CASE("x_2 witnesses respect the modulus") {
    ParamSpec s = xp_spec(2);
    WitnessPair w = witness_difference(s, 0, 2);
    CHECK(w.target == 4);  // d = 2, h = 2
    check_pair(s, w, 0);
}

TEST_CASE("prescribed prefix block survives into both witnesses") {
    ParamSpec s = chacon_spec();
    Block gamma = make_block(s, 0, {0, 1});
    WitnessPair w = witness_difference(s, 0, 2, gamma);
    CHECK(w.target == 2);
    REQUIRE(w.alpha.gaps.size() >= gamma.gaps.size());
    REQUIRE(w.beta.gaps.size() >= gamma.gaps.size());
    CHECK(std::equal(gamma.gaps.begin(), gamma.gaps.end(), w.alpha.gaps.begin()));
    CHECK(std::equal(gamma.gaps.begin(), gamma.gaps.end(), w.beta.gaps.begin()));
    // a gaps-prefix is a string-prefix of the rendered block
    std::string g = render_block(s, gamma);
    CHECK(render_block(s, w.alpha).substr(0, g.size()) == g);
    CHECK(render_block(s, w.beta).substr(0, g.size()) == g);
    check_pair(s, w, 0);
}

TEST_CASE("degenerate spacer sets admit no witness") {
    ParamSpec flat;
    flat.tail = TailRule::periodic({{2, {2}}});  // single eventual value
    CHECK_THROWS_AS(witness_difference(flat, 0, 1), NotConstructible);
    // z example: only the zero gap recurs, differences at level n stay huge
    CHECK_THROWS_AS(witness_difference(z_example_spec(), 0, 1), NotConstructible);
}

TEST_CASE("witness rejects bad arguments") {
    CHECK_THROWS_AS(witness_difference(chacon_spec(), -1, 1), InvalidSpec);
    CHECK_THROWS_AS(witness_difference(chacon_spec(), 0, 0), InvalidSpec);
    Block wrong_level = make_block(chacon_spec(), 1, {0});
    CHECK_THROWS_AS(witness_difference(chacon_spec(), 0, 1, wrong_level), InvalidSpec);
}
