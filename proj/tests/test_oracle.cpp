#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rankone/mixing.hpp"
#include "rankone/oracle.hpp"

using namespace rankone;

namespace {
ParamSpec odd_pair_spec() {
    ParamSpec s;
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    return s;
}
}  // namespace

TEST_CASE("string-path block enumeration agrees with the gap path") {
    struct Row {
        ParamSpec spec;
        Int n, M;
    };
    const Row rows[] = {
        {chacon_spec(), 0, 3},      {chacon_spec(), 1, 4},  {chacon_spec(), 2, 5},
        {odd_pair_spec(), 0, 6},    {odd_pair_spec(), 1, 7},
        {staircase_spec(), 0, 3},   {even_staircase_spec(), 0, 2},
        {xp_spec(2), 0, 3},         {xp_spec(2), 1, 4},     {yp_spec(2), 0, 3},
        {z_example_spec(), 0, 3},
    };
    for (const auto& row : rows) {
        auto oracle_side = oracle::enumerate_blocks_string(row.spec, row.n, row.M);
        auto lib_side = block_lengths(row.spec, row.n,
                                      word_length(row.spec, row.M), row.M);
        CHECK(oracle_side.lengths == lib_side.lengths);
    }
}

TEST_CASE("string-path examples really occur and parse") {
    auto sb = oracle::enumerate_blocks_string(chacon_spec(), 0, 3);
    REQUIRE_FALSE(sb.examples.empty());
    for (const auto& [len, w] : sb.examples) {
        CHECK(static_cast<Int>(w.size()) == len);
        CHECK(is_n_block(w, chacon_spec(), 0, 4));
    }
}

TEST_CASE("expand_word matches build_word") {
    for (const ParamSpec& s : {chacon_spec(), even_staircase_spec(), z_example_spec()})
        for (Int m = 0; m <= 3; ++m) CHECK(oracle::expand_word(s, m) == build_word(s, m));
}

TEST_CASE("min_achievable_sum equals the gcd oracle") {
    CHECK(oracle::min_achievable_sum({0, 1}) == 1);
    CHECK(oracle::min_achievable_sum({3, 7}) == 4);
    CHECK(oracle::min_achievable_sum({2, 4, 8}) == 2);
    CHECK(oracle::min_achievable_sum({0, 11, 13}) == 1);

    std::mt19937 rng(1234);
    std::uniform_int_distribution<Int> size_d(2, 5), val_d(0, 30);
    int done = 0;
    while (done < 100) {
        std::vector<Int> vals;
        for (Int k = size_d(rng); k > 0; --k) vals.push_back(val_d(rng));
        std::set<Int> distinct(vals.begin(), vals.end());
        if (distinct.size() < 2) continue;
        CHECK(oracle::min_achievable_sum(vals) == up_down_gcd(vals));
        ++done;
    }
}

TEST_CASE("genuine certificates replay green") {
    struct Row {
        ParamSpec spec;
        Verdict v;
    };
    std::vector<Row> rows;
    rows.push_back({chacon_spec(), decide_weak_mixing(chacon_spec())});
    rows.push_back({chacon_spec(), decide_mixing(chacon_spec())});
    rows.push_back({odd_pair_spec(), decide_weak_mixing(odd_pair_spec())});
    rows.push_back({staircase_spec(), decide_weak_mixing(staircase_spec())});
    rows.push_back({staircase_spec(), decide_mixing(staircase_spec())});
    rows.push_back({even_staircase_spec(), decide_weak_mixing(even_staircase_spec())});
    rows.push_back({yp_spec(2), decide_mixing(yp_spec(2))});
    rows.push_back({chacon_spec(), is_bounded(chacon_spec())});
    rows.push_back({staircase_spec(), is_bounded(staircase_spec())});
    for (const auto& row : rows) {
        auto rr = oracle::verify_certificate(row.spec, row.v);
        INFO(row.v.certificate->rule << ": " << rr.detail);
        CHECK(rr.pass);
    }
}

TEST_CASE("tampered certificates replay red") {
    ParamSpec odd = odd_pair_spec();

    Verdict wrong_residue = decide_weak_mixing(odd);
    wrong_residue.certificate->ints["residue_c"] = 0;  // really 1
    CHECK_FALSE(oracle::verify_certificate(odd, wrong_residue).pass);

    Verdict wrong_p = decide_weak_mixing(odd);
    wrong_p.certificate->ints["p"] = 4;  // lengths are odd multiples of 2, not 4
    CHECK_FALSE(oracle::verify_certificate(odd, wrong_p).pass);

    Verdict lowered = is_bounded(odd);
    lowered.certificate->ints["bound"] = 1;  // spacer 3 escapes
    CHECK_FALSE(oracle::verify_certificate(odd, lowered).pass);

    // claiming weak mixing for a spec with a genuine order-2 factor
    Verdict fake;
    fake.status = Status::Proved;
    Certificate c;
    c.rule = "pmax-is-one";
    c.ints["p_max"] = 1;
    fake.certificate = std::move(c);
    CHECK_FALSE(oracle::verify_certificate(odd, fake).pass);

    // the same claim is fine where it is true
    Verdict real = decide_weak_mixing(chacon_spec());
    CHECK(oracle::verify_certificate(chacon_spec(), real).pass);
}

TEST_CASE("witness replay accepts the construction and rejects tampering") {
    ParamSpec s = chacon_spec();
    WitnessPair w = witness_difference(s, 0, 3);
    CHECK(oracle::verify_witness(s, w).pass);

    WitnessPair bad = w;
    bad.target += 1;  // lengths no longer differ by the target
    CHECK_FALSE(oracle::verify_witness(s, bad).pass);

    WitnessPair mangled = w;
    REQUIRE_FALSE(mangled.alpha.gaps.empty());
    mangled.alpha.gaps[0] += 2;  // keeps it a word, breaks the block structure
    mangled.alpha.total_length += 2;
    mangled.target += 2;
    CHECK_FALSE(oracle::verify_witness(s, mangled).pass);
}

TEST_CASE("lemma suite passes on the bounded work-horses") {
    for (const ParamSpec& s : {chacon_spec(), odd_pair_spec()}) {
        auto rep = oracle::check_lemma_suite(s, 2, 4);
        for (const auto& it : rep.items) {
            INFO(it.name << ": " << it.detail);
            CHECK((it.pass || !it.ran));
        }
        CHECK(rep.all_pass);
    }
}

TEST_CASE("lemma suite stays green on an unbounded family") {
    auto rep = oracle::check_lemma_suite(xp_spec(2), 1, 3);
    CHECK(rep.all_pass);
}
