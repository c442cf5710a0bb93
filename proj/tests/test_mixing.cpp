#include <catch2/catch_amalgamated.hpp>

#include "rankone/mixing.hpp"

using namespace rankone;

namespace {
ParamSpec odd_pair_spec() {
    ParamSpec s;
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    return s;
}
}  // namespace

TEST_CASE("chacon: weakly mixing, never mixing") {
    auto wm = decide_weak_mixing(chacon_spec());
    REQUIRE(wm.status == Status::Proved);
    CHECK(wm.certificate->rule == "pmax-is-one");

    auto mx = decide_mixing(chacon_spec());
    REQUIRE(mx.status == Status::Refuted);
    CHECK(mx.certificate->rule == "bounded-spacers");
    CHECK(mx.certificate->ints.at("bound") == 1);
}

TEST_CASE("odd pair: the order-2 factor blocks weak mixing") {
    auto wm = decide_weak_mixing(odd_pair_spec());
    REQUIRE(wm.status == Status::Refuted);
    CHECK(wm.certificate->rule == "finite-factor-obstruction");
    CHECK(wm.certificate->ints.at("p") == 2);
    CHECK(decide_mixing(odd_pair_spec()).status == Status::Refuted);
}

TEST_CASE("staircase: mixing via cofinite spacers") {
    auto wm = decide_weak_mixing(staircase_spec());
    REQUIRE(wm.status == Status::Proved);
    CHECK(wm.certificate->rule == "successor-pair");
    CHECK(wm.certificate->ints.at("value_hi") == 1);

    auto mx = decide_mixing(staircase_spec());
    REQUIRE(mx.status == Status::Proved);
    CHECK(mx.certificate->rule == "cofinite-spacers");
}

TEST_CASE("divisibility obstructions refute the unbounded even families") {
    for (const ParamSpec& s : {even_staircase_spec(), yp_spec(2), xp_spec(2)}) {
        auto wm = decide_weak_mixing(s);
        REQUIRE(wm.status == Status::Refuted);
        CHECK(wm.certificate->rule == "divisibility-obstruction");
        CHECK(wm.certificate->ints.at("p") == 2);
        auto mx = decide_mixing(s);
        REQUIRE(mx.status == Status::Refuted);
        CHECK(mx.certificate->rule == "divisibility-obstruction");
    }
}

TEST_CASE("z example: no verdict from the implemented routes, known answer kept apart") {
    CHECK(decide_weak_mixing(z_example_spec()).status == Status::Unknown);
    AnalysisReport r = analyze(z_example_spec());
    CHECK(r.weak_mixing.status == Status::Unknown);
    CHECK(r.known_weak_mixing == Status::Refuted);
    CHECK_FALSE(r.known_note.empty());
}

TEST_CASE("x_5 gets honest unknowns") {
    CHECK(decide_weak_mixing(xp_spec(5)).status == Status::Unknown);
    CHECK(decide_mixing(xp_spec(5)).status == Status::Unknown);
}

TEST_CASE("prefix noise does not disturb the tail decision") {
    ParamSpec s;  // mixed-parity prefix, odd-pair tail
    s.prefix = {{2, {0}}, {2, {2}}};
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    auto wm = decide_weak_mixing(s);
    REQUIRE(wm.status == Status::Refuted);
    CHECK(wm.certificate->ints.at("p") == 2);
    CHECK(wm.certificate->ints.at("level_n") == 3);
    CHECK(wm.certificate->ints.at("residue_c") == 1);
}

TEST_CASE("degenerate specs are rejected up front") {
    ParamSpec flat;
    flat.tail = TailRule::periodic({{3, {2, 2}}});
    CHECK_THROWS_AS(decide_weak_mixing(flat), InvalidSpec);
    CHECK_THROWS_AS(decide_mixing(flat), InvalidSpec);
}

TEST_CASE("empirical report catches the x_2 length-residue failure") {
    SaturationReport r = empirical_mixing_report(xp_spec(2), 0, 10'000, 4);
    REQUIRE(r.h_prime.has_value());
    CHECK(*r.h_prime == 1);
    CHECK(r.residue_obstructions.empty());
    CHECK(r.audit_modulus == 2);
    // |v_k| mod 2 = 1,0,0,0,0: the residue-1 seed breaks the mixing argument's
    // hypothesis while the block lengths themselves saturate
    CHECK(r.length_mod_audit == std::vector<Int>{1, 0, 0, 0, 0});
}

TEST_CASE("empirical report flags the odd-pair residue class") {
    SaturationReport r = empirical_mixing_report(odd_pair_spec(), 0, 200, 6);
    bool mod2 = false;
    for (auto [p, c] : r.residue_obstructions) mod2 |= (p == 2 && c == 0);
    CHECK(mod2);
}

TEST_CASE("analyze bundles the verdict surface") {
    AnalysisReport r = analyze(chacon_spec());
    CHECK(r.validation.ok);
    CHECK(r.bounded.status == Status::Proved);
    REQUIRE(r.p_max_value.has_value());
    CHECK(*r.p_max_value == 1);
    CHECK_FALSE(r.p_max_certificate.has_value());
    CHECK(r.mef.kind == MEFReport::Trivial);
    CHECK(r.weak_mixing.status == Status::Proved);
    CHECK(r.mixing.status == Status::Refuted);
    CHECK(r.known_weak_mixing == Status::Proved);
    CHECK(r.known_mixing == Status::Refuted);

    AnalysisReport e = analyze(even_staircase_spec());
    CHECK(e.bounded.status == Status::Refuted);
    CHECK_FALSE(e.p_max_value.has_value());
    REQUIRE(e.obstruction.has_value());
    CHECK(e.obstruction->p == 2);
    // unbounded spacers put a fixed point in the subshift, so no nontrivial
    // equicontinuous factor survives even though the length obstruction does
    CHECK(e.mef.kind == MEFReport::Trivial);
}
