// Acceptance gate: every shipped capability demonstrated end to end, one
// verdict line per criterion, nonzero exit if anything is off.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "rankone/rankone.hpp"

using namespace rankone;

namespace {

struct Ctx {
    bool ok = true;
    std::string why;  // first failure only
};

ParamSpec odd_pair_spec() {
    ParamSpec s;
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    return s;
}

ParamSpec p37_spec() {
    ParamSpec s;
    s.tail = TailRule::periodic({{3, {2, 7}}});
    return s;
}

ParamSpec mixed_prefix_spec() {
    ParamSpec s;
    s.prefix = {{2, {0}}, {2, {2}}};
    s.tail = TailRule::periodic({{2, {1}}, {2, {3}}});
    return s;
}

int failures = 0;
int criterion_no = 0;

void run_criterion(const char* name, double limit_s,
                   const std::function<void(Ctx&)>& body) {
    ++criterion_no;
    Ctx c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.why = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.ok && dt > limit_s) {
        c.ok = false;
        c.why = "time limit " + std::to_string(limit_s) + "s exceeded";
    }
    if (!c.ok) ++failures;
    std::printf("[%s] %02d %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", criterion_no, name, dt,
                c.why.empty() ? "" : " -- ", c.why.c_str());
    std::fflush(stdout);
}

}  // namespace

#define EXPECT(c, cond, msg)                        \
    do {                                            \
        if (!(cond) && (c).ok) {                    \
            (c).ok = false;                         \
            (c).why = (msg);                        \
        }                                           \
    } while (0)

int main() {
    run_criterion("block length sets agree between the gap path and the string path", 60, [](Ctx& c) {
        struct Row {
            const char* name;
            ParamSpec spec;
            Int cap;  // largest context with |v_M| <= 1e5
        };
        const Row rows[] = {
            {"chacon", chacon_spec(), 10}, {"staircase", staircase_spec(), 3},
            {"even_staircase", even_staircase_spec(), 2}, {"z_example", z_example_spec(), 6},
            {"x_2", xp_spec(2), 4},        {"y_2", yp_spec(2), 3},
        };
        for (const auto& row : rows) {
            EXPECT(c, word_length(row.spec, row.cap) <= 100'000,
                   std::string(row.name) + ": cap level too large");
            bool cap_is_max = true;
            try {
                cap_is_max = word_length(row.spec, row.cap + 1) > 100'000;
            } catch (const BudgetExceeded&) {
            }
            EXPECT(c, cap_is_max, std::string(row.name) + ": cap level not maximal");
            for (Int n = 0; n <= 2; ++n) {
                for (Int M = n + 1; M <= row.cap; ++M) {
                    auto byword = oracle::enumerate_blocks_string(row.spec, n, M,
                                                                  default_budget(), 0);
                    auto bygaps = block_lengths(row.spec, n, word_length(row.spec, M), M);
                    EXPECT(c, byword.lengths == bygaps.lengths,
                           std::string(row.name) + ": paths disagree at n=" +
                               std::to_string(n) + " M=" + std::to_string(M));
                }
            }
        }
    });

    run_criterion("chacon: weak mixing proved, mixing refuted, lengths 1..12 in v_2", 1, [](Ctx& c) {
        AnalysisReport r = analyze(chacon_spec());
        EXPECT(c, r.weak_mixing.status == Status::Proved, "weak mixing not proved");
        EXPECT(c, r.weak_mixing.certificate->rule == "pmax-is-one", "wrong WM rule");
        EXPECT(c, r.mixing.status == Status::Refuted, "mixing not refuted");
        EXPECT(c, r.mixing.certificate->rule == "bounded-spacers", "wrong mixing rule");
        EXPECT(c, r.mef.kind == MEFReport::Trivial, "MEF should be trivial");
        LengthSet ls = block_lengths(chacon_spec(), 0, 12, 2);
        std::vector<Int> want;
        for (Int k = 1; k <= 12; ++k) want.push_back(k);
        EXPECT(c, ls.lengths == want, "level-0 lengths in v_2 are not 1..12");
        EXPECT(c, ls.saturated_from.has_value() && *ls.saturated_from == 1, "not saturated from 1");
    });

    run_criterion("odd spacer pair: order-2 factor certified and visible in the lengths", 5, [](Ctx& c) {
        ParamSpec s = odd_pair_spec();
        auto [p, cert] = p_max(s);
        EXPECT(c, p == 2, "p_max != 2");
        EXPECT(c, cert.has_value() && cert->level_n == 0 && cert->residue_c == 1,
               "certificate is not (level 0, residue 1)");
        MEFReport m = mef(s);
        EXPECT(c, m.kind == MEFReport::Cyclic && m.order == 2, "MEF is not cyclic of order 2");
        EXPECT(c, decide_weak_mixing(s).status == Status::Refuted, "weak mixing not refuted");
        LengthSet ls = block_lengths(s, 0, 200, 6);
        bool all_even = !ls.lengths.empty();
        for (Int len : ls.lengths) all_even = all_even && len % 2 == 0;
        EXPECT(c, all_even, "found an odd block length");
        auto ds = difference_set(s, 0, 200, 6);
        EXPECT(c, std::find(ds.begin(), ds.end(), 2) != ds.end(), "difference 2 missing");
        auto replay = oracle::verify_certificate(s, decide_weak_mixing(s));
        EXPECT(c, replay.pass, "certificate replay failed: " + replay.detail);
    });

    run_criterion("y_2: every block length is even and mixing is refuted", 5, [](Ctx& c) {
        ParamSpec s = yp_spec(2);
        LengthSet ls = block_lengths(s, 0, 126, 2);
        bool all_even = !ls.lengths.empty();
        for (Int len : ls.lengths) all_even = all_even && len % 2 == 0;
        EXPECT(c, all_even, "found an odd block length");
        auto wm = decide_weak_mixing(s);
        EXPECT(c, wm.status == Status::Refuted, "weak mixing not refuted");
        EXPECT(c, wm.certificate->ints.at("p") == 2, "obstruction modulus != 2");
        auto mx = decide_mixing(s);
        EXPECT(c, mx.status == Status::Refuted, "mixing not refuted");
        EXPECT(c, oracle::verify_certificate(s, wm).pass, "WM replay failed");
        EXPECT(c, oracle::verify_certificate(s, mx).pass, "mixing replay failed");
    });

    run_criterion("x_2: lengths saturate empirically while the length residues break the claim", 60,
                  [](Ctx& c) {
        SaturationReport r = empirical_mixing_report(xp_spec(2), 0, 10'000, 4);
        EXPECT(c, r.h_prime.has_value() && *r.h_prime == 1, "H' != 1");
        EXPECT(c, !r.largest_hole.has_value(), "unexpected hole below the cap");
        EXPECT(c, r.residue_obstructions.empty(), "unexpected residue class");
        EXPECT(c, r.audit_modulus == 2, "audit modulus != 2");
        EXPECT(c, (r.length_mod_audit == std::vector<Int>{1, 0, 0, 0, 0}),
               "length residue audit changed");
    });

    run_criterion("staircase: mixing proved by cofinite spacer values", 5, [](Ctx& c) {
        auto mx = decide_mixing(staircase_spec());
        EXPECT(c, mx.status == Status::Proved, "mixing not proved");
        EXPECT(c, mx.certificate->rule == "cofinite-spacers", "wrong rule");
        auto census = spacer_census(staircase_spec(), 50);
        EXPECT(c, census.complement.empty(), "complement below 50 is not empty");
        EXPECT(c, census.cofinite_from == 0, "cofinite threshold moved");
        EXPECT(c, oracle::verify_certificate(staircase_spec(), mx).pass, "replay failed");
        auto wm = decide_weak_mixing(staircase_spec());
        EXPECT(c, wm.status == Status::Proved && wm.certificate->rule == "successor-pair",
               "weak mixing not proved by a successor pair");
    });

    run_criterion("even staircase: order-2 obstruction with half-dense spacer values", 5, [](Ctx& c) {
        auto wm = decide_weak_mixing(even_staircase_spec());
        EXPECT(c, wm.status == Status::Refuted, "weak mixing not refuted");
        EXPECT(c, wm.certificate->ints.at("p") == 2, "obstruction modulus != 2");
        auto census = spacer_census(even_staircase_spec(), 10'000);
        double density = static_cast<double>(census.values.size()) / 10'001.0;
        EXPECT(c, density > 0.49 && density < 0.51, "census density far from 1/2");
        EXPECT(c, oracle::verify_certificate(even_staircase_spec(), wm).pass, "replay failed");
    });

    run_criterion("z example: honest unknown, recorded answer, growing length gaps", 60, [](Ctx& c) {
        ParamSpec s = z_example_spec();
        AnalysisReport r = analyze(s);
        EXPECT(c, r.weak_mixing.status == Status::Unknown, "derived verdict should be unknown");
        EXPECT(c, r.known_weak_mixing == Status::Refuted, "recorded verdict missing");
        for (Int n = 0; n <= 2; ++n) {
            auto sb = oracle::enumerate_blocks_string(s, n, 6, default_budget(), 0);
            EXPECT(c, sb.lengths.size() >= 2, "too few lengths at level " + std::to_string(n));
            Int vn = word_length(s, n);
            for (size_t i = 1; i < sb.lengths.size(); ++i)
                EXPECT(c, sb.lengths[i] - sb.lengths[i - 1] >= vn,
                       "consecutive lengths closer than |v_n| at level " + std::to_string(n));
        }
        for (Int p : {2, 3, 5, 7, 11, 13, 17, 19}) {
            auto v = has_finite_factor(s, p);
            EXPECT(c, v.status == Status::Refuted, "factor not refuted at p=" + std::to_string(p));
            EXPECT(c, !v.certificate->values.empty(), "no witness levels at p=" + std::to_string(p));
        }
    });

    run_criterion("up/down sums: dynamic oracle equals the gcd on 100 random multisets", 5,
                  [](Ctx& c) {
        EXPECT(c, up_down_gcd({0, 1}) == 1, "{0,1} gcd");
        EXPECT(c, up_down_gcd({3, 7}) == 4, "{3,7} gcd");
        EXPECT(c, up_down_gcd({2, 4, 8}) == 2, "{2,4,8} gcd");
        std::mt19937 rng(20250819);
        std::uniform_int_distribution<Int> size_d(2, 5), val_d(0, 30);
        int done = 0;
        while (done < 100) {
            std::vector<Int> vals;
            for (Int k = size_d(rng); k > 0; --k) vals.push_back(val_d(rng));
            if (std::set<Int>(vals.begin(), vals.end()).size() < 2) continue;
            Int a = oracle::min_achievable_sum(vals), b = up_down_gcd(vals);
            EXPECT(c, a == b,
                   "oracle " + std::to_string(a) + " != gcd " + std::to_string(b));
            ++done;
        }
    });

    run_criterion("witness pairs: every prescribed difference realized and replayed", 10, [](Ctx& c) {
        ParamSpec s = chacon_spec();
        for (Int n = 0; n <= 2; ++n) {
            for (Int h = 1; h <= 5; ++h) {
                WitnessPair w = witness_difference(s, n, h);
                EXPECT(c, w.target == h, "target != h for p_max = 1");
                EXPECT(c, w.alpha.total_length - w.beta.total_length == w.target,
                       "length difference drifted");
                auto rr = oracle::verify_witness(s, w);
                EXPECT(c, rr.pass, "replay failed at n=" + std::to_string(n) +
                                       " h=" + std::to_string(h) + ": " + rr.detail);
            }
        }
        Block gamma = make_block(s, 0, {0, 1});
        WitnessPair w = witness_difference(s, 0, 2, gamma);
        EXPECT(c, w.target == 2, "prefixed target wrong");
        EXPECT(c, std::equal(gamma.gaps.begin(), gamma.gaps.end(), w.alpha.gaps.begin()),
               "alpha lost the prescribed prefix");
        EXPECT(c, std::equal(gamma.gaps.begin(), gamma.gaps.end(), w.beta.gaps.begin()),
               "beta lost the prescribed prefix");
        EXPECT(c, oracle::verify_witness(s, w).pass, "prefixed replay failed");
    });

    run_criterion("factor map: equivariant on 200+ sliding windows", 5, [](Ctx& c) {
        ParamSpec s = odd_pair_spec();
        std::string v7 = build_word(s, 7);
        const Int L = 12, p = 2;
        std::optional<Int> prev;
        Int checked = 0;
        for (Int i = 0; i + L <= 250; ++i) {
            Decomposition d = expected_occurrences(
                v7.substr(static_cast<size_t>(i), static_cast<size_t>(L)), s, 0, 7);
            Int phi = factor_map_eval(s, p, d);
            if (prev.has_value()) {
                EXPECT(c, phi == (*prev + 1) % p, "equivariance broke at i=" + std::to_string(i));
                ++checked;
            }
            prev = phi;
        }
        EXPECT(c, checked >= 200, "fewer than 200 window steps checked");
    });

    run_criterion("structure suite: all internal invariants hold on the bounded specs", 60,
                  [](Ctx& c) {
        for (auto& [name, spec] :
             {std::pair<const char*, ParamSpec>{"chacon", chacon_spec()},
              {"odd-pair", odd_pair_spec()},
              {"one-class", p37_spec()},
              {"mixed-prefix", mixed_prefix_spec()}}) {
            auto rep = oracle::check_lemma_suite(spec, 2, 5);
            for (const auto& it : rep.items)
                if (it.ran && !it.pass)
                    EXPECT(c, false, std::string(name) + ": " + it.name + " -- " + it.detail);
            EXPECT(c, rep.all_pass, std::string(name) + ": suite not all-pass");
        }
    });

    if (failures == 0) std::printf("acceptance: all %d criteria passed\n", criterion_no);
    else std::printf("acceptance: %d of %d criteria FAILED\n", failures, criterion_no);
    return failures == 0 ? 0 : 1;
}
