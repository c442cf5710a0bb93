// Witness pairs: two n-blocks whose lengths differ by exactly h*d (h*p_max
// for bounded spacers). Construction: rotate the full gap sequence of a high
// level so a distinguished gap is exposed, then repeatedly rewrite that slot
// across one more span of levels, omitting a chosen spacer on each side; a
// final strip of leading parts tunes the difference down to the target.
#pragma once

#include <array>
#include <functional>

#include "factors.hpp"

namespace rankone {

struct WitnessPair {
    Block alpha;
    Block beta;
    Int target = 0;         // |alpha| - |beta|, exact
    Int context_level = 0;  // both verify as n-blocks inside v_{context_level}
};

namespace detail {

// hprime*d decomposed into spacer-pair applications (u, w), each worth w - u.
inline std::vector<std::pair<Int, Int>> plan_steps(const std::vector<Int>& values,
                                                   Int hprime, Int d, const Budget& budget) {
    std::set<Int> s(values.begin(), values.end());
    std::vector<Int> vs(s.begin(), s.end());
    const Int total = checked_mul(hprime, d, budget.length_cap);
    // one application spanning the whole amount
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (vs[j] - vs[i] == total) return {{vs[i], vs[j]}};
    // a single pair of difference d, applied hprime times
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (vs[j] - vs[i] == d) {
                if (hprime > budget.gap_budget)
                    throw BudgetExceeded("witness step count exceeds gap budget");
                return std::vector<std::pair<Int, Int>>(static_cast<size_t>(hprime),
                                                        {vs[i], vs[j]});
            }
    // general route: Bezout coefficients over the differences to the minimum
    std::vector<Int> diffs(vs.begin() + 1, vs.end());
    for (Int& b : diffs) b -= vs[0];
    std::function<std::array<Int, 3>(Int, Int)> egcd = [&](Int a, Int b) -> std::array<Int, 3> {
        if (b == 0) return {a, 1, 0};
        auto [g, x, y] = egcd(b, a % b);
        return {g, y, x - (a / b) * y};
    };
    Int g = diffs[0];
    std::vector<Int> coef(diffs.size(), 0);
    coef[0] = 1;
    for (size_t k = 1; k < diffs.size(); ++k) {
        auto [gg, x, y] = egcd(g, diffs[k]);
        for (Int& c : coef) c = checked_mul(c, x, budget.length_cap);
        coef[k] = y;
        g = gg;
    }
    if (g != d) throw NotConstructible("spacer differences do not generate the expected gcd");
    std::vector<std::pair<Int, Int>> steps;
    Int count = 0;
    for (size_t k = 0; k < coef.size(); ++k) {
        Int e = checked_mul(coef[k], hprime, budget.length_cap);
        count = checked_add(count, e < 0 ? -e : e, budget.gap_budget);
        if (count > budget.gap_budget)
            throw BudgetExceeded("witness step count exceeds gap budget");
        for (Int t = 0; t < (e < 0 ? -e : e); ++t) {
            if (e > 0) steps.emplace_back(vs[0], vs[k + 1]);
            else steps.emplace_back(vs[k + 1], vs[0]);
        }
    }
    return steps;
}

// Rewrite vec[jd] (a gap between two v_S-aligned runs) as the gaps of v_E
// around that junction with the value `omit` left out, leaving the fresh
// first spacer of level E as the new distinguished slot.
inline void apply_witness_step(const ParamSpec& spec, Int n, std::vector<Int>& vec, Int& jd,
                               Int S, Int E, Int omit, Int next_first_spacer,
                               const Budget& budget) {
    std::vector<Int> FG = flat_gaps(spec, S, E, budget);
    std::vector<Int> GS = flat_gaps(spec, n, S, budget);
    auto it = std::find(FG.begin(), FG.end(), omit);
    if (it == FG.end())
        throw NotConstructible("spacer value " + std::to_string(omit) +
                               " absent in span starting at level " + std::to_string(S));
    const Int istar = it - FG.begin();
    const Int T = static_cast<Int>(FG.size());
    std::vector<Int> rep;
    Int apos = 0;
    auto extend_gs = [&] { rep.insert(rep.end(), GS.begin(), GS.end()); };
    if (istar == T - 1) {
        rep.push_back(next_first_spacer);
        apos = 0;
    } else {
        rep.push_back(FG[static_cast<size_t>(istar + 1)]);
        for (Int j = istar + 2; j < T; ++j) {
            extend_gs();
            rep.push_back(FG[static_cast<size_t>(j)]);
        }
        extend_gs();
        rep.push_back(next_first_spacer);
        apos = static_cast<Int>(rep.size()) - 1;
    }
    for (Int c = 1; c <= istar; ++c) {
        extend_gs();
        rep.push_back(FG[static_cast<size_t>(c - 1)]);
    }
    if (static_cast<Int>(vec.size() - 1 + rep.size()) > budget.gap_budget)
        throw BudgetExceeded("witness block part count exceeds gap budget");
    std::vector<Int> out;
    out.reserve(vec.size() - 1 + rep.size());
    out.insert(out.end(), vec.begin(), vec.begin() + jd);
    out.insert(out.end(), rep.begin(), rep.end());
    out.insert(out.end(), vec.begin() + jd + 1, vec.end());
    vec = std::move(out);
    jd += apos;
}

}  // namespace detail

inline WitnessPair witness_difference(const ParamSpec& spec, Int n, Int h,
                                      const std::optional<Block>& gamma = std::nullopt,
                                      const Budget& budget = default_budget()) {
    if (n < 0) throw InvalidSpec("level index must be >= 0");
    if (h < 1) throw InvalidSpec("difference multiplier h >= 1 required");
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());
    if (gamma.has_value() && gamma->level_n != n)
        throw InvalidSpec("prefix block level does not match requested level");

    auto ev = eventual_spacers(spec);
    {
        std::set<Int> distinct(ev.values.begin(), ev.values.end());
        if (distinct.size() < 2)
            throw NotConstructible("need at least two distinct eventual spacer values");
    }
    const Int d = up_down_gcd(ev.values);
    const bool bounded = is_bounded(spec).status == Status::Proved;
    const Int p = bounded ? p_max(spec, budget).first : d;
    const Int target = checked_mul(h, p, budget.length_cap);
    const Int prefix_len = static_cast<Int>(spec.prefix.size());
    const Int span = spec.tail.kind == TailRule::Periodic
                         ? static_cast<Int>(spec.tail.levels.size())
                         : 1;
    const Int vl = word_length(spec, n, budget);
    const std::vector<Int> gam = gamma.has_value() ? gamma->gaps : std::vector<Int>{};

    Int N0 = std::max(n + 1, prefix_len);
    if (!bounded) {
        // the single replacement step needs spacers 0 and (at least) target
        // at its span level; spacer sets of the unbounded families only grow
        while (true) {
            auto sp = level_params(spec, N0, budget).spacers;
            if (std::find(sp.begin(), sp.end(), Int{0}) != sp.end() &&
                std::find(sp.begin(), sp.end(), target) != sp.end())
                break;
            ++N0;
            if (N0 > n + 200)
                throw NotConstructible("no level carries the required spacer values");
        }
    }

    // Find the strip count r (and the gamma anchor) making the target
    // reachable: stripping r leading parts changes the length by
    // P = r|v_n| + (sum of their gaps), and the remainder must be d-divisible.
    std::vector<Int> Gn;
    Int pos_a = 0, r = 0, P = 0, pos_u = 0;
    while (true) {
        Gn = flat_gaps(spec, n, N0, budget);
        bool found = false;
        if (gam.empty()) {
            Int acc = 0;
            for (Int rr = 0; rr <= static_cast<Int>(Gn.size()); ++rr) {
                Int PP = checked_add(checked_mul(rr, vl, budget.length_cap), acc,
                                     budget.length_cap);
                if ((PP + target) % d == 0) {
                    pos_a = 0;
                    r = rr;
                    P = PP;
                    pos_u = rr;
                    found = true;
                    break;
                }
                if (rr < static_cast<Int>(Gn.size())) acc += Gn[static_cast<size_t>(rr)];
            }
        } else {
            const Int gl = static_cast<Int>(gam.size());
            for (Int pu = 0; pu + gl <= static_cast<Int>(Gn.size()) && !found; ++pu) {
                if (!std::equal(gam.begin(), gam.end(), Gn.begin() + pu)) continue;
                for (Int rr = 0; rr <= pu; ++rr) {
                    Int pa = pu - rr;
                    Int PP = checked_mul(rr, vl, budget.length_cap);
                    for (Int j = pa; j < pu; ++j)
                        PP = checked_add(PP, Gn[static_cast<size_t>(j)], budget.length_cap);
                    if ((PP + target) % d == 0) {
                        pos_a = pa;
                        r = rr;
                        P = PP;
                        pos_u = pu;
                        found = true;
                        break;
                    }
                }
            }
        }
        if (found && !bounded) {
            // the one-step route pairs spacer 0 against (target + P)/d * d,
            // which must actually occur at level N0
            Int need = target + P;
            auto sp = level_params(spec, N0, budget).spacers;
            if (std::find(sp.begin(), sp.end(), need) == sp.end()) found = false;
        }
        if (found) break;
        N0 += span;
        if (N0 > n + 200)
            throw NotConstructible(gam.empty()
                                       ? "no strip alignment reaches the target difference"
                                       : "prefix block never aligns with the target difference");
    }

    const Int hprime = (target + P) / d;
    std::vector<std::pair<Int, Int>> steps;
    if (!bounded)
        steps = {{0, checked_mul(hprime, d, budget.length_cap)}};
    else
        steps = detail::plan_steps(ev.values, hprime, d, budget);
    const Int I = static_cast<Int>(steps.size());

    std::vector<Int> levels(static_cast<size_t>(I) + 1);
    for (Int t = 0; t <= I; ++t) levels[static_cast<size_t>(t)] = N0 + span * t;

    const Int D = (I > 0) ? flat_gaps(spec, levels[0], levels[1], budget).front()
                          : level_params(spec, N0, budget).spacers.front();

    auto rotate_start = [&](Int pos) {
        std::vector<Int> vec;
        vec.reserve(Gn.size() + 1);
        vec.insert(vec.end(), Gn.begin() + pos, Gn.end());
        vec.push_back(D);
        vec.insert(vec.end(), Gn.begin(), Gn.begin() + pos);
        return std::make_pair(vec, static_cast<Int>(Gn.size()) - pos);
    };
    auto [avec, ajd] = rotate_start(pos_a);
    auto [bvec, bjd] = rotate_start(gam.empty() ? 0 : pos_u);

    for (Int t = 0; t < I; ++t) {
        const Int S = levels[static_cast<size_t>(t)], E = levels[static_cast<size_t>(t) + 1];
        const Int A = level_params(spec, E, budget).spacers.front();
        detail::apply_witness_step(spec, n, avec, ajd, S, E, steps[static_cast<size_t>(t)].first,
                                   A, budget);
        detail::apply_witness_step(spec, n, bvec, bjd, S, E, steps[static_cast<size_t>(t)].second,
                                   A, budget);
    }

    avec.erase(avec.begin(), avec.begin() + r);

    WitnessPair w;
    w.alpha = make_block(spec, n, std::move(avec), budget);
    w.beta = make_block(spec, n, std::move(bvec), budget);
    w.target = target;
    w.context_level = levels[static_cast<size_t>(I)] + 1;
    if (w.alpha.total_length - w.beta.total_length != target)
        throw std::logic_error("witness construction produced a wrong difference");
    return w;
}

}  // namespace rankone
