// Generating words and their combinatorics: explicit v_n construction,
// occurrence counts q_n^(m), gap sequences between expected occurrences,
// and prefixes/suffixes of the limit words.
#pragma once

#include <string>

#include "params.hpp"

namespace rankone {

// Number of expected occurrences of v_n inside v_m: the product of cutting
// parameters for levels n..m-1. q_between(n, n) = 1.
inline Int q_between(const ParamSpec& spec, Int n, Int m, const Budget& budget = default_budget()) {
    if (m < n || n < 0) throw InvalidSpec("q_between requires 0 <= n <= m");
    Int q = 1;
    for (Int k = n; k < m; ++k)
        q = checked_mul(q, level_params(spec, k, budget).q, budget.length_cap);
    return q;
}

// The gaps (1-run lengths) between consecutive expected occurrences of v_n
// inside v_m, in order. Built level by level:
//   G(n, k+1) = G(n, k) ++ [a_{k,1}] ++ G(n, k) ++ ... ++ [a_{k,q-1}] ++ G(n, k)
// Entry count is q_n^(m) - 1 and is charged against the gap budget.
inline std::vector<Int> flat_gaps(const ParamSpec& spec, Int n, Int m,
                                  const Budget& budget = default_budget()) {
    if (m < n || n < 0) throw InvalidSpec("flat_gaps requires 0 <= n <= m");
    std::vector<Int> g;
    for (Int k = n; k < m; ++k) {
        LevelParams lp = level_params(spec, k, budget);
        Int new_size = checked_add(
            checked_mul(lp.q, static_cast<Int>(g.size()), budget.gap_budget + 1),
            lp.q - 1, budget.gap_budget + 1);
        if (new_size > budget.gap_budget)
            throw BudgetExceeded("gap budget exceeded expanding levels " + std::to_string(n) +
                                 ".." + std::to_string(m));
        std::vector<Int> ng;
        ng.reserve(static_cast<size_t>(new_size));
        ng.insert(ng.end(), g.begin(), g.end());
        for (Int a : lp.spacers) {
            ng.push_back(a);
            ng.insert(ng.end(), g.begin(), g.end());
        }
        g = std::move(ng);
    }
    return g;
}

// Run-length-encoded view of flat_gaps, plus the identities that pin it down.
struct GapSequence {
    Int base_n = 0;
    Int top_m = 0;
    std::vector<std::pair<Int, Int>> runs;  // (gap value, repeat count)
    Int total_gaps = 0;                     // q_n^(m) - 1
    Int gap_sum = 0;                        // so |v_m| = q_n^(m) |v_n| + gap_sum

    std::vector<Int> flat(const Budget& budget = default_budget()) const {
        if (total_gaps > budget.gap_budget) throw BudgetExceeded("gap budget exceeded");
        std::vector<Int> out;
        out.reserve(static_cast<size_t>(total_gaps));
        for (auto [v, c] : runs)
            for (Int i = 0; i < c; ++i) out.push_back(v);
        return out;
    }
};

inline GapSequence gap_sequence(const ParamSpec& spec, Int n, Int m,
                                const Budget& budget = default_budget()) {
    GapSequence gs;
    gs.base_n = n;
    gs.top_m = m;
    std::vector<Int> flat = flat_gaps(spec, n, m, budget);
    gs.total_gaps = static_cast<Int>(flat.size());
    for (Int v : flat) {
        gs.gap_sum = checked_add(gs.gap_sum, v, budget.length_cap);
        if (!gs.runs.empty() && gs.runs.back().first == v)
            ++gs.runs.back().second;
        else
            gs.runs.emplace_back(v, 1);
    }
    return gs;
}

// Start offsets of the expected occurrences of v_n inside v_m, derived from
// the gap sequence: p_0 = 0, p_{j+1} = p_j + |v_n| + gap_j.
inline std::vector<Int> expected_positions(const ParamSpec& spec, Int n, Int m,
                                           const Budget& budget = default_budget()) {
    std::vector<Int> gaps = flat_gaps(spec, n, m, budget);
    Int vn = word_length(spec, n, budget);
    std::vector<Int> pos;
    pos.reserve(gaps.size() + 1);
    Int p = 0;
    pos.push_back(p);
    for (Int g : gaps) {
        p = checked_add(p, checked_add(vn, g, budget.length_cap), budget.length_cap);
        pos.push_back(p);
    }
    return pos;
}

// The explicit word v_n. Starts and ends with 0, and each v_n is both a
// prefix and a suffix of v_{n+1}.
inline std::string build_word(const ParamSpec& spec, Int n, const Budget& budget = default_budget()) {
    Int len = word_length(spec, n, budget);
    if (len > budget.word_budget)
        throw BudgetExceeded("word budget exceeded: |v_" + std::to_string(n) +
                             "| = " + std::to_string(len));
    std::string w(static_cast<size_t>(spec.seed_zeros), '0');
    for (Int k = 0; k < n; ++k) {
        LevelParams lp = level_params(spec, k, budget);
        std::string nw;
        nw.reserve(static_cast<size_t>(word_length(spec, k + 1, budget)));
        nw += w;
        for (Int a : lp.spacers) {
            nw.append(static_cast<size_t>(a), '1');
            nw += w;
        }
        w = std::move(nw);
    }
    return w;
}

// First L symbols of the infinite word V = lim v_n.
inline std::string infinite_prefix(const ParamSpec& spec, Int L, const Budget& budget = default_budget()) {
    if (L < 1) throw InvalidSpec("prefix length must be >= 1");
    Int n = 0;
    while (word_length(spec, n, budget) < L) ++n;
    std::string w = build_word(spec, n, budget);
    return w.substr(0, static_cast<size_t>(L));
}

// Last L symbols of the dual word V* (limit of the v_n read as suffixes).
inline std::string dual_suffix(const ParamSpec& spec, Int L, const Budget& budget = default_budget()) {
    if (L < 1) throw InvalidSpec("suffix length must be >= 1");
    Int n = 0;
    while (word_length(spec, n, budget) < L) ++n;
    std::string w = build_word(spec, n, budget);
    return w.substr(w.size() - static_cast<size_t>(L));
}

}  // namespace rankone
