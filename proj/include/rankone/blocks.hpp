// n-block machinery: achievable length sets inside a context word, their
// difference sets, the up-down gcd, and the eventually-recurring spacer
// values that drive the witness construction.
#pragma once

#include <numeric>
#include <set>

#include "words.hpp"

namespace rankone {

// An n-block as parts: each part is one expected occurrence of v_n together
// with its following 1-run (the last part's run ends where the next expected
// occurrence would begin).
struct Block {
    Int level_n = 0;
    std::vector<Int> gaps;  // following gap per part, trailing gap included
    Int total_length = 0;   // (#parts) |v_n| + sum of gaps
};

inline Block make_block(const ParamSpec& spec, Int n, std::vector<Int> gaps,
                        const Budget& budget = default_budget()) {
    Block b;
    b.level_n = n;
    Int vn = word_length(spec, n, budget);
    b.total_length = checked_mul(static_cast<Int>(gaps.size()), vn, budget.length_cap);
    for (Int g : gaps) b.total_length = checked_add(b.total_length, g, budget.length_cap);
    b.gaps = std::move(gaps);
    return b;
}

inline std::string render_block(const ParamSpec& spec, const Block& b,
                                const Budget& budget = default_budget()) {
    if (b.total_length > budget.word_budget)
        throw BudgetExceeded("block too long to render");
    std::string vn = build_word(spec, b.level_n, budget);
    std::string out;
    out.reserve(static_cast<size_t>(b.total_length));
    for (Int g : b.gaps) {
        out += vn;
        out.append(static_cast<size_t>(g), '1');
    }
    return out;
}

// ---- length sets ----------------------------------------------------------

struct LengthSet {
    Int level_n = 0;
    Int context_M = 0;
    Int max_len = 0;                // requested L
    std::vector<Int> lengths;       // sorted, <= min(L, |v_M|)
    std::optional<Int> largest_missing;   // largest k in [1, cap] not achieved
    std::optional<Int> saturated_from;    // least H' with [H', cap] all achieved, H' < cap
    std::vector<std::pair<Int, Int>> residue_classes;  // (p, c): all lengths == c mod p
    Int residue_cap = 64;
};

namespace detail {

struct BitSet {
    std::vector<std::uint64_t> w;
    explicit BitSet(Int bits) : w(static_cast<size_t>((bits + 63) / 64), 0) {}
    void set(Int i) { w[static_cast<size_t>(i >> 6)] |= 1ULL << (i & 63); }
    bool get(Int i) const { return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    // dst |= (*this >> shift), truncated to dst's size
    void shift_or_into(BitSet& dst, Int shift) const {
        const Int word_off = shift >> 6, bit_off = shift & 63;
        const size_t nd = dst.w.size(), ns = w.size();
        for (size_t k = 0; k < nd; ++k) {
            size_t s = k + static_cast<size_t>(word_off);
            if (s >= ns) break;
            std::uint64_t lo = w[s] >> bit_off;
            std::uint64_t hi = (bit_off != 0 && s + 1 < ns) ? (w[s + 1] << (64 - bit_off)) : 0;
            dst.w[k] |= lo | hi;
        }
    }
};

// All pairwise differences pos[j] - pos[i] (j > i) up to cap, as a bitset.
inline BitSet pairwise_differences(const std::vector<Int>& pos, Int cap) {
    BitSet out(cap + 1);
    const Int span = pos.back();
    // dense route: one shift-or per position over a position bitset
    if (span <= 64'000'000) {
        BitSet all(span + 1);
        for (Int p : pos) all.set(p);
        for (Int p : pos) all.shift_or_into(out, p);
        out.w[0] &= ~1ULL;  // drop the zero difference
        return out;
    }
    // sparse route: positions are far apart, walk each window directly
    for (size_t i = 0; i < pos.size(); ++i)
        for (size_t j = i + 1; j < pos.size() && pos[j] - pos[i] <= cap; ++j)
            out.set(pos[j] - pos[i]);
    return out;
}

}  // namespace detail

// Every achievable n-block length <= L inside v_M: the window sums
// sum_{j in [i, i')} (|v_n| + gap_j) over the gap sequence, equivalently the
// pairwise differences of expected positions. Monotone in M.
inline LengthSet block_lengths(const ParamSpec& spec, Int n, Int L, Int M,
                               const Budget& budget = default_budget(), Int residue_cap = 64) {
    Int vn = word_length(spec, n, budget);
    if (L < vn) throw InvalidSpec("max length below |v_n|");
    std::vector<Int> pos = expected_positions(spec, n, M, budget);
    if (pos.size() < 2) {
        LengthSet empty;
        empty.level_n = n;
        empty.context_M = M;
        empty.max_len = L;
        empty.residue_cap = residue_cap;
        return empty;
    }
    const Int cap = std::min(L, pos.back());
    detail::BitSet diffs = detail::pairwise_differences(pos, cap);

    LengthSet ls;
    ls.level_n = n;
    ls.context_M = M;
    ls.max_len = L;
    ls.residue_cap = residue_cap;
    for (Int k = 1; k <= cap; ++k)
        if (diffs.get(k)) ls.lengths.push_back(k);
    for (Int k = cap; k >= 1; --k) {
        if (!diffs.get(k)) {
            ls.largest_missing = k;
            break;
        }
    }
    // least H' with [H', cap] fully achievable; only a run of >= 2 counts
    // (a bare top value would make every parity-obstructed set "saturated")
    if (!ls.lengths.empty() && ls.lengths.back() == cap) {
        Int h = cap;
        while (h > 1 && diffs.get(h - 1)) --h;
        if (h < cap) ls.saturated_from = h;
    }
    for (Int p = 2; p <= residue_cap; ++p) {
        std::set<Int> res;
        for (Int len : ls.lengths) {
            res.insert(len % p);
            if (res.size() > 1) break;
        }
        if (res.size() == 1) ls.residue_classes.emplace_back(p, *res.begin());
    }
    return ls;
}

// { a - b : a, b achievable lengths, a > b }
inline std::vector<Int> difference_set(const ParamSpec& spec, Int n, Int L, Int M,
                                       const Budget& budget = default_budget()) {
    LengthSet ls = block_lengths(spec, n, L, M, budget);
    if (ls.lengths.empty()) return {};
    const Int cap = ls.lengths.back();
    detail::BitSet have(cap + 1), diffs(cap + 1);
    for (Int len : ls.lengths) have.set(len);
    for (Int len : ls.lengths) have.shift_or_into(diffs, len);
    std::vector<Int> out;
    for (Int k = 1; k <= cap; ++k)
        if (diffs.get(k)) out.push_back(k);
    return out;
}

// ---- up-down gcd ----------------------------------------------------------

// Minimum positive value achievable by signed sums of pairwise differences;
// equals the gcd of the pairwise differences.
inline Int up_down_gcd(const std::vector<Int>& values) {
    std::set<Int> distinct(values.begin(), values.end());
    if (distinct.size() < 2)
        throw NeedTwoDistinctValues("up_down_gcd needs at least two distinct values");
    Int base = *distinct.begin(), g = 0;
    for (Int v : distinct) g = std::gcd(g, v - base);
    return g;
}

// ---- eventually recurring spacer values -------------------------------------

// Values occurring at infinitely many levels. For saturating families the set
// is infinite (all multiples of the modulus); `values` then holds the two
// canonical representatives and `all_multiples_of` names the full set.
struct EventualSpacers {
    std::vector<Int> values;
    bool complete = true;       // values IS the whole eventual set
    Int all_multiples_of = 0;   // when nonzero: eventual set = {0, m, 2m, ...}
};

inline EventualSpacers eventual_spacers(const ParamSpec& spec) {
    EventualSpacers ev;
    if (spec.tail.kind == TailRule::Periodic) {
        std::set<Int> vals;
        for (const auto& lv : spec.tail.levels)
            vals.insert(lv.spacers.begin(), lv.spacers.end());
        ev.values.assign(vals.begin(), vals.end());
        return ev;
    }
    switch (spec.tail.family) {
        case Family::Chacon:
            ev.values = {0, 1};
            break;
        case Family::ZExample:
            // only the zero gap recurs; the a_n are strictly growing
            ev.values = {0};
            break;
        default: {
            FamilyInfo m = family_info(spec.tail.family, spec.tail.p);
            ev.values = {0, m.spacer_modulus};
            ev.complete = false;
            ev.all_multiples_of = m.spacer_modulus;
            break;
        }
    }
    return ev;
}

// Default context for "all blocks of length <= L": the least M whose
// previous level already spans L plus one copy of v_n, then one extra tail
// period (periodic) or two extra levels (families) so junction-straddling
// blocks are represented.
inline Int default_context_level(const ParamSpec& spec, Int n, Int L,
                                 const Budget& budget = default_budget()) {
    Int M = n + 1;
    while (word_length(spec, M - 1, budget) < checked_add(L, word_length(spec, n, budget)))
        ++M;
    if (spec.tail.kind == TailRule::Periodic)
        return M + static_cast<Int>(spec.tail.levels.size());
    return M + 2;
}

// Largest context level <= want whose expected-position count at level n still
// fits the gap budget. Fast-growing families can make the stability-ideal
// level unaffordable; the caller then gets an exact answer for a shallower
// context instead of a budget error.
inline Int affordable_context_level(const ParamSpec& spec, Int n, Int want,
                                    const Budget& budget = default_budget()) {
    Int M = n + 1;
    Int count = 1;
    try {
        count = level_params(spec, n, budget).q;
        while (M < want) {
            Int qk = level_params(spec, M, budget).q;
            if (count > budget.gap_budget / qk) break;
            count *= qk;
            ++M;
        }
    } catch (const BudgetExceeded&) {
        // the last affordable level wins
    }
    return M;
}

}  // namespace rankone
