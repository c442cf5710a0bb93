// Window parsing: factor recognition and the expected-occurrence
// decomposition of finite windows, anchored through explicit occurrences in a
// context word v_M.
#pragma once

#include <algorithm>

#include "words.hpp"

namespace rankone {

// Expected occurrences of v_n inside a window, window-relative. The boundary
// fields record the partial 1-runs cut off at the window edges.
struct Decomposition {
    Int level_n = 0;
    std::string window;
    std::vector<Int> anchors;  // sorted start indices of expected v_n occurrences
    Int leading_ones = 0;
    Int trailing_ones = 0;
};

inline bool is_factor(const std::string& w, const ParamSpec& spec, Int M,
                      const Budget& budget = default_budget()) {
    if (w.empty()) return true;
    std::string vM = build_word(spec, M, budget);
    return vM.find(w) != std::string::npos;
}

namespace detail {

// All start offsets of w in text.
inline std::vector<Int> occurrences(const std::string& text, const std::string& w) {
    std::vector<Int> occ;
    size_t at = text.find(w);
    while (at != std::string::npos) {
        occ.push_back(static_cast<Int>(at));
        at = text.find(w, at + 1);
    }
    return occ;
}

// Window-relative expected positions of v_n for one anchoring of the window
// at offset o in v_M. Only occurrences lying fully inside the window count.
inline std::vector<Int> anchored_positions(const std::vector<Int>& expected, Int o, Int wlen,
                                           Int vn_len) {
    std::vector<Int> rel;
    auto it = std::lower_bound(expected.begin(), expected.end(), o);
    for (; it != expected.end() && *it + vn_len <= o + wlen; ++it)
        rel.push_back(*it - o);
    return rel;
}

}  // namespace detail

// The unique expected-occurrence decomposition of w, determined by anchoring
// every occurrence of w in v_M and demanding agreement. Disagreement between
// anchorings means the context margin was too small for uniqueness to bite
// (or a bug) and raises AmbiguousAnchor.
inline Decomposition expected_occurrences(const std::string& w, const ParamSpec& spec, Int n, Int M,
                                          const Budget& budget = default_budget()) {
    if (w.empty()) throw NotAFactor("empty window");
    std::string vM = build_word(spec, M, budget);
    std::vector<Int> occ = detail::occurrences(vM, w);
    if (occ.empty()) throw NotAFactor("window does not occur in the context word");
    std::vector<Int> expected = expected_positions(spec, n, M, budget);
    Int vn_len = word_length(spec, n, budget);

    Decomposition d;
    d.level_n = n;
    d.window = w;
    d.anchors = detail::anchored_positions(expected, occ[0], static_cast<Int>(w.size()), vn_len);
    for (size_t i = 1; i < occ.size(); ++i) {
        auto rel = detail::anchored_positions(expected, occ[i], static_cast<Int>(w.size()), vn_len);
        if (rel != d.anchors)
            throw AmbiguousAnchor("anchorings at offsets " + std::to_string(occ[0]) + " and " +
                                  std::to_string(occ[i]) + " disagree at level " +
                                  std::to_string(n));
    }
    while (d.leading_ones < static_cast<Int>(w.size()) && w[static_cast<size_t>(d.leading_ones)] == '1')
        ++d.leading_ones;
    while (d.trailing_ones < static_cast<Int>(w.size()) &&
           w[w.size() - 1 - static_cast<size_t>(d.trailing_ones)] == '1')
        ++d.trailing_ones;
    return d;
}

// Decomposition with the context level chosen by stabilization: M grows until
// two consecutive context levels agree on the relative decomposition.
inline Decomposition stable_expected_occurrences(const std::string& w, const ParamSpec& spec, Int n,
                                                 const Budget& budget = default_budget(),
                                                 Int* used_M = nullptr) {
    Int M = n;
    while (word_length(spec, M, budget) < static_cast<Int>(w.size())) ++M;
    ++M;
    Decomposition prev = expected_occurrences(w, spec, n, M, budget);
    for (;;) {
        ++M;
        Decomposition cur = expected_occurrences(w, spec, n, M, budget);
        if (cur.anchors == prev.anchors) {
            if (used_M != nullptr) *used_M = M;
            return cur;
        }
        prev = std::move(cur);
    }
}

// True iff w is an n-block: for some anchoring of w in v_M, w starts at an
// expected occurrence of v_n and ends immediately before another one.
inline bool is_n_block(const std::string& w, const ParamSpec& spec, Int n, Int M,
                       const Budget& budget = default_budget()) {
    if (w.empty()) return false;
    std::string vM = build_word(spec, M, budget);
    std::vector<Int> occ = detail::occurrences(vM, w);
    if (occ.empty()) throw NotAFactor("window does not occur in the context word");
    std::vector<Int> expected = expected_positions(spec, n, M, budget);
    for (Int o : occ) {
        bool starts = std::binary_search(expected.begin(), expected.end(), o);
        bool next = std::binary_search(expected.begin(), expected.end(),
                                       o + static_cast<Int>(w.size()));
        if (starts && next) return true;
    }
    return false;
}

}  // namespace rankone
