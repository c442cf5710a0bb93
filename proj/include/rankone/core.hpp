// Shared plumbing: exact integer type with a configurable cap, error types,
// budgets, and the three-valued verdict carried by every decision procedure.
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankone {

using Int = std::int64_t;

inline constexpr const char* kVersion = "0.1.0";

// ---- errors ----------------------------------------------------------------

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotAFactor : std::runtime_error {
    explicit NotAFactor(const std::string& what) : std::runtime_error(what) {}
};

// Two anchorings of the same window disagree on the decomposition. This would
// contradict uniqueness of the expected-occurrence parse, so outside of
// too-short windows (margin precondition unmet) it signals a bug.
struct AmbiguousAnchor : std::runtime_error {
    explicit AmbiguousAnchor(const std::string& what) : std::runtime_error(what) {}
};

struct NeedTwoDistinctValues : std::runtime_error {
    explicit NeedTwoDistinctValues(const std::string& what) : std::runtime_error(what) {}
};

struct NotConstructible : std::runtime_error {
    explicit NotConstructible(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundedSpacer : std::runtime_error {
    explicit UnboundedSpacer(const std::string& what) : std::runtime_error(what) {}
};

struct NoAnchoredOccurrence : std::runtime_error {
    explicit NoAnchoredOccurrence(const std::string& what) : std::runtime_error(what) {}
};

struct ReplayBudgetExceeded : std::runtime_error {
    explicit ReplayBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct IllDefinedFactorMap : std::runtime_error {
    explicit IllDefinedFactorMap(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

// ---- checked arithmetic -----------------------------------------------------

// All word lengths and position arithmetic go through these. The cap defaults
// to the full int64 range; hitting it raises BudgetExceeded instead of
// wrapping around.
inline constexpr Int kLengthCap = std::numeric_limits<Int>::max();

inline Int checked_add(Int a, Int b, Int cap = kLengthCap) {
    Int r;
    if (__builtin_add_overflow(a, b, &r) || r > cap)
        throw BudgetExceeded("integer budget exceeded in addition");
    return r;
}

inline Int checked_mul(Int a, Int b, Int cap = kLengthCap) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r) || r > cap)
        throw BudgetExceeded("integer budget exceeded in multiplication");
    return r;
}

// ---- budgets ----------------------------------------------------------------

struct Budget {
    Int length_cap = kLengthCap;   // exact-integer cap for |v_n| etc.
    Int word_budget = 10'000'000;  // max symbols ever materialized
    Int gap_budget = 10'000'000;   // max gap entries ever expanded
};

inline const Budget& default_budget() {
    static const Budget b{};
    return b;
}

// ---- verdicts and certificates ----------------------------------------------

enum class Status { Proved, Refuted, Unknown };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Proved: return "proved";
        case Status::Refuted: return "refuted";
        default: return "unknown";
    }
}

// Machine-checkable witness payload. `rule` names the decision rule; the maps
// carry the witnesses the oracle replays (levels, moduli, spacer pairs, ...).
struct Certificate {
    std::string rule;
    std::map<std::string, Int> ints;
    std::map<std::string, std::string> notes;
    std::vector<Int> values;  // rule-specific list (e.g. witness levels)
};

struct Verdict {
    Status status = Status::Unknown;
    std::optional<Certificate> certificate;

    static Verdict proved(Certificate c) { return {Status::Proved, std::move(c)}; }
    static Verdict refuted(Certificate c) { return {Status::Refuted, std::move(c)}; }
    static Verdict unknown() { return {Status::Unknown, std::nullopt}; }
    static Verdict unknown(Certificate c) { return {Status::Unknown, std::move(c)}; }
};

}  // namespace rankone
