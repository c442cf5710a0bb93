// Weak-mixing and mixing verdicts with replayable certificates, plus the
// empirical saturation report that accompanies (never replaces) a verdict.
#pragma once

#include "witness.hpp"

namespace rankone {

namespace detail {

// Two spacer values differing by 1 that recur at arbitrarily large levels.
// Exact for periodic tails (period values recur forever); structural for the
// staircase (0 and 1 occur at every tail level).
inline std::optional<std::pair<Int, Int>> successor_pair(const ParamSpec& spec) {
    if (spec.tail.kind == TailRule::Periodic) {
        std::set<Int> vals;
        for (const auto& lv : spec.tail.levels)
            vals.insert(lv.spacers.begin(), lv.spacers.end());
        for (Int v : vals)
            if (vals.count(v + 1)) return std::make_pair(v + 1, v);
        return std::nullopt;
    }
    switch (spec.tail.family) {
        case Family::Chacon:
        case Family::Staircase:
            return std::make_pair<Int, Int>(1, 0);
        default:
            return std::nullopt;
    }
}

}  // namespace detail

// Certificate rules issued here:
//   "pmax-is-one"              WM Proved, bounded
//   "finite-factor-obstruction" WM Refuted, bounded (payload = factor cert)
//   "divisibility-obstruction" WM/mixing Refuted, unbounded
//   "successor-pair"           WM Proved, unbounded
//   "bounded-spacers"          mixing Refuted, bounded
//   "cofinite-spacers"         mixing Proved, unbounded
inline Verdict decide_weak_mixing(const ParamSpec& spec, const Budget& budget = default_budget()) {
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());
    if (vr.degenerate) throw InvalidSpec("degenerate spec: V is periodic");

    if (is_bounded(spec).status == Status::Proved) {
        auto [pm, cert] = p_max(spec, budget);
        Certificate c;
        if (pm == 1) {
            c.rule = "pmax-is-one";
            c.ints["p_max"] = 1;
            c.notes["why"] = "no nontrivial finite factor; block differences generate all of Z";
            return Verdict::proved(std::move(c));
        }
        c.rule = "finite-factor-obstruction";
        c.ints["p"] = cert->p;
        c.ints["level_n"] = cert->level_n;
        c.ints["residue_c"] = cert->residue_c;
        c.notes["why"] = "Z/pZ is a factor, so all n-block lengths are multiples of p";
        return Verdict::refuted(std::move(c));
    }

    if (auto ob = divisibility_obstruction(spec, budget)) {
        Certificate c;
        c.rule = "divisibility-obstruction";
        c.ints["p"] = ob->p;
        c.ints["level_n"] = ob->level_n;
        c.ints["residue_c"] = ob->residue_c;
        c.notes["why"] = "all n-block lengths from the witness level on are multiples of p";
        return Verdict::refuted(std::move(c));
    }
    if (auto sp = detail::successor_pair(spec)) {
        Certificate c;
        c.rule = "successor-pair";
        c.ints["value_hi"] = sp->first;
        c.ints["value_lo"] = sp->second;
        c.notes["why"] = spec.tail.kind == TailRule::Periodic
                             ? "both values sit in the repeating period, so the pair "
                               "recurs at arbitrarily large levels"
                             : "both values occur among the spacers of every tail level";
        return Verdict::proved(std::move(c));
    }
    // density > 1/2 route: needs a family-certified density bound; the only
    // built-in candidate (staircase) is already covered by successor pairs
    return Verdict::unknown();
}

inline Verdict decide_mixing(const ParamSpec& spec, const Budget& budget = default_budget()) {
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());
    if (vr.degenerate) throw InvalidSpec("degenerate spec: V is periodic");

    if (is_bounded(spec).status == Status::Proved) {
        Certificate c;
        c.rule = "bounded-spacers";
        c.ints["bound"] = is_bounded(spec).certificate->ints.at("bound");
        c.notes["why"] = "a bounded spacer parameter never mixes";
        return Verdict::refuted(std::move(c));
    }
    if (auto ob = divisibility_obstruction(spec, budget)) {
        Certificate c;
        c.rule = "divisibility-obstruction";
        c.ints["p"] = ob->p;
        c.ints["level_n"] = ob->level_n;
        c.ints["residue_c"] = ob->residue_c;
        c.notes["why"] = "all n-block lengths from the witness level on are multiples of p";
        return Verdict::refuted(std::move(c));
    }
    FamilyInfo info = family_info(spec.tail.family, spec.tail.p);
    if (info.cofinite) {
        Certificate c;
        c.rule = "cofinite-spacers";
        Int horizon = 50;
        auto census = spacer_census(spec, horizon, budget);
        c.ints["from"] = census.cofinite_from;
        c.ints["checked_to"] = horizon;
        c.notes["why"] = "the spacer value set contains a tail of the naturals";
        return Verdict::proved(std::move(c));
    }
    // increasing-complement-gap and arithmetic-progression routes issue no
    // verdict without family-certified residue coverage; none of the built-in
    // descriptors supplies it, so those conditions surface as evidence only
    return Verdict::unknown();
}

// ---- empirical evidence -----------------------------------------------------

struct SaturationReport {
    Int level_n = 0;
    Int max_len = 0;
    Int context_M = 0;
    Int cap = 0;  // lengths were decidable up to this bound within v_M
    std::optional<Int> largest_hole;
    std::optional<Int> h_prime;  // least H' with [H', cap] fully achievable
    std::vector<std::pair<Int, Int>> residue_obstructions;  // (p, c): all lengths == c mod p
    Int audit_modulus = 0;             // family spacer modulus when >= 2
    std::vector<Int> length_mod_audit; // |v_k| mod audit_modulus, k = 0..M
    std::string scope_note;
};

inline SaturationReport empirical_mixing_report(const ParamSpec& spec, Int n, Int L, Int M,
                                                const Budget& budget = default_budget()) {
    LengthSet ls = block_lengths(spec, n, L, M, budget);
    SaturationReport r;
    r.level_n = n;
    r.max_len = L;
    r.context_M = M;
    Int realized = ls.lengths.empty() ? 0 : ls.lengths.back();
    r.cap = std::max(realized, ls.largest_missing.value_or(0));
    r.largest_hole = ls.largest_missing;
    r.h_prime = ls.saturated_from;
    r.residue_obstructions = ls.residue_classes;
    if (spec.tail.kind == TailRule::FamilyTail) {
        FamilyInfo info = family_info(spec.tail.family, spec.tail.p);
        if (info.spacer_modulus >= 2) {
            r.audit_modulus = info.spacer_modulus;
            for (Int k = 0; k <= M; ++k)
                r.length_mod_audit.push_back(word_length(spec, k, budget) % r.audit_modulus);
        }
    }
    r.scope_note = "within v_" + std::to_string(M) + " -- evidence, not proof";
    return r;
}

// ---- orchestration ----------------------------------------------------------

struct AnalysisReport {
    ValidationReport validation;
    Verdict bounded;
    std::optional<Int> p_max_value;                    // bounded specs
    std::optional<FactorCertificate> p_max_certificate;
    std::optional<FactorCertificate> obstruction;      // unbounded specs
    MEFReport mef;
    Verdict weak_mixing;
    Verdict mixing;
    std::optional<Status> known_weak_mixing;  // family metadata, informational
    std::optional<Status> known_mixing;
    std::string known_note;
};

inline AnalysisReport analyze(const ParamSpec& spec, const Budget& budget = default_budget()) {
    AnalysisReport r;
    r.validation = validate(spec);
    if (!r.validation.ok) throw InvalidSpec("invalid spec: " + r.validation.violations.front());
    if (r.validation.degenerate) throw InvalidSpec("degenerate spec: V is periodic");
    r.bounded = is_bounded(spec);
    if (r.bounded.status == Status::Proved) {
        auto [pm, cert] = p_max(spec, budget);
        r.p_max_value = pm;
        r.p_max_certificate = cert;
    } else if (auto ob = divisibility_obstruction(spec, budget)) {
        r.obstruction = ob;
    }
    r.mef = mef(spec, budget);
    r.weak_mixing = decide_weak_mixing(spec, budget);
    r.mixing = decide_mixing(spec, budget);
    if (spec.tail.kind == TailRule::FamilyTail) {
        FamilyInfo info = family_info(spec.tail.family, spec.tail.p);
        r.known_weak_mixing = info.known_weak_mixing;
        r.known_mixing = info.known_mixing;
        r.known_note = info.known_note;
    }

    // cross-checks; a failure here is an implementation bug, not a verdict
    if (r.mixing.status == Status::Proved && r.weak_mixing.status == Status::Refuted)
        throw std::logic_error("mixing proved but weak mixing refuted");
    auto conflicts = [](const std::optional<Status>& known, Status derived) {
        return known.has_value() &&
               ((*known == Status::Proved && derived == Status::Refuted) ||
                (*known == Status::Refuted && derived == Status::Proved));
    };
    if (conflicts(r.known_weak_mixing, r.weak_mixing.status) ||
        conflicts(r.known_mixing, r.mixing.status))
        throw std::logic_error("derived verdict contradicts the recorded family verdict");
    return r;
}

}  // namespace rankone
