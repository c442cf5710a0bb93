// Finite factors Z/pZ: decide the divisibility condition
//   exists n, c:  a_{m,i} == c (mod p) for all m >= n, i   and   |v_n| == -c,
// exactly, per tail kind. On top of that: p_max over divisors of the
// eventual-spacer difference gcd, the maximal equicontinuous factor report,
// and the induced factor map on parsed windows.
#pragma once

#include "blocks.hpp"
#include "parse.hpp"

namespace rankone {

struct FactorCertificate {
    Int p = 1;
    Int level_n = 0;   // witnessing level: |v_n| == -c (mod p)
    Int residue_c = 0; // the single spacer class mod p from level n on
};

struct MEFReport {
    enum Kind { Trivial, Cyclic } kind = Trivial;
    Int order = 1;  // p_max; 1 when trivial
    std::optional<FactorCertificate> certificate;
    std::vector<Int> divisors;  // every p >= 2 with Z/pZ a factor, ascending
    std::string note;
};

namespace detail {

inline Int least_prime_factor(Int p) {
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return d;
    return p;
}

inline Int prime_index(Int pr) {  // inverse of nth_prime for prime input
    Int idx = 0;
    while (nth_prime(idx) < pr) ++idx;
    return idx;
}

// Least n1 such that every level >= n1 has all spacers in one residue class
// mod p, together with that class; nullopt when no such level exists.
inline std::optional<std::pair<Int, Int>> single_class_start(const ParamSpec& spec, Int p) {
    Int c = -1;
    if (spec.tail.kind == TailRule::Periodic) {
        for (const auto& lv : spec.tail.levels)
            for (Int a : lv.spacers) {
                if (c < 0) c = a % p;
                else if (a % p != c) return std::nullopt;
            }
    } else {
        switch (spec.tail.family) {
            case Family::Chacon:
            case Family::Staircase:
            case Family::ZExample:
                // spacer residues mix at every (or arbitrarily late) tail level
                return std::nullopt;
            case Family::EvenStaircase:
                if (2 % p != 0) return std::nullopt;
                c = 0;
                break;
            case Family::Xp:
            case Family::Yp:
                if (spec.tail.p % p != 0) return std::nullopt;
                c = 0;
                break;
        }
    }
    Int n1 = static_cast<Int>(spec.prefix.size());
    while (n1 > 0) {
        bool conforms = true;
        for (Int a : spec.prefix[static_cast<size_t>(n1 - 1)].spacers)
            if (a % p != c) { conforms = false; break; }
        if (!conforms) break;
        --n1;
    }
    return std::make_pair(n1, c);
}

struct ResidueSearch {
    bool found = false;
    Int level = -1;          // least n >= n1 with |v_n| == target (mod p)
    std::vector<Int> orbit;  // visited residues from n1 (capped)
    bool orbit_truncated = false;
};

constexpr Int kOrbitKeep = 64;
constexpr Int kResidueStateCap = 4'000'000;

// Walk |v_n| mod p from level n1 until the target residue is hit or the
// state provably cycles. Exact: the state space is finite for every tail
// kind handled here (periodic: period x residue; family: residue alone).
inline ResidueSearch length_residue_search(const ParamSpec& spec, Int p, Int n1, Int target,
                                           const Budget& budget) {
    ResidueSearch rs;
    // n1 never exceeds the prefix length, so this stays cheap; exact length
    // is tracked alongside until it overflows (only the |v| = 1 start of the
    // multiples families actually consults it).
    Int exact = word_length(spec, n1, budget);
    Int x = exact % p;
    Int n = n1;
    const Int prefix_len = static_cast<Int>(spec.prefix.size());

    auto record = [&](Int r) {
        if (static_cast<Int>(rs.orbit.size()) < kOrbitKeep) rs.orbit.push_back(r);
        else rs.orbit_truncated = true;
    };
    auto step_exact = [&](const LevelParams* lp) {
        if (exact < 0) return;
        // uncapped recurrence; any overflow just drops exact tracking
        if (lp != nullptr) {
            if (exact > (kLengthCap - 8) / std::max<Int>(lp->q, 2)) { exact = -1; return; }
            Int next = lp->q * exact;
            for (Int a : lp->spacers) {
                if (next > kLengthCap - a) { exact = -1; return; }
                next += a;
            }
            exact = next;
        } else if (exact > 2'000'000'000) {
            exact = -1;  // family steps are at most quadratic; stay well clear
        } else {
            switch (spec.tail.family) {
                case Family::EvenStaircase:
                    exact = 3 * exact * exact + 2 * exact;
                    break;
                case Family::Xp:
                case Family::Yp:
                    exact = (exact == 1)
                                ? 2
                                : exact * (exact + 1) + spec.tail.p * (exact * (exact - 1) / 2);
                    break;
                default:
                    exact = -1;  // not consulted for other tails
            }
        }
    };

    if (spec.tail.kind == TailRule::Periodic) {
        const Int period = static_cast<Int>(spec.tail.levels.size());
        if (period * p > kResidueStateCap)
            throw BudgetExceeded("residue cycle state space too large");
        std::vector<char> seen(static_cast<size_t>(period * p), 0);
        while (true) {
            record(x);
            if (x == target) {
                rs.found = true;
                rs.level = n;
                return rs;
            }
            const LevelParams* lp;
            if (n < prefix_len) {
                lp = &spec.prefix[static_cast<size_t>(n)];
            } else {
                Int phase = (n - prefix_len) % period;
                size_t key = static_cast<size_t>(phase * p + x);
                if (seen[key]) return rs;  // cycled without hitting target
                seen[key] = 1;
                lp = &spec.tail.levels[static_cast<size_t>(phase)];
            }
            Int nx = (lp->q % p) * x % p;
            for (Int a : lp->spacers) nx = (nx + a % p) % p;
            step_exact(lp);
            x = nx;
            ++n;
        }
    }

    // Family tails reaching this point: EvenStaircase (p = 2) and Xp/Yp with
    // p | family parameter. Their spacer sums vanish mod p, so the residue
    // map depends on x alone and the state space is just Z_p.
    if (p > kResidueStateCap) throw BudgetExceeded("residue state space too large");
    std::vector<char> seen(static_cast<size_t>(p), 0);
    while (true) {
        record(x);
        if (x == target) {
            rs.found = true;
            rs.level = n;
            return rs;
        }
        if (n < prefix_len) {
            const LevelParams* lp = &spec.prefix[static_cast<size_t>(n)];
            Int nx = (lp->q % p) * x % p;
            for (Int a : lp->spacers) nx = (nx + a % p) % p;
            step_exact(lp);
            x = nx;
        } else {
            if (seen[static_cast<size_t>(x)]) return rs;
            seen[static_cast<size_t>(x)] = 1;
            Int nx;
            switch (spec.tail.family) {
                case Family::EvenStaircase:
                    // 3x^2 + 2x; the spacer sum 2*T(|v|) is even, p = 2
                    nx = (x * x) % p;
                    break;
                case Family::Xp:
                case Family::Yp:
                    // x(x+1) + p_fam*T(x-1) with p | p_fam, except |v| = 1
                    // where the level degenerates to doubling
                    nx = (exact == 1) ? (2 % p) : (x * x + x) % p;
                    break;
                default:
                    throw InvalidSpec("residue search on unsupported family");
            }
            step_exact(nullptr);
            x = nx;
        }
        ++n;
    }
}

// Exact |v_n| and a_n residues for the z_example tail, computed modulo
// lcm(p, every prime the level rule consults below n). Sound because each
// consulted prime divides the working modulus.
struct ZResidues {
    Int length_mod_p = 0;  // |v_n| mod p
    Int spacer_mod_p = 0;  // a_n mod p (the growing spacer at level n)
};

inline ZResidues z_residues(const ParamSpec& spec, Int n, Int p, const Budget& budget) {
    const Int prefix_len = static_cast<Int>(spec.prefix.size());
    Int M = p;
    for (Int k = prefix_len; k <= n; ++k) {
        Int pr = nth_prime(cantor_unpair(k).second);
        M = std::lcm(M, pr);
        if (M > 2'000'000'000'000'000LL)
            throw BudgetExceeded("z residue modulus exceeds integer budget");
    }
    auto mulmod = [M](Int a, Int b) {
        return static_cast<Int>(static_cast<__int128>(a) * b % M);
    };
    Int x = spec.seed_zeros % M;
    Int last_spacer = 0;
    for (Int k = 0; k <= n; ++k) {
        if (k < prefix_len) {
            const auto& lv = spec.prefix[static_cast<size_t>(k)];
            Int nx = mulmod(lv.q % M, x);
            for (Int a : lv.spacers) nx = (nx + a % M) % M;
            if (k < n) x = nx;
            continue;
        }
        Int pr = nth_prime(cantor_unpair(k).second);
        // a_k = 3|v_k| + r, r in [1, pr], chosen so a_k == 1 (mod pr)
        Int r = ((1 - 3 * (x % pr)) % pr + pr) % pr;
        if (r == 0) r = pr;
        last_spacer = (mulmod(3, x) + r) % M;
        if (k < n) x = (mulmod(6, x) + r) % M;
    }
    (void)budget;
    ZResidues zr;
    zr.length_mod_p = x % p;
    zr.spacer_mod_p = (n >= prefix_len) ? last_spacer % p : 0;
    return zr;
}

// Least tail level at which two spacers in distinct classes mod p occur
// (and at every later level too, by the family spacer structure).
inline Int mixed_pair_start(const ParamSpec& spec, const Budget& budget) {
    const Int prefix_len = static_cast<Int>(spec.prefix.size());
    if (spec.tail.kind == TailRule::Periodic) return prefix_len;
    switch (spec.tail.family) {
        case Family::Chacon:
        case Family::Staircase:
        case Family::EvenStaircase:
            return prefix_len;  // spacer sets {0,1,..} / {0,2,..} from the start
        case Family::Xp:
        case Family::Yp: {
            Int n = prefix_len;  // need |v_n| >= 2 for the spacer p_fam to appear
            while (word_length(spec, n, budget) < 2) ++n;
            return n;
        }
        case Family::ZExample:
            return prefix_len;
    }
    return prefix_len;
}

}  // namespace detail

// Decides whether Z/pZ is a factor. Certificate rules:
//   "factor-divisibility"    Proved; ints p, level_n, residue_c
//   "spacer-residues-mix"    Refuted; two spacer values (or, for the growing
//                            z_example spacers, a list of witness levels)
//                            landing in distinct classes at arbitrarily
//                            large levels
//   "residue-cycle-avoids"   Refuted; spacers are single-class c but the
//                            |v_n| residue orbit never meets -c
inline Verdict has_finite_factor(const ParamSpec& spec, Int p,
                                 const Budget& budget = default_budget()) {
    if (p < 2) throw InvalidSpec("modulus p >= 2 required");
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());

    auto scs = detail::single_class_start(spec, p);
    if (!scs.has_value()) {
        Certificate c;
        c.rule = "spacer-residues-mix";
        c.ints["p"] = p;
        if (spec.tail.kind == TailRule::Periodic) {
            Int a0 = -1, a1 = -1;
            for (const auto& lv : spec.tail.levels)
                for (Int a : lv.spacers) {
                    if (a0 < 0) a0 = a;
                    else if (a % p != a0 % p && a1 < 0) a1 = a;
                }
            c.notes["witness_kind"] = "value-pair";
            c.ints["value_a"] = a0;
            c.ints["value_b"] = a1;
            c.ints["from_level"] = static_cast<Int>(spec.prefix.size());
            c.notes["why"] = "both values recur once per period, so no level n works";
            return Verdict::refuted(std::move(c));
        }
        switch (spec.tail.family) {
            case Family::Chacon:
            case Family::Staircase:
                c.notes["witness_kind"] = "value-pair";
                c.ints["value_a"] = 0;
                c.ints["value_b"] = 1;
                break;
            case Family::EvenStaircase:
                c.notes["witness_kind"] = "value-pair";
                c.ints["value_a"] = 0;
                c.ints["value_b"] = 2;
                break;
            case Family::Xp:
            case Family::Yp:
                c.notes["witness_kind"] = "value-pair";
                c.ints["value_a"] = 0;
                c.ints["value_b"] = spec.tail.p;
                break;
            case Family::ZExample: {
                // Spacers at level m are {0, a_m} with a_m == 1 mod the level
                // prime; pick the least prime factor p' of p and the levels
                // whose rule consults p': there a_m is not divisible by p,
                // and such levels exist above every n.
                Int lpf = detail::least_prime_factor(p);
                Int idx = detail::prime_index(lpf);
                c.notes["witness_kind"] = "level-list";
                c.ints["prime"] = lpf;
                c.ints["prime_index"] = idx;
                const Int prefix_len = static_cast<Int>(spec.prefix.size());
                for (Int a = 0; a < 8; ++a) {
                    Int m = detail::cantor_pair(a, idx);
                    if (m < prefix_len) continue;
                    c.values.push_back(m);
                }
                c.notes["why"] =
                    "levels consulting this prime recur unboundedly; their big spacer "
                    "is 1 mod it while the small spacer is 0";
                return Verdict::refuted(std::move(c));
            }
        }
        c.ints["from_level"] = detail::mixed_pair_start(spec, budget);
        c.notes["why"] = "both values occur among the spacers of every listed-or-later level";
        return Verdict::refuted(std::move(c));
    }

    auto [n1, cls] = *scs;
    Int target = ((p - cls % p) % p + p) % p;
    auto rs = detail::length_residue_search(spec, p, n1, target, budget);
    Certificate c;
    c.ints["p"] = p;
    c.ints["residue_c"] = cls;
    if (rs.found) {
        c.rule = "factor-divisibility";
        c.ints["level_n"] = rs.level;
        return Verdict::proved(std::move(c));
    }
    c.rule = "residue-cycle-avoids";
    c.ints["from_level"] = n1;
    c.ints["target_residue"] = target;
    c.values = rs.orbit;
    if (rs.orbit_truncated) c.notes["orbit"] = "truncated";
    c.notes["why"] = "|v_n| mod p cycles through the listed residues and never meets -c";
    return Verdict::refuted(std::move(c));
}

namespace detail {

inline FactorCertificate certificate_from(const Certificate& c) {
    FactorCertificate fc;
    fc.p = c.ints.at("p");
    fc.level_n = c.ints.at("level_n");
    fc.residue_c = c.ints.at("residue_c");
    return fc;
}

inline std::vector<Int> divisors_of(Int g) {
    std::vector<Int> low, high;
    for (Int d = 1; d * d <= g; ++d) {
        if (g % d != 0) continue;
        low.push_back(d);
        if (d != g / d) high.push_back(g / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;  // ascending
}

}  // namespace detail

// Largest p with a Z/pZ factor, with its certificate; 1 with none when only
// the trivial factor exists. Bounded, non-degenerate specs only.
inline std::pair<Int, std::optional<FactorCertificate>> p_max(
    const ParamSpec& spec, const Budget& budget = default_budget()) {
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());
    if (vr.degenerate) throw InvalidSpec("degenerate spec: V is periodic");
    if (is_bounded(spec).status != Status::Proved)
        throw UnboundedSpacer("p_max requires a bounded spacer parameter");

    auto ev = eventual_spacers(spec);
    Int g = up_down_gcd(ev.values);  // gcd of pairwise differences
    auto divisors = detail::divisors_of(g);
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
        if (*it < 2) continue;
        Verdict v = has_finite_factor(spec, *it, budget);
        if (v.status == Status::Proved)
            return {*it, detail::certificate_from(*v.certificate)};
    }
    return {1, std::nullopt};
}

inline MEFReport mef(const ParamSpec& spec, const Budget& budget = default_budget()) {
    MEFReport r;
    auto vr = validate(spec);
    if (!vr.ok) throw InvalidSpec("invalid spec: " + vr.violations.front());
    if (vr.degenerate) throw InvalidSpec("degenerate spec: V is periodic");
    if (is_bounded(spec).status != Status::Proved) {
        r.kind = MEFReport::Trivial;
        r.note = "unbounded spacer parameter: maximal equicontinuous factor is trivial";
        return r;
    }
    auto ev = eventual_spacers(spec);
    Int g = up_down_gcd(ev.values);
    for (Int d : detail::divisors_of(g)) {
        if (d < 2) continue;
        Verdict v = has_finite_factor(spec, d, budget);
        if (v.status == Status::Proved) {
            r.divisors.push_back(d);
            auto fc = detail::certificate_from(*v.certificate);
            if (d > r.order) {
                r.order = d;
                r.certificate = fc;
            }
        }
    }
    if (r.order >= 2) {
        r.kind = MEFReport::Cyclic;
        r.note = "cyclic of order " + std::to_string(r.order);
    } else {
        r.kind = MEFReport::Trivial;
        r.note = "only the trivial factor exists";
    }
    return r;
}

// For unbounded specs: the largest p whose divisibility condition still
// holds (all eventual spacers and some |v_n| divisible by p). Not a factor
// report -- it is the obstruction used by mixing refutations.
inline std::optional<FactorCertificate> divisibility_obstruction(
    const ParamSpec& spec, const Budget& budget = default_budget()) {
    if (spec.tail.kind == TailRule::Periodic) return std::nullopt;  // bounded
    FamilyInfo info = family_info(spec.tail.family, spec.tail.p);
    if (info.spacer_modulus < 2) return std::nullopt;
    auto divisors = detail::divisors_of(info.spacer_modulus);
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
        if (*it < 2) continue;
        Verdict v = has_finite_factor(spec, *it, budget);
        if (v.status == Status::Proved)
            return detail::certificate_from(*v.certificate);
    }
    return std::nullopt;
}

// phi(window) = -k mod p over the anchored positions k of the decomposition.
// Well-defined exactly when all anchors agree mod p.
inline Int factor_map_eval(const ParamSpec& spec, Int p, const Decomposition& d,
                           const Budget& budget = default_budget()) {
    Verdict v = has_finite_factor(spec, p, budget);
    if (v.status != Status::Proved)
        throw InvalidSpec("factor map needs a Proved finite factor");
    Int witness_n = v.certificate->ints.at("level_n");
    if (d.level_n < witness_n)
        throw InvalidSpec("decomposition level below the factor's witnessing level");
    if (d.anchors.empty())
        throw NoAnchoredOccurrence("no anchored occurrence to evaluate the factor map");
    Int r = ((-d.anchors.front()) % p + p) % p;
    for (Int k : d.anchors)
        if (((-k) % p + p) % p != r)
            throw IllDefinedFactorMap("anchored positions disagree mod p");
    return r;
}

}  // namespace rankone
