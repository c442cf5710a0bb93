// JSON bridge: the spec file schema and the report serializers. nlohmann's
// std::map-backed objects keep keys sorted, which makes every emitted report
// byte-stable under parse -> dump -- the round-trip tests rely on it.
#pragma once

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oracle.hpp"

namespace rankone {
namespace json_io {

using json = nlohmann::json;

// ---- spec input ---------------------------------------------------------------

namespace detail {

inline std::string type_name(const json& j) {
    return j.type_name();  // "object", "array", "number", ...
}

inline const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw InvalidSpec(path + ": expected an object, got " + type_name(j));
    auto it = j.find(key);
    if (it == j.end()) throw InvalidSpec(path + ": missing field \"" + key + "\"");
    return *it;
}

inline Int need_int(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer())
        throw InvalidSpec(path + "." + key + ": expected an integer, got " + type_name(v));
    return v.get<Int>();
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known,
                           const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InvalidSpec(path + ": unknown field \"" + it.key() + "\"");
    }
}

inline std::optional<Family> family_from_name(const std::string& id) {
    for (Family f : {Family::Chacon, Family::Staircase, Family::EvenStaircase, Family::ZExample,
                     Family::Xp, Family::Yp})
        if (id == family_name(f)) return f;
    return std::nullopt;
}

inline LevelParams level_from_json(const json& j, const std::string& path) {
    reject_unknown(j, {"q", "spacers"}, path);
    LevelParams lp;
    lp.q = need_int(j, "q", path);
    const json& sp = need(j, "spacers", path);
    if (!sp.is_array()) throw InvalidSpec(path + ".spacers: expected an array");
    for (size_t i = 0; i < sp.size(); ++i) {
        if (!sp[i].is_number_integer())
            throw InvalidSpec(path + ".spacers[" + std::to_string(i) + "]: expected an integer");
        lp.spacers.push_back(sp[i].get<Int>());
    }
    return lp;
}

}  // namespace detail

inline ParamSpec spec_from_json(const json& j) {
    using detail::need;
    using detail::need_int;
    detail::reject_unknown(j, {"seed_zeros", "prefix", "tail"}, "spec");
    ParamSpec s;
    s.seed_zeros = need_int(j, "seed_zeros", "spec");
    if (auto it = j.find("prefix"); it != j.end()) {
        if (!it->is_array()) throw InvalidSpec("spec.prefix: expected an array");
        for (size_t i = 0; i < it->size(); ++i)
            s.prefix.push_back(
                detail::level_from_json((*it)[i], "spec.prefix[" + std::to_string(i) + "]"));
    }
    const json& tail = need(j, "tail", "spec");
    const json& kind = need(tail, "kind", "spec.tail");
    if (!kind.is_string()) throw InvalidSpec("spec.tail.kind: expected a string");
    std::string k = kind.get<std::string>();
    if (k == "periodic") {
        detail::reject_unknown(tail, {"kind", "levels"}, "spec.tail");
        const json& lv = need(tail, "levels", "spec.tail");
        if (!lv.is_array() || lv.empty())
            throw InvalidSpec("spec.tail.levels: expected a non-empty array");
        std::vector<LevelParams> levels;
        for (size_t i = 0; i < lv.size(); ++i)
            levels.push_back(
                detail::level_from_json(lv[i], "spec.tail.levels[" + std::to_string(i) + "]"));
        s.tail = TailRule::periodic(std::move(levels));
    } else if (k == "family") {
        detail::reject_unknown(tail, {"kind", "id", "p"}, "spec.tail");
        const json& id = need(tail, "id", "spec.tail");
        if (!id.is_string()) throw InvalidSpec("spec.tail.id: expected a string");
        auto fam = detail::family_from_name(id.get<std::string>());
        if (!fam)
            throw InvalidSpec("spec.tail.id: unknown family \"" + id.get<std::string>() + "\"");
        Int p = 0;
        if (tail.contains("p")) p = need_int(tail, "p", "spec.tail");
        if ((*fam == Family::Xp || *fam == Family::Yp) && p < 2)
            throw InvalidSpec("spec.tail.p: xp/yp need p >= 2");
        s.tail = TailRule::family_tail(*fam, p);
    } else {
        throw InvalidSpec("spec.tail.kind: expected \"periodic\" or \"family\", got \"" + k + "\"");
    }
    return s;
}

inline ParamSpec spec_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidSpec(std::string("spec is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

inline ParamSpec spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return spec_from_string(ss.str());
}

// ---- serializers --------------------------------------------------------------

inline json to_json(const LevelParams& lp) {
    return json{{"q", lp.q}, {"spacers", lp.spacers}};
}

inline json to_json(const ParamSpec& s) {
    json prefix = json::array();
    for (const auto& lp : s.prefix) prefix.push_back(to_json(lp));
    json tail;
    if (s.tail.kind == TailRule::Periodic) {
        json levels = json::array();
        for (const auto& lp : s.tail.levels) levels.push_back(to_json(lp));
        tail = json{{"kind", "periodic"}, {"levels", std::move(levels)}};
    } else {
        tail = json{{"kind", "family"}, {"id", family_name(s.tail.family)}};
        if (s.tail.family == Family::Xp || s.tail.family == Family::Yp) tail["p"] = s.tail.p;
    }
    return json{{"seed_zeros", s.seed_zeros}, {"prefix", std::move(prefix)},
                {"tail", std::move(tail)}};
}

inline json to_json(Status s) { return json(to_string(s)); }

inline json to_json(const Certificate& c) {
    return json{{"rule", c.rule}, {"ints", c.ints}, {"notes", c.notes}, {"values", c.values}};
}

inline json to_json(const Verdict& v) {
    json j{{"status", to_json(v.status)}};
    j["certificate"] = v.certificate ? to_json(*v.certificate) : json(nullptr);
    return j;
}

inline json to_json(const ValidationReport& r) {
    return json{{"ok", r.ok}, {"degenerate", r.degenerate}, {"violations", r.violations}};
}

inline json to_json(const FactorCertificate& c) {
    return json{{"p", c.p}, {"level_n", c.level_n}, {"residue_c", c.residue_c}};
}

inline json to_json(const MEFReport& m) {
    json j{{"kind", m.kind == MEFReport::Trivial ? "trivial" : "cyclic"},
           {"order", m.order},
           {"divisors", m.divisors},
           {"note", m.note}};
    j["certificate"] = m.certificate ? to_json(*m.certificate) : json(nullptr);
    return j;
}

inline json residue_classes_json(const std::vector<std::pair<Int, Int>>& rc) {
    json arr = json::array();
    for (const auto& [p, c] : rc) arr.push_back(json{{"p", p}, {"c", c}});
    return arr;
}

inline json to_json(const LengthSet& ls) {
    json j{{"level_n", ls.level_n},
           {"context_M", ls.context_M},
           {"max_len", ls.max_len},
           {"lengths", ls.lengths},
           {"residue_classes", residue_classes_json(ls.residue_classes)},
           {"residue_cap", ls.residue_cap}};
    j["largest_missing"] = ls.largest_missing ? json(*ls.largest_missing) : json(nullptr);
    j["saturated_from"] = ls.saturated_from ? json(*ls.saturated_from) : json(nullptr);
    return j;
}

inline json to_json(const SpacerCensus& c) {
    return json{{"horizon", c.horizon},
                {"values", c.values},
                {"density", c.density},
                {"complement", c.complement},
                {"eventual_values", c.eventual_values},
                {"eventual_all_multiples", c.eventual_all_multiples},
                {"eventual_modulus", c.eventual_modulus},
                {"cofinite", c.cofinite},
                {"cofinite_from", c.cofinite_from}};
}

inline json to_json(const Decomposition& d) {
    return json{{"level_n", d.level_n},
                {"window", d.window},
                {"anchors", d.anchors},
                {"leading_ones", d.leading_ones},
                {"trailing_ones", d.trailing_ones}};
}

inline json to_json(const Block& b) {
    return json{{"level_n", b.level_n}, {"gaps", b.gaps}, {"total_length", b.total_length}};
}

inline json to_json(const WitnessPair& w) {
    return json{{"alpha", to_json(w.alpha)},
                {"beta", to_json(w.beta)},
                {"target", w.target},
                {"context_level", w.context_level}};
}

inline json to_json(const SaturationReport& r) {
    json j{{"level_n", r.level_n},
           {"max_len", r.max_len},
           {"context_M", r.context_M},
           {"cap", r.cap},
           {"residue_obstructions", residue_classes_json(r.residue_obstructions)},
           {"audit_modulus", r.audit_modulus},
           {"length_mod_audit", r.length_mod_audit},
           {"scope_note", r.scope_note}};
    j["largest_hole"] = r.largest_hole ? json(*r.largest_hole) : json(nullptr);
    j["h_prime"] = r.h_prime ? json(*r.h_prime) : json(nullptr);
    return j;
}

inline json to_json(const AnalysisReport& r) {
    json j{{"validation", to_json(r.validation)},
           {"bounded", to_json(r.bounded)},
           {"mef", to_json(r.mef)},
           {"weak_mixing", to_json(r.weak_mixing)},
           {"mixing", to_json(r.mixing)},
           {"known_note", r.known_note}};
    j["p_max"] = r.p_max_value ? json(*r.p_max_value) : json(nullptr);
    j["p_max_certificate"] = r.p_max_certificate ? to_json(*r.p_max_certificate) : json(nullptr);
    j["obstruction"] = r.obstruction ? to_json(*r.obstruction) : json(nullptr);
    j["known_weak_mixing"] = r.known_weak_mixing ? to_json(*r.known_weak_mixing) : json(nullptr);
    j["known_mixing"] = r.known_mixing ? to_json(*r.known_mixing) : json(nullptr);
    return j;
}

inline json to_json(const oracle::CheckItem& it) {
    return json{{"name", it.name}, {"pass", it.pass}, {"ran", it.ran}, {"detail", it.detail}};
}

inline json to_json(const oracle::CheckReport& r) {
    json items = json::array();
    for (const auto& it : r.items) items.push_back(to_json(it));
    return json{{"items", std::move(items)}, {"all_pass", r.all_pass}};
}

inline json to_json(const oracle::ReplayResult& r) {
    return json{{"pass", r.pass}, {"detail", r.detail}};
}

}  // namespace json_io
}  // namespace rankone
