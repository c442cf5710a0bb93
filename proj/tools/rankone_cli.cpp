// Command-line front end. Every subcommand loads a spec (file or --family
// shorthand), runs one analysis, and emits JSON (machine format) or text
// (human format, lossy). Exit codes: 0 ok, 1 validation error, 2 budget
// exhausted, 3 oracle verification failure.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rankone/rankone.hpp"

namespace {

using namespace rankone;
using json_io::json;

struct Options {
    std::string spec_path;
    std::string family;
    bool as_json = false;
    bool as_text = false;
    Int budget_override = 0;
    Int level = 0;
    Int context = -1;  // -1: pick a default where one exists
    Int max_len = 0;
    Int diff = 1;
    std::string word;
};

ParamSpec family_shorthand(const std::string& name) {
    std::string id = name;
    Int p = 0;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        id = name.substr(0, colon);
        try {
            p = std::stoll(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw InvalidSpec("--family: cannot read the p in \"" + name + "\"");
        }
    }
    if (id == "chacon") return chacon_spec();
    if (id == "staircase") return staircase_spec();
    if (id == "even_staircase") return even_staircase_spec();
    if (id == "z_example") return z_example_spec();
    if (id == "xp" || id == "yp") {
        if (p < 2) throw InvalidSpec("--family: " + id + " needs a modulus, e.g. " + id + ":2");
        return id == "xp" ? xp_spec(p) : yp_spec(p);
    }
    throw InvalidSpec("--family: unknown name \"" + name +
                      "\" (chacon|staircase|even_staircase|z_example|xp:p|yp:p)");
}

ParamSpec load_spec(const Options& opt) {
    if (!opt.family.empty() && !opt.spec_path.empty())
        throw InvalidSpec("give either a spec file or --family, not both");
    ParamSpec s;
    if (!opt.family.empty())
        s = family_shorthand(opt.family);
    else if (!opt.spec_path.empty())
        s = json_io::spec_from_file(opt.spec_path);
    else
        throw InvalidSpec("no spec: pass a spec file or --family");
    ValidationReport v = validate(s);
    if (!v.ok) {
        std::string msg = "invalid spec:";
        for (const auto& viol : v.violations) msg += "\n  " + viol;
        throw InvalidSpec(msg);
    }
    return s;
}

Budget make_budget(const Options& opt) {
    Budget b = default_budget();
    if (const char* env = std::getenv("RANKONE_BUDGET")) {
        try {
            Int n = std::stoll(env);
            if (n > 0) b.word_budget = b.gap_budget = n;
        } catch (const std::exception&) {
            // ignore junk in the environment; the flag is the documented path
        }
    }
    if (opt.budget_override > 0) b.word_budget = b.gap_budget = opt.budget_override;
    return b;
}

// Wrap a result in the report envelope. The timing field varies run to run;
// everything else is deterministic.
void emit(const Options& opt, const ParamSpec& spec, const std::string& command, json result,
          double ms, const std::string& text) {
    if (opt.as_text && !opt.as_json) {
        std::cout << text;
        return;
    }
    Budget b = make_budget(opt);
    json envelope{{"tool", "rankone"},
                  {"version", kVersion},
                  {"command", command},
                  {"spec", json_io::to_json(spec)},
                  {"budget", json{{"word_budget", b.word_budget}, {"gap_budget", b.gap_budget}}},
                  {"timing_ms", ms},
                  {"result", std::move(result)}};
    std::cout << envelope.dump(2) << "\n";
}

std::string verdict_line(const char* what, const Verdict& v) {
    std::string line = std::string(what) + ": " + to_string(v.status);
    if (v.certificate) {
        line += "  [" + v.certificate->rule;
        for (const auto& [k, x] : v.certificate->ints) line += " " + k + "=" + std::to_string(x);
        line += "]";
    }
    return line + "\n";
}

int run_report(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport r = analyze(spec, b);
    json result = json_io::to_json(r);

    // small empirical section: saturation at the first levels, cheap caps
    json empirical = json::array();
    std::string emp_text;
    for (Int n = 0; n <= 2; ++n) {
        try {
            Int L = 200;
            Int M = affordable_context_level(spec, n, default_context_level(spec, n, L, b), b);
            SaturationReport sr = empirical_mixing_report(spec, n, L, M, b);
            empirical.push_back(json_io::to_json(sr));
            emp_text += "  level " + std::to_string(n) + ": cap " + std::to_string(sr.cap) +
                        (sr.h_prime ? ", saturated from " + std::to_string(*sr.h_prime) : "") +
                        (sr.residue_obstructions.empty()
                             ? ""
                             : ", residue-locked mod " +
                                   std::to_string(sr.residue_obstructions.front().first)) +
                        "\n";
        } catch (const BudgetExceeded&) {
            break;  // deterministic: depends only on spec and budget
        }
    }
    result["empirical"] = std::move(empirical);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();

    std::string text;
    text += "bounded: " + std::string(to_string(r.bounded.status)) + "\n";
    if (r.p_max_value) text += "p_max: " + std::to_string(*r.p_max_value) + "\n";
    if (r.obstruction)
        text += "divisibility obstruction: p = " + std::to_string(r.obstruction->p) + "\n";
    text += "mef: " + std::string(r.mef.kind == MEFReport::Trivial ? "trivial" : "cyclic of order " +
                                  std::to_string(r.mef.order)) + "\n";
    text += verdict_line("weak mixing", r.weak_mixing);
    text += verdict_line("mixing", r.mixing);
    if (r.known_weak_mixing)
        text += "known classification: weak mixing " + std::string(to_string(*r.known_weak_mixing)) +
                (r.known_mixing ? ", mixing " + std::string(to_string(*r.known_mixing)) : "") + "\n";
    if (!emp_text.empty()) text += "empirical saturation:\n" + emp_text;
    emit(opt, spec, "report", std::move(result), ms, text);
    return 0;
}

int run_word(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    auto t0 = std::chrono::steady_clock::now();
    std::string w = build_word(spec, opt.level, b);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    json result{{"level", opt.level}, {"length", static_cast<Int>(w.size())}, {"word", w}};
    emit(opt, spec, "word", std::move(result), ms, w + "\n");
    return 0;
}

int run_gaps(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    Int M = opt.context >= 0 ? opt.context : opt.level + 3;
    auto t0 = std::chrono::steady_clock::now();
    GapSequence gs = gap_sequence(spec, opt.level, M, b);
    std::vector<Int> flat = gs.flat(b);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    json runs = json::array();
    for (auto [v, c] : gs.runs) runs.push_back(json{{"value", v}, {"count", c}});
    json result{{"level_n", gs.base_n},
                {"context_M", gs.top_m},
                {"total_gaps", gs.total_gaps},
                {"gap_sum", gs.gap_sum},
                {"runs", std::move(runs)},
                {"gaps", flat}};
    std::string text;
    for (size_t i = 0; i < flat.size(); ++i)
        text += (i ? " " : "") + std::to_string(flat[i]);
    emit(opt, spec, "gaps", std::move(result), ms, text + "\n");
    return 0;
}

int run_blocks(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    Int L = opt.max_len > 0 ? opt.max_len : 100;
    Int M = opt.context >= 0 ? opt.context
                           : affordable_context_level(
                                 spec, opt.level, default_context_level(spec, opt.level, L, b), b);
    auto t0 = std::chrono::steady_clock::now();
    SaturationReport sr = empirical_mixing_report(spec, opt.level, L, M, b);
    LengthSet ls = block_lengths(spec, opt.level, L, M, b);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    json result{{"lengths", json_io::to_json(ls)}, {"saturation", json_io::to_json(sr)}};
    std::string text = "lengths (level " + std::to_string(opt.level) + ", context " +
                       std::to_string(M) + ", max " + std::to_string(L) + "):";
    for (Int d : ls.lengths) text += " " + std::to_string(d);
    text += "\n";
    for (const auto& [p, c] : ls.residue_classes)
        text += "note: every length is " + std::to_string(c) + " mod " + std::to_string(p) + "\n";
    if (ls.saturated_from)
        text += "saturated from " + std::to_string(*ls.saturated_from) + " up to " +
                std::to_string(sr.cap) + "\n";
    emit(opt, spec, "blocks", std::move(result), ms, text);
    return 0;
}

int run_witness(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    auto t0 = std::chrono::steady_clock::now();
    WitnessPair w = witness_difference(spec, opt.level, opt.diff, std::nullopt, b);
    oracle::ReplayResult rr = oracle::verify_witness(spec, w, b);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    json result{{"pair", json_io::to_json(w)}, {"replay", json_io::to_json(rr)}};
    std::string text;
    constexpr Int kRenderCap = 2000;
    for (const Block* blk : {&w.alpha, &w.beta}) {
        const char* nm = blk == &w.alpha ? "alpha" : "beta";
        text += std::string(nm) + " (length " + std::to_string(blk->total_length) + ")";
        if (blk->total_length <= kRenderCap) {
            std::string rendered = render_block(spec, *blk, b);
            result[nm] = rendered;
            text += ": " + rendered;
        }
        text += "\n";
    }
    text += "difference: " + std::to_string(w.target) + ", verified: " +
            (rr.pass ? "yes" : "NO") + "\n";
    emit(opt, spec, "witness", std::move(result), ms, text);
    return rr.pass ? 0 : 3;
}

int run_parse(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    std::string w = opt.word;
    if (!w.empty() && w[0] == '@') {
        std::ifstream in(w.substr(1));
        if (!in) throw InvalidSpec("cannot open word file: " + w.substr(1));
        std::getline(in, w);
    }
    for (char ch : w)
        if (ch != '0' && ch != '1') throw InvalidSpec("word must be over {0,1}");
    Int M = opt.context >= 0 ? opt.context : opt.level + 4;
    auto t0 = std::chrono::steady_clock::now();
    Decomposition d = expected_occurrences(w, spec, opt.level, M, b);
    bool block = is_n_block(w, spec, opt.level, M, b);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    json result{{"decomposition", json_io::to_json(d)}, {"is_n_block", block}};
    std::string text = "anchors at:";
    for (Int a : d.anchors) text += " " + std::to_string(a);
    text += "\nleading ones: " + std::to_string(d.leading_ones) +
            ", trailing ones: " + std::to_string(d.trailing_ones) +
            "\nn-block: " + (block ? "yes" : "no") + "\n";
    emit(opt, spec, "parse", std::move(result), ms, text);
    return 0;
}

int run_factors(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    auto t0 = std::chrono::steady_clock::now();
    MEFReport m = mef(spec, b);
    json result{{"mef", json_io::to_json(m)}};
    std::string text;
    if (is_bounded(spec).status == Status::Proved) {
        auto [pm, cert] = p_max(spec, b);
        result["p_max"] = pm;
        result["certificate"] = cert ? json_io::to_json(*cert) : json(nullptr);
        text += "p_max: " + std::to_string(pm) + "\n";
        if (cert)
            text += "certificate: level " + std::to_string(cert->level_n) + ", residue " +
                    std::to_string(cert->residue_c) + " mod " + std::to_string(cert->p) + "\n";
    } else {
        auto ob = divisibility_obstruction(spec, b);
        result["p_max"] = json(nullptr);
        result["obstruction"] = ob ? json_io::to_json(*ob) : json(nullptr);
        if (ob)
            text += "divisibility obstruction: p = " + std::to_string(ob->p) + " from level " +
                    std::to_string(ob->level_n) + "\n";
    }
    result["divisors"] = m.divisors;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    text += "mef: " + std::string(m.kind == MEFReport::Trivial
                                      ? "trivial"
                                      : "cyclic of order " + std::to_string(m.order)) + "\n";
    if (!m.divisors.empty()) {
        text += "factor orders:";
        for (Int d : m.divisors) text += " " + std::to_string(d);
        text += "\n";
    }
    emit(opt, spec, "factors", std::move(result), ms, text);
    return 0;
}

int run_verify(const Options& opt) {
    ParamSpec spec = load_spec(opt);
    Budget b = make_budget(opt);
    Int n_max = opt.level > 0 ? opt.level : 2;
    Int M_max = opt.context >= 0 ? opt.context : n_max + 3;
    auto t0 = std::chrono::steady_clock::now();
    oracle::CheckReport suite = oracle::check_lemma_suite(spec, n_max, M_max, b);

    AnalysisReport r = analyze(spec, b);
    json replays = json::array();
    bool replays_ok = true;
    std::string text;
    auto replay = [&](const char* what, const Verdict& v) {
        if (!v.certificate) return;
        oracle::ReplayResult rr = oracle::verify_certificate(spec, v, b);
        replays_ok = replays_ok && rr.pass;
        replays.push_back(json{{"verdict", what}, {"pass", rr.pass}, {"detail", rr.detail}});
        text += std::string(rr.pass ? "pass" : "FAIL") + "  replay " + what + ": " + rr.detail +
                "\n";
    };
    replay("bounded", r.bounded);
    replay("weak_mixing", r.weak_mixing);
    replay("mixing", r.mixing);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();

    int ran = 0, passed = 0;
    for (const auto& it : suite.items) {
        if (!it.ran) continue;
        ++ran;
        if (it.pass) ++passed;
        else text += "FAIL  " + it.name + ": " + it.detail + "\n";
    }
    text += "suite: " + std::to_string(passed) + "/" + std::to_string(ran) + " checks pass\n";
    bool ok = suite.all_pass && replays_ok;
    text += ok ? "verify: ok\n" : "verify: FAILED\n";

    json result{{"suite", json_io::to_json(suite)},
                {"certificate_replays", std::move(replays)},
                {"ok", ok}};
    emit(opt, spec, "verify", std::move(result), ms, text);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-one subshift analyzer"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_positional_spec = true) {
        if (with_positional_spec)
            sub->add_option("spec", opt.spec_path, "spec file (JSON)");
        sub->add_option("--family", opt.family,
                        "built-in spec: chacon|staircase|even_staircase|z_example|xp:p|yp:p");
        sub->add_flag("--json", opt.as_json, "machine-readable report (default)");
        sub->add_flag("--text", opt.as_text, "human-readable summary");
        sub->add_option("--budget", opt.budget_override,
                        "symbol/gap budget (overrides RANKONE_BUDGET)");
    };

    auto* report = app.add_subcommand("report", "full analysis of a spec");
    add_common(report);

    auto* word = app.add_subcommand("word", "the canonical word v_n");
    add_common(word);
    word->add_option("--level", opt.level, "level n")->required();

    auto* gaps = app.add_subcommand("gaps", "gaps between expected occurrences of v_n in v_M");
    add_common(gaps);
    gaps->add_option("--level", opt.level, "level n")->required();
    gaps->add_option("--context", opt.context, "context level M (default n+3)");

    auto* blocks = app.add_subcommand("blocks", "achievable n-block lengths and saturation");
    add_common(blocks);
    blocks->add_option("--level", opt.level, "level n")->required();
    blocks->add_option("--context", opt.context, "context level M (default: auto)");
    blocks->add_option("--max-len", opt.max_len, "length cap L (default 100)");

    auto* witness = app.add_subcommand("witness",
                                       "two n-blocks with a prescribed length difference");
    add_common(witness);
    witness->add_option("--level", opt.level, "level n")->required();
    witness->add_option("--diff", opt.diff, "difference multiplier h (default 1)");

    auto* parse = app.add_subcommand("parse", "expected-occurrence decomposition of a word");
    add_common(parse, false);
    parse->add_option("word", opt.word, "0/1 word, or @file with the word on one line")
        ->required();
    parse->add_option("--spec", opt.spec_path, "spec file (JSON)");
    parse->add_option("--level", opt.level, "level n")->required();
    parse->add_option("--context", opt.context, "context level M (default n+4)");

    auto* factors = app.add_subcommand("factors", "finite factors and the equicontinuous factor");
    add_common(factors);

    auto* verify = app.add_subcommand("verify", "oracle suite + certificate replays");
    add_common(verify);
    verify->add_option("--level", opt.level, "deepest base level to check (default 2)");
    verify->add_option("--context", opt.context, "deepest context level (default level+3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's per-error exit codes onto the documented contract:
        // 0 for --help, 1 for anything wrong with the arguments
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (report->parsed()) return run_report(opt);
        if (word->parsed()) return run_word(opt);
        if (gaps->parsed()) return run_gaps(opt);
        if (blocks->parsed()) return run_blocks(opt);
        if (witness->parsed()) return run_witness(opt);
        if (parse->parsed()) return run_parse(opt);
        if (factors->parsed()) return run_factors(opt);
        if (verify->parsed()) return run_verify(opt);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const ReplayBudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
