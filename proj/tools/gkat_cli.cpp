#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "gkat/equivalence.hpp"
#include "gkat/generate.hpp"
#include "gkat/proofcheck.hpp"
#include "gkat/small_step.hpp"
#include "gkat/solve.hpp"
#include "gkat/translate.hpp"

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitInequivalent = 1;
constexpr int kExitError = 2;

std::size_t max_tests_cap() {
    if (const char* env = std::getenv("GKAT_MAX_TESTS")) {
        return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    }
    return gkat::kDefaultMaxTests;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gkat::Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gkat::ParsedFile load_program(const std::string& path) {
    return gkat::parse_file_header(read_file(path), max_tests_cap());
}

std::string atom_str(gkat::Atom a, const gkat::TestUniverse& u) {
    return gkat::render_bexp(gkat::bexp_of_atom(a, u));
}

void print_verdict(const gkat::EquivVerdict& v, const gkat::TestUniverse& u, bool as_json) {
    if (as_json) {
        std::cout << gkat::verdict_to_json(v).dump(2) << "\n";
        return;
    }
    if (v.equivalent) {
        std::cout << "equivalent\n";
        return;
    }
    std::cout << "inequivalent\n";
    const gkat::Trace& t = v.counterexample;
    std::cout << "after:";
    if (t.steps.empty()) std::cout << " (start)";
    for (const auto& s : t.steps) std::cout << " " << atom_str(s.atom, u) << "|" << s.action;
    std::cout << "\nat atom " << atom_str(t.verdict_atom, u) << ": "
              << gkat::disagreement_name(t.kind) << "\n";
    if (v.accepted_by != 0) {
        std::cout << "trace accepted only by side " << v.accepted_by << ":";
        for (const auto& s : v.accepted_trace) {
            std::cout << " " << atom_str(s.atom, u) << "|" << s.action;
        }
        std::cout << "\n";
    }
}

int cmd_check(const std::string& file1, const std::string& file2, const std::string& semantics,
              const std::string& syntax, bool as_json) {
    gkat::ParsedFile p1 = load_program(file1);
    gkat::ParsedFile p2 = load_program(file2);
    if (!(p1.ctx == p2.ctx)) {
        throw gkat::UniverseError("the two files declare different tests or actions");
    }
    gkat::EquivVerdict v;
    if (syntax == "skipfree") {
        gkat::SkipFreeExpP e1 = gkat::parse_skipfree(p1.body, p1.ctx);
        gkat::SkipFreeExpP e2 = gkat::parse_skipfree(p2.body, p2.ctx);
        if (semantics == "lang") {
            v = gkat::lang_equiv(e1, e2, p1.ctx);
        } else {
            gkat::SkipFreeAutomaton a1 = gkat::derive_skipfree(e1, p1.ctx);
            gkat::SkipFreeAutomaton a2 = gkat::derive_skipfree(e2, p2.ctx);
            v = gkat::bisim_skipfree(a1, a1.start, a2, a2.start);
        }
    } else if (syntax == "star") {
        if (semantics == "lang") {
            throw gkat::Error("language semantics is available for skip-free programs only");
        }
        gkat::Lts l1 = gkat::derive_star(gkat::parse_star(p1.body, p1.ctx), p1.ctx);
        gkat::Lts l2 = gkat::derive_star(gkat::parse_star(p2.body, p2.ctx), p2.ctx);
        v = gkat::bisim_lts(l1, l1.start, l2, l2.start);
    } else {
        if (semantics == "lang") {
            throw gkat::Error("language semantics is available for skip-free programs only");
        }
        gkat::GkatAutomaton g1 = gkat::derive_gkat(gkat::parse_gkat(p1.body, p1.ctx), p1.ctx);
        gkat::GkatAutomaton g2 = gkat::derive_gkat(gkat::parse_gkat(p2.body, p2.ctx), p2.ctx);
        v = gkat::bisim_gkat(g1, g1.start, g2, g2.start);
    }
    print_verdict(v, p1.ctx.universe, as_json);
    return v.equivalent ? kExitEquivalent : kExitInequivalent;
}

int cmd_translate(const std::string& file, const std::string& to, bool verify) {
    gkat::ParsedFile p = load_program(file);
    if (to == "star") {
        gkat::SkipFreeExpP e = gkat::parse_skipfree(p.body, p.ctx);
        gkat::StarExpP r = gkat::gtr(e, p.ctx);
        std::cout << gkat::render_star(r) << "\n";
        if (verify) {
            gkat::Lts derived = gkat::derive_star(r, p.ctx);
            gkat::Lts original = gkat::grph_star(gkat::derive_skipfree(e, p.ctx));
            if (!gkat::bisim_lts(derived, derived.start, original, original.start).equivalent) {
                std::cout << "verification failed\n";
                return kExitInequivalent;
            }
            std::cout << "verified: bisimilar to the source\n";
        }
    } else {
        gkat::StarExpP r = gkat::parse_star(p.body, p.ctx);
        gkat::SkipFreeExpP e = gkat::rtg(r, p.ctx);
        std::cout << gkat::render_skipfree(e) << "\n";
        if (verify) {
            gkat::Lts original = gkat::derive_star(r, p.ctx);
            gkat::Lts back = gkat::grph_star(gkat::derive_skipfree(e, p.ctx));
            if (!gkat::bisim_lts(original, original.start, back, back.start).equivalent) {
                std::cout << "verification failed\n";
                return kExitInequivalent;
            }
            std::cout << "verified: bisimilar to the source\n";
        }
    }
    return kExitEquivalent;
}

int cmd_prune(const std::string& file) {
    gkat::ParsedFile p = load_program(file);
    gkat::SkipFreeExpP e = gkat::parse_skipfree(p.body, p.ctx);
    std::cout << gkat::render_skipfree(gkat::prune_expr(e, p.ctx)) << "\n";
    return kExitEquivalent;
}

int cmd_solve(const std::string& file, bool as_json) {
    nlohmann::json j = nlohmann::json::parse(read_file(file));
    gkat::Context ctx;
    ctx.universe = gkat::TestUniverse(j.at("tests").get<std::vector<std::string>>(),
                                      max_tests_cap());
    ctx.actions = j.at("actions").get<std::vector<std::string>>();
    std::vector<std::vector<bool>> tags;
    gkat::Lts lts = gkat::lts_from_json(j, ctx, &tags);

    bool tagged = false;
    for (const auto& v : tags) {
        for (bool b : v) tagged = tagged || b;
    }
    gkat::LayeredLts layered;
    if (tagged) {
        layered.lts = lts;
        layered.entry = tags;
        gkat::LayeringReport rep = gkat::check_well_layered(layered);
        if (!rep.ok) {
            std::cout << "not well-layered: " << rep.condition << " (" << rep.witness << ")\n";
            return kExitInequivalent;
        }
    } else if (!gkat::find_layering(lts, layered)) {
        std::cout << "no well-layered labelling exists\n";
        return kExitInequivalent;
    }
    gkat::SolutionMap sol = gkat::canonical_solution(layered);
    if (as_json) {
        nlohmann::json out;
        out["ok"] = true;
        out["states"] = nlohmann::json::array();
        for (std::size_t s = 0; s < lts.state_count(); ++s) {
            out["states"].push_back({{"id", s},
                                     {"label", lts.labels[s]},
                                     {"expression", gkat::render_star(sol.assignment[s])}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (std::size_t s = 0; s < lts.state_count(); ++s) {
            std::cout << lts.labels[s] << ": " << gkat::render_star(sol.assignment[s]) << "\n";
        }
        std::cout << "verified: every state is bisimilar to its expression\n";
    }
    return kExitEquivalent;
}

int cmd_prove(const std::string& file) {
    gkat::ProofScript script = gkat::script_from_json(nlohmann::json::parse(read_file(file)));
    gkat::CheckResult r = gkat::check_script(script);
    if (r.ok) {
        std::cout << "ok\n";
        return kExitEquivalent;
    }
    std::cout << "step " << r.failed_step << ": " << r.message << "\n";
    return kExitInequivalent;
}

int cmd_automaton(const std::string& file, const std::string& syntax, const std::string& format,
                  bool embed) {
    gkat::ParsedFile p = load_program(file);
    if (syntax == "skipfree") {
        gkat::SkipFreeAutomaton a =
            gkat::derive_skipfree(gkat::parse_skipfree(p.body, p.ctx), p.ctx);
        if (embed) {
            gkat::GkatAutomaton g = gkat::embed_automaton(a);
            std::cout << (format == "dot" ? gkat::gkat_to_dot(g)
                                          : gkat::gkat_to_json(g).dump(2) + "\n");
        } else {
            std::cout << (format == "dot" ? gkat::skipfree_to_dot(a)
                                          : gkat::skipfree_to_json(a).dump(2) + "\n");
        }
    } else if (syntax == "star") {
        gkat::Lts l = gkat::derive_star(gkat::parse_star(p.body, p.ctx), p.ctx);
        std::cout << (format == "dot" ? gkat::lts_to_dot(l) : gkat::lts_to_json(l).dump(2) + "\n");
    } else {
        gkat::GkatAutomaton g = gkat::derive_gkat(gkat::parse_gkat(p.body, p.ctx), p.ctx);
        std::cout << (format == "dot" ? gkat::gkat_to_dot(g)
                                      : gkat::gkat_to_json(g).dump(2) + "\n");
    }
    return kExitEquivalent;
}

struct FuzzFailure {
    std::size_t case_index;
    std::string property;
    std::string detail;
};

int cmd_fuzz(std::uint64_t seed, std::size_t count, std::size_t tests, std::size_t actions,
             std::size_t depth) {
    gkat::Context ctx = gkat::small_context(tests, actions);
    for (std::size_t i = 0; i < count; ++i) {
        gkat::Rng rng(seed * 0x9E3779B97F4A7C15ULL + i);
        gkat::SkipFreeExpP e = gkat::random_skipfree(rng, ctx, depth);
        gkat::SkipFreeExpP f = gkat::random_skipfree(rng, ctx, depth);
        auto report = [&](const char* property, const std::string& detail) {
            std::cout << "case " << i << ": " << property << " failed\n  e = "
                      << gkat::render_skipfree(e) << "\n  f = " << gkat::render_skipfree(f)
                      << "\n  " << detail << "\n";
            return kExitInequivalent;
        };

        gkat::SkipFreeAutomaton ae = gkat::derive_skipfree(e, ctx);
        gkat::StarExpP r = gkat::gtr(e, ctx);
        gkat::Lts lr = gkat::derive_star(r, ctx);
        gkat::Lts le = gkat::grph_star(ae);
        if (!gkat::bisim_lts(lr, lr.start, le, le.start).equivalent) {
            return report("forward translation bisimilarity", gkat::render_star(r));
        }
        if (!gkat::is_deterministic_star(r, ctx)) {
            return report("translation determinism", gkat::render_star(r));
        }
        gkat::SkipFreeExpP back = gkat::rtg(r, ctx);
        gkat::SkipFreeAutomaton ab = gkat::derive_skipfree(back, ctx);
        if (!gkat::bisim_skipfree(ae, ae.start, ab, ab.start).equivalent) {
            return report("round-trip bisimilarity", gkat::render_skipfree(back));
        }
        gkat::SkipFreeExpP pruned = gkat::prune_expr(e, ctx);
        if (!gkat::lang_equiv(e, pruned, ctx).equivalent) {
            return report("pruning preserves language", gkat::render_skipfree(pruned));
        }
        gkat::SkipFreeAutomaton af = gkat::derive_skipfree(f, ctx);
        bool bisim = gkat::bisim_skipfree(ae, ae.start, af, af.start).equivalent;
        bool lang = gkat::lang_equiv(e, f, ctx).equivalent;
        if (bisim && !lang) {
            return report("bisimilarity implies language equivalence", "");
        }
        gkat::GkatAutomaton ge = gkat::derive_gkat(gkat::embed_syntax(e), ctx);
        gkat::GkatAutomaton gm = gkat::embed_automaton(ae);
        if (!gkat::bisim_gkat(ge, ge.start, gm, gm.start).equivalent) {
            return report("embedding commutes with derivation", "");
        }
    }
    std::cout << count << " cases, all properties hold (seed " << seed << ")\n";
    return kExitEquivalent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivalence tooling for skip-free guarded programs and star expressions"};
    app.require_subcommand(1);

    std::string file1, file2, semantics = "bisim", syntax = "skipfree", to, format = "json";
    bool as_json = false, verify = false, embed = false;
    std::uint64_t seed = 0;
    std::size_t count = 100, tests = 2, actions = 2, depth = 4;

    CLI::App* check = app.add_subcommand("check", "Decide equivalence of two programs");
    check->add_option("file1", file1, "First program file")->required();
    check->add_option("file2", file2, "Second program file")->required();
    check->add_option("--semantics", semantics, "bisim or lang (default bisim)")
        ->check(CLI::IsMember({"bisim", "lang"}));
    check->add_option("--syntax", syntax, "skipfree, star, or gkat (default skipfree)")
        ->check(CLI::IsMember({"skipfree", "star", "gkat"}));
    check->add_flag("--json", as_json, "Emit the verdict as JSON");

    CLI::App* translate = app.add_subcommand("translate", "Translate between the two syntaxes");
    translate->add_option("file", file1, "Program file")->required();
    translate->add_option("--to", to, "Target syntax: star or skipfree")
        ->required()
        ->check(CLI::IsMember({"star", "skipfree"}));
    translate->add_flag("--verify", verify, "Cross-check the translation by bisimilarity");

    CLI::App* prune = app.add_subcommand("prune", "Remove dead code from a skip-free program");
    prune->add_option("file", file1, "Program file")->required();

    CLI::App* solve = app.add_subcommand("solve", "Solve a well-layered LTS into expressions");
    solve->add_option("file", file1, "LTS JSON file (with tests/actions declarations)")
        ->required();
    solve->add_flag("--json", as_json, "Emit the solution as JSON");

    CLI::App* prove = app.add_subcommand("prove", "Check an equational proof script");
    prove->add_option("file", file1, "Proof script JSON file")->required();

    CLI::App* automaton = app.add_subcommand("automaton", "Export the derived automaton");
    automaton->add_option("file", file1, "Program file")->required();
    automaton->add_option("--syntax", syntax, "skipfree, star, or gkat (default skipfree)")
        ->check(CLI::IsMember({"skipfree", "star", "gkat"}));
    automaton->add_option("--format", format, "json or dot (default json)")
        ->check(CLI::IsMember({"json", "dot"}));
    automaton->add_flag("--embed", embed, "Export the embedding into a full automaton");

    CLI::App* fuzz = app.add_subcommand("fuzz", "Run the seeded cross-oracle property suite");
    fuzz->add_option("--seed", seed, "Random seed (default 0)");
    fuzz->add_option("--count", count, "Number of cases (default 100)");
    fuzz->add_option("--tests", tests, "Number of tests in the universe (default 2)");
    fuzz->add_option("--actions", actions, "Number of actions (default 2)");
    fuzz->add_option("--depth", depth, "Expression depth bound (default 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (check->parsed()) return cmd_check(file1, file2, semantics, syntax, as_json);
        if (translate->parsed()) return cmd_translate(file1, to, verify);
        if (prune->parsed()) return cmd_prune(file1);
        if (solve->parsed()) return cmd_solve(file1, as_json);
        if (prove->parsed()) return cmd_prove(file1);
        if (automaton->parsed()) return cmd_automaton(file1, syntax, format, embed);
        if (fuzz->parsed()) return cmd_fuzz(seed, count, tests, actions, depth);
    } catch (const gkat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
