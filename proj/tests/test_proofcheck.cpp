#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkat/generate.hpp"
#include "gkat/proofcheck.hpp"
#include "gkat/syntax.hpp"

using namespace gkat;

namespace {

ProofScript load(const std::string& name) {
    std::ifstream in(std::string(CORPUS_DIR) + "/" + name);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return script_from_json(j);
}

Context ctx1() { return Context{TestUniverse({"t"}), {"p", "q"}}; }

ProofStep step(std::string axiom, std::vector<std::size_t> pos, bool lr,
               std::map<std::string, std::string> subst,
               std::vector<ProofStep> premise = {}) {
    return ProofStep{std::move(axiom), std::move(pos), lr, std::move(subst),
                     std::move(premise)};
}

}  // namespace

TEST_CASE("corpus scripts check out in their declared systems") {
    const std::vector<std::string> bisim_scripts = {
        "guard-absorb-right.json", "guard-absorb-left.json", "guard-slides-into-seq.json",
        "loop-exit-guard.json",    "loop-body-guard.json",
    };
    for (const auto& name : bisim_scripts) {
        ProofScript p = load(name);
        CHECK(p.system == ProofSystem::SkipfreeBisim);
        CheckResult r = check_script(p);
        INFO(name, ": ", r.message);
        CHECK(r.ok);
        // every bisimilarity proof is also a language-equivalence proof
        p.system = ProofSystem::SkipfreeLang;
        CHECK(check_script(p).ok);
    }

    ProofScript dag = load("loop-into-zero.json");
    CHECK(dag.system == ProofSystem::SkipfreeLang);
    CheckResult r = check_script(dag);
    INFO(r.message);
    CHECK(r.ok);
    // its x0 = 0 step is unavailable under bisimilarity
    dag.system = ProofSystem::SkipfreeBisim;
    CheckResult rb = check_script(dag);
    CHECK(!rb.ok);
    CHECK(rb.message.find("language") != std::string::npos);
}

TEST_CASE("empty scripts need syntactically equal endpoints") {
    ProofScript p{ProofSystem::SkipfreeBisim, ctx1(), "p +[t] q", "p +[t] q", {}};
    CHECK(check_script(p).ok);
    ProofScript q{ProofSystem::SkipfreeBisim, ctx1(), "p", "q", {}};
    CheckResult r = check_script(q);
    CHECK(!r.ok);
    CHECK(r.failed_step == 0);  // the final comparison, after zero steps
}

TEST_CASE("failures name the first bad step") {
    // step 0 fine, step 1 matches the wrong subterm
    ProofScript p{ProofSystem::SkipfreeBisim,
                  ctx1(),
                  "p",
                  "p +[1] q",
                  {step("G0", {}, true, {{"x", "p"}, {"y", "q"}}),
                   step("G6", {}, true, {{"x", "q"}})}};
    CheckResult r = check_script(p);
    CHECK(!r.ok);
    CHECK(r.failed_step == 1);
    CHECK(r.message.find("does not match") != std::string::npos);

    // unknown axiom
    ProofScript u{ProofSystem::SkipfreeBisim, ctx1(), "p", "p",
                  {step("nosuch", {}, true, {})}};
    CHECK(!check_script(u).ok);

    // missing substitution entries
    ProofScript m{ProofSystem::SkipfreeBisim, ctx1(), "p", "p +[1] q",
                  {step("G0", {}, true, {{"x", "p"}})}};
    CHECK(!check_script(m).ok);
}

TEST_CASE("positions address subterms, enabling congruence reasoning") {
    // rewrite only the left factor of a sequence
    ProofScript p{ProofSystem::SkipfreeBisim,
                  ctx1(),
                  "p . q",
                  "(p +[1] p) . q",
                  {step("G0", {0}, true, {{"x", "p"}, {"y", "p"}})}};
    CHECK(check_script(p).ok);
    // out-of-range positions fail cleanly
    ProofScript bad{ProofSystem::SkipfreeBisim, ctx1(), "p", "p",
                    {step("G0", {0}, true, {{"x", "p"}, {"y", "p"}})}};
    CHECK(!check_script(bad).ok);
}

TEST_CASE("RSP discharges its premise as a nested derivation") {
    // z := p *[t] q satisfies z = p z +[t] q by the fixed point axiom,
    // so RSP re-derives z = p *[t] q
    ProofScript p{ProofSystem::SkipfreeBisim,
                  ctx1(),
                  "p *[t] q",
                  "p *[t] q",
                  {step("RSP", {}, true,
                        {{"x", "p"}, {"y", "q"}, {"z", "p *[t] q"}, {"b", "t"}},
                        {step("FP", {}, true, {{"x", "p"}, {"y", "q"}, {"b", "t"}})})}};
    CheckResult r = check_script(p);
    INFO(r.message);
    CHECK(r.ok);

    // a premise that derives the wrong shape is rejected with context
    ProofScript bad = p;
    bad.steps[0].premise.clear();
    CheckResult rb = check_script(bad);
    CHECK(!rb.ok);
    CHECK(rb.message.find("premise") != std::string::npos);
}

TEST_CASE("the one-free star system") {
    Context c = ctx1();
    ProofScript unit{ProofSystem::Star, c, "a0.p + 0", "a0.p",
                     {step("star-unit", {}, false, {{"x", "a0.p"}})}};
    CHECK(check_script(unit).ok);

    ProofScript fix{ProofSystem::Star, c, "a1.p * a0.q", "a1.p (a1.p * a0.q) + a0.q",
                    {step("star-fix", {}, true, {{"x", "a1.p"}, {"y", "a0.q"}})}};
    CHECK(check_script(fix).ok);

    ProofScript rsp{ProofSystem::Star,
                    c,
                    "a1.p * a0.q",
                    "a1.p * a0.q",
                    {step("star-rsp", {}, true,
                          {{"x", "a1.p"}, {"y", "a0.q"}, {"z", "a1.p * a0.q"}},
                          {step("star-fix", {}, true, {{"x", "a1.p"}, {"y", "a0.q"}})})}};
    CheckResult r = check_script(rsp);
    INFO(r.message);
    CHECK(r.ok);

    // skip-free axiom names are rejected here
    ProofScript wrong{ProofSystem::Star, c, "a0.p", "a0.p + a0.p",
                      {step("G1", {}, true, {{"x", "a0.p"}, {"b", "t"}})}};
    CHECK(!check_script(wrong).ok);
}

TEST_CASE("the full-GKAT systems") {
    Context c = ctx1();
    ProofScript one{ProofSystem::GkatBisim, c, "1 . p", "p",
                    {step("gkat-one-seq", {}, true, {{"x", "p"}})}};
    CHECK(check_script(one).ok);

    ProofScript unroll{ProofSystem::GkatBisim, c, "(p . (p ^[t])) +[t] 1", "p ^[t]",
                       {step("gkat-unroll", {}, true, {{"x", "p"}, {"b", "t"}})}};
    CheckResult ru = check_script(unroll);
    INFO(ru.message);
    CHECK(ru.ok);

    // x0 = 0 only under language semantics
    ProofScript dag{ProofSystem::GkatLang, c, "p . 0", "0",
                    {step("gkat-dagger", {}, true, {{"x", "p"}})}};
    CHECK(check_script(dag).ok);
    dag.system = ProofSystem::GkatBisim;
    CHECK(!check_script(dag).ok);

    // the loop-induction rule refuses unguarded bodies
    ProofScript rsp{ProofSystem::GkatBisim,
                    c,
                    "(1 . p) +[t] 1",
                    "(1 ^[t]) . p",
                    {step("gkat-rsp", {}, true,
                          {{"x", "1"}, {"y", "1"}, {"z", "(1 . p) +[t] 1"}, {"b", "t"}})}};
    CheckResult rr = check_script(rsp);
    CHECK(!rr.ok);
    CHECK(rr.message.find("guarded") != std::string::npos);
}

TEST_CASE("empty-word predicate") {
    Context c = ctx1();
    const TestUniverse& u = c.universe;
    CHECK(ba_equiv(guardedness_E(parse_gkat("t", c)), parse_bexp("t", c), u));
    CHECK(ba_equiv(guardedness_E(GkatExp::act("p")), BExp::zero(), u));
    CHECK(ba_equiv(guardedness_E(parse_gkat("t +[t] 1", c)), BExp::one(), u));
    CHECK(ba_equiv(guardedness_E(parse_gkat("1 . t", c)), parse_bexp("t", c), u));
    CHECK(ba_equiv(guardedness_E(parse_gkat("p ^[t]", c)), parse_bexp("!t", c), u));

    // embedded skip-free programs never terminate silently
    Rng rng(71);
    Context cc = small_context(2, 2);
    for (int i = 0; i < 100; ++i) {
        SkipFreeExpP e = random_skipfree(rng, cc, 4);
        CHECK(ba_equiv(guardedness_E(embed_syntax(e)), BExp::zero(), cc.universe));
    }
}

TEST_CASE("script JSON round trip") {
    ProofScript p = load("loop-exit-guard.json");
    nlohmann::json j = script_to_json(p);
    ProofScript back = script_from_json(j);
    CHECK(back.system == p.system);
    CHECK(back.lhs == p.lhs);
    CHECK(back.rhs == p.rhs);
    REQUIRE(back.steps.size() == p.steps.size());
    CHECK(check_script(back).ok);

    // nested premises survive the round trip
    nlohmann::json j2 = script_to_json(back);
    CHECK(j == j2);
}

TEST_CASE("proof system names") {
    for (ProofSystem s : {ProofSystem::SkipfreeBisim, ProofSystem::SkipfreeLang,
                          ProofSystem::Star, ProofSystem::GkatBisim, ProofSystem::GkatLang}) {
        CHECK(proof_system_from_name(proof_system_name(s)) == s);
    }
    CHECK_THROWS_AS(proof_system_from_name("nope"), Error);
}
