#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GKATC_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "gkatc-test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = scratch() / name;
    std::ofstream out(p);
    out << content;
    out.close();
    return p.string();
}

std::string program(const std::string& name, const std::string& body) {
    return write_file(name, "tests: t;\nactions: p, q;\n" + body + "\n");
}

}  // namespace

TEST_CASE("check: equivalent programs exit 0") {
    std::string a = program("eq-a.txt", "p +[t] p");
    std::string b = program("eq-b.txt", "p");
    RunResult r = run("check " + a + " " + b);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("equivalent") == 0);
}

TEST_CASE("check: inequivalent programs exit 1 with a counterexample") {
    std::string a = program("ineq-a.txt", "p . q");
    std::string b = program("ineq-b.txt", "p . p");
    RunResult r = run("check " + a + " " + b);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("inequivalent") != std::string::npos);
    CHECK(r.output.find("action-mismatch") != std::string::npos);
}

TEST_CASE("check: language semantics ignores dead code") {
    std::string a = program("lang-a.txt", "p +[t] (q . 0)");
    std::string b = program("lang-b.txt", "p +[t] 0");
    CHECK(run("check --semantics lang " + a + " " + b).exit_code == 0);
    CHECK(run("check --semantics bisim " + a + " " + b).exit_code == 1);
}

TEST_CASE("check: --json emits a machine-readable verdict") {
    std::string a = program("json-a.txt", "p");
    std::string b = program("json-b.txt", "q");
    RunResult r = run("check --json --semantics lang " + a + " " + b);
    CHECK(r.exit_code == 1);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["equivalent"] == false);
    CHECK((j["acceptedBy"] == 1 || j["acceptedBy"] == 2));
    CHECK(j["trace"].is_array());
}

TEST_CASE("check: star syntax, and lang is rejected outside skip-free") {
    std::string a = write_file("star-a.txt", "tests: t;\nactions: p, q;\na0.p + a1.p\n");
    std::string b = write_file("star-b.txt", "tests: t;\nactions: p, q;\na1.p + a0.p\n");
    CHECK(run("check --syntax star " + a + " " + b).exit_code == 0);
    CHECK(run("check --syntax star --semantics lang " + a + " " + b).exit_code == 2);
}

TEST_CASE("errors exit 2") {
    std::string a = program("err-a.txt", "p");
    std::string mismatched = write_file("err-b.txt", "tests: s;\nactions: p, q;\np\n");
    CHECK(run("check " + a + " " + mismatched).exit_code == 2);
    std::string bad = program("err-c.txt", "p +[t");
    CHECK(run("check " + a + " " + bad).exit_code == 2);
    CHECK(run("check " + a + " /nonexistent/file").exit_code == 2);
    CHECK(run("nosuchcommand").exit_code == 2);
}

TEST_CASE("translate both ways with verification") {
    std::string a = program("tr-a.txt", "p");
    RunResult fwd = run("translate --to star --verify " + a);
    CHECK(fwd.exit_code == 0);
    CHECK(fwd.output.find("a0.p + a1.p") != std::string::npos);
    CHECK(fwd.output.find("verified") != std::string::npos);

    std::string det = write_file("tr-b.txt", "tests: t;\nactions: p, q;\na1.p + a0.q\n");
    RunResult back = run("translate --to skipfree --verify " + det);
    CHECK(back.exit_code == 0);
    CHECK(back.output.find("verified") != std::string::npos);

    // back translation refuses the nondeterministic fragment
    std::string nondet = write_file("tr-c.txt", "tests: t;\nactions: p, q;\na0.p + a0.q\n");
    CHECK(run("translate --to skipfree " + nondet).exit_code == 2);
}

TEST_CASE("prune removes dead code") {
    std::string a = program("pr-a.txt", "p . (q . 0)");
    RunResult r = run("prune " + a);
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0\n");
}

TEST_CASE("solve emits verified expressions per state") {
    nlohmann::json j = {
        {"tests", {"t"}},
        {"actions", {"p"}},
        {"start", 0},
        {"states", {{{"id", 0}, {"label", "s0"}}}},
        {"transitions", {{{"from", 0}, {"atoms", {0}}, {"action", "p"}, {"to", "accept"}}}},
    };
    std::string f = write_file("solve-a.json", j.dump());
    RunResult r = run("solve " + f);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("(0 + 0) * (a0.p + 0)") != std::string::npos);
    CHECK(r.output.find("verified") != std::string::npos);

    RunResult js = run("solve --json " + f);
    CHECK(js.exit_code == 0);
    nlohmann::json out = nlohmann::json::parse(js.output);
    CHECK(out["ok"] == true);
    CHECK(out["states"][0]["expression"] == "(0 + 0) * (a0.p + 0)");

    // a system with no layering is reported, exit 1
    nlohmann::json none = {
        {"tests", {"t"}},
        {"actions", {"p"}},
        {"start", 0},
        {"states", {{{"id", 0}, {"label", "s0"}}, {{"id", 1}, {"label", "s1"}}}},
        {"transitions",
         {{{"from", 0}, {"atoms", {0}}, {"action", "p"}, {"to", 1}},
          {{"from", 1}, {"atoms", {0}}, {"action", "p"}, {"to", 0}},
          {{"from", 0}, {"atoms", {1}}, {"action", "p"}, {"to", "accept"}},
          {{"from", 1}, {"atoms", {1}}, {"action", "p"}, {"to", "accept"}}}},
    };
    std::string nf = write_file("solve-b.json", none.dump());
    RunResult rn = run("solve " + nf);
    CHECK(rn.exit_code == 1);
    CHECK(rn.output.find("no well-layered labelling") != std::string::npos);
}

TEST_CASE("prove checks corpus scripts") {
    RunResult ok = run(std::string("prove ") + CORPUS_DIR + "/loop-exit-guard.json");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output == "ok\n");

    // a broken script reports its failing step, exit 1
    std::ifstream in(std::string(CORPUS_DIR) + "/loop-into-zero.json");
    nlohmann::json j;
    in >> j;
    j["system"] = "skipfree-bisim";  // the x0 = 0 step becomes unavailable
    std::string f = write_file("prove-bad.json", j.dump());
    RunResult bad = run("prove " + f);
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("step") == 0);

    CHECK(run("prove /nonexistent.json").exit_code == 2);
}

TEST_CASE("automaton export") {
    std::string a = program("auto-a.txt", "p . q");
    RunResult j = run("automaton " + a);
    CHECK(j.exit_code == 0);
    nlohmann::json out = nlohmann::json::parse(j.output);
    CHECK(out["states"].size() == 2);
    CHECK(out.contains("transitions"));

    RunResult d = run("automaton --format dot " + a);
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("digraph") != std::string::npos);

    RunResult e = run("automaton --embed " + a);
    CHECK(e.exit_code == 0);
    CHECK(nlohmann::json::parse(e.output)["states"].size() == 3);

    std::string s = write_file("auto-b.txt", "tests: t;\nactions: p, q;\na0.p + a0.q\n");
    CHECK(run("automaton --syntax star " + s).exit_code == 0);
}

TEST_CASE("fuzz is deterministic per seed") {
    RunResult one = run("fuzz --seed 5 --count 40");
    RunResult two = run("fuzz --seed 5 --count 40");
    CHECK(one.exit_code == 0);
    CHECK(one.output == two.output);
    CHECK(one.output.find("40 cases, all properties hold") != std::string::npos);
}

TEST_CASE("the test-universe cap is configurable by environment") {
    std::string two = write_file("cap-a.txt", "tests: t, s;\nactions: p;\np\n");
    RunResult r = run("prune " + two);
    CHECK(r.exit_code == 0);
    std::string cmd = "GKAT_MAX_TESTS=1 " + std::string(GKATC_PATH) + " prune " + two + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string out;
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(out.find("cap") != std::string::npos);
}
