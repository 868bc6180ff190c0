#include "gkat/proofcheck.hpp"

#include <deque>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "gkat/equivalence.hpp"

namespace gkat {

const char* proof_system_name(ProofSystem s) {
    switch (s) {
        case ProofSystem::SkipfreeBisim: return "skipfree-bisim";
        case ProofSystem::SkipfreeLang: return "skipfree-lang";
        case ProofSystem::Star: return "star";
        case ProofSystem::GkatBisim: return "gkat-bisim";
        case ProofSystem::GkatLang: return "gkat-lang";
    }
    return "?";
}

ProofSystem proof_system_from_name(const std::string& name) {
    if (name == "skipfree-bisim") return ProofSystem::SkipfreeBisim;
    if (name == "skipfree-lang") return ProofSystem::SkipfreeLang;
    if (name == "star") return ProofSystem::Star;
    if (name == "gkat-bisim") return ProofSystem::GkatBisim;
    if (name == "gkat-lang") return ProofSystem::GkatLang;
    throw Error("unknown proof system: " + name);
}

BExpP guardedness_E(const GkatExpP& e) {
    switch (e->kind) {
        case GkatExp::Kind::Bool: return e->test;
        case GkatExp::Kind::Act: return BExp::zero();
        case GkatExp::Kind::Guard:
            return BExp::mk_or(BExp::mk_and(e->guard, guardedness_E(e->left)),
                               BExp::mk_and(BExp::mk_not(e->guard), guardedness_E(e->right)));
        case GkatExp::Kind::Seq:
            return BExp::mk_and(guardedness_E(e->left), guardedness_E(e->right));
        case GkatExp::Kind::Loop: return BExp::mk_not(e->guard);
    }
    return BExp::zero();
}

namespace {

struct StepFail {
    std::string msg;
};

[[noreturn]] void fail(std::string m) { throw StepFail{std::move(m)}; }

const std::string& lookup(const ProofStep& s, const char* var) {
    auto it = s.subst.find(var);
    if (it == s.subst.end()) fail("axiom " + s.axiom + " needs variable " + var);
    return it->second;
}

void require_vars(const ProofStep& s, std::initializer_list<const char*> vars) {
    std::set<std::string> want;
    for (const char* v : vars) want.insert(v);
    std::set<std::string> got;
    for (const auto& [k, _] : s.subst) got.insert(k);
    if (want != got) {
        std::string names;
        for (const char* v : vars) {
            if (!names.empty()) names += ", ";
            names += v;
        }
        fail("axiom " + s.axiom + " takes exactly the variables {" + names + "}");
    }
}

// ---------------------------------------------------------------------------
// Skip-free systems
// ---------------------------------------------------------------------------

using SfRewrite = std::function<SkipFreeExpP(const SkipFreeExpP&)>;

SkipFreeExpP sf_apply(const SkipFreeExpP& e, const std::vector<std::size_t>& pos, std::size_t k,
                      const SfRewrite& f) {
    if (k == pos.size()) return f(e);
    std::size_t i = pos[k];
    bool binary = e->kind == SkipFreeExp::Kind::Guard || e->kind == SkipFreeExp::Kind::Seq ||
                  e->kind == SkipFreeExp::Kind::While;
    if (!binary) fail("position descends into the leaf " + render_skipfree(e));
    if (i > 1) fail("child index " + std::to_string(i) + " out of range at " + render_skipfree(e));
    SkipFreeExpP l = i == 0 ? sf_apply(e->left, pos, k + 1, f) : e->left;
    SkipFreeExpP r = i == 1 ? sf_apply(e->right, pos, k + 1, f) : e->right;
    switch (e->kind) {
        case SkipFreeExp::Kind::Guard: return SkipFreeExp::guard_choice(e->guard, l, r);
        case SkipFreeExp::Kind::Seq: return SkipFreeExp::seq(l, r);
        default: return SkipFreeExp::while_do(l, e->guard, r);
    }
}

bool sf_ba_equal(const SkipFreeExpP& a, const SkipFreeExpP& b, const TestUniverse& u) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SkipFreeExp::Kind::Zero: return true;
        case SkipFreeExp::Kind::Act: return a->action == b->action;
        case SkipFreeExp::Kind::Guard:
        case SkipFreeExp::Kind::While:
            return ba_equiv(a->guard, b->guard, u) && sf_ba_equal(a->left, b->left, u) &&
                   sf_ba_equal(a->right, b->right, u);
        case SkipFreeExp::Kind::Seq:
            return sf_ba_equal(a->left, b->left, u) && sf_ba_equal(a->right, b->right, u);
    }
    return false;
}

SkipFreeExpP sf_check_step(const SkipFreeExpP& current, const ProofStep& s, ProofSystem sys,
                           const Context& ctx);

SkipFreeExpP sf_fold(SkipFreeExpP term, const std::vector<ProofStep>& steps, ProofSystem sys,
                     const Context& ctx, std::size_t* at) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (at) *at = i;
        term = sf_check_step(term, steps[i], sys, ctx);
    }
    return term;
}

SkipFreeExpP sf_check_step(const SkipFreeExpP& current, const ProofStep& s, ProofSystem sys,
                           const Context& ctx) {
    auto E = [&](const char* v) { return parse_skipfree(lookup(s, v), ctx); };
    auto B = [&](const char* v) { return parse_bexp(lookup(s, v), ctx); };

    if (s.axiom == "BA") {
        require_vars(s, {"result"});
        SkipFreeExpP result = E("result");
        return sf_apply(current, s.position, 0, [&](const SkipFreeExpP& sub) {
            if (!sf_ba_equal(sub, result, ctx.universe)) {
                fail("BA step: " + render_skipfree(sub) + " and " + render_skipfree(result) +
                     " differ beyond their tests");
            }
            return result;
        });
    }

    SkipFreeExpP lhs, rhs;
    if (s.axiom == "RSP") {
        require_vars(s, {"x", "y", "z", "b"});
        SkipFreeExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b");
        SkipFreeExpP unrolled =
            SkipFreeExp::guard_choice(b, SkipFreeExp::seq(x, z), y);
        std::size_t at = 0;
        SkipFreeExpP got;
        try {
            got = sf_fold(z, s.premise, sys, ctx, &at);
        } catch (const StepFail& f) {
            fail("RSP premise step " + std::to_string(at) + ": " + f.msg);
        }
        if (!skipfree_equal(got, unrolled)) {
            fail("RSP premise derives " + render_skipfree(got) + ", not " +
                 render_skipfree(unrolled));
        }
        lhs = z;
        rhs = SkipFreeExp::while_do(x, b, y);
    } else if (s.axiom == "G0") {
        require_vars(s, {"x", "y"});
        lhs = E("x");
        rhs = SkipFreeExp::guard_choice(BExp::one(), lhs, E("y"));
    } else if (s.axiom == "G1") {
        require_vars(s, {"x", "b"});
        lhs = E("x");
        rhs = SkipFreeExp::guard_choice(B("b"), lhs, lhs);
    } else if (s.axiom == "G2") {
        require_vars(s, {"x", "y", "b"});
        SkipFreeExpP x = E("x"), y = E("y");
        BExpP b = B("b");
        lhs = SkipFreeExp::guard_choice(b, x, y);
        rhs = SkipFreeExp::guard_choice(BExp::mk_not(b), y, x);
    } else if (s.axiom == "G3") {
        require_vars(s, {"x", "y", "z", "b", "c"});
        SkipFreeExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b"), c = B("c");
        lhs = SkipFreeExp::guard_choice(b, x, SkipFreeExp::guard_choice(c, y, z));
        rhs = SkipFreeExp::guard_choice(BExp::mk_or(b, c),
                                        SkipFreeExp::guard_choice(b, x, y), z);
    } else if (s.axiom == "G6") {
        require_vars(s, {"x"});
        lhs = SkipFreeExp::seq(SkipFreeExp::zero(), E("x"));
        rhs = SkipFreeExp::zero();
    } else if (s.axiom == "dagger") {
        if (sys == ProofSystem::SkipfreeBisim) {
            fail("axiom x0 = 0 is only available in the language system");
        }
        require_vars(s, {"x"});
        lhs = SkipFreeExp::seq(E("x"), SkipFreeExp::zero());
        rhs = SkipFreeExp::zero();
    } else if (s.axiom == "G7") {
        require_vars(s, {"x", "y", "z"});
        SkipFreeExpP x = E("x"), y = E("y"), z = E("z");
        lhs = SkipFreeExp::seq(x, SkipFreeExp::seq(y, z));
        rhs = SkipFreeExp::seq(SkipFreeExp::seq(x, y), z);
    } else if (s.axiom == "G8") {
        require_vars(s, {"x", "y", "z", "b"});
        SkipFreeExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b");
        lhs = SkipFreeExp::seq(SkipFreeExp::guard_choice(b, x, y), z);
        rhs = SkipFreeExp::guard_choice(b, SkipFreeExp::seq(x, z), SkipFreeExp::seq(y, z));
    } else if (s.axiom == "FP") {
        require_vars(s, {"x", "y", "b"});
        SkipFreeExpP x = E("x"), y = E("y");
        BExpP b = B("b");
        lhs = SkipFreeExp::while_do(x, b, y);
        rhs = SkipFreeExp::guard_choice(b, SkipFreeExp::seq(x, lhs), y);
    } else {
        fail("axiom " + s.axiom + " is unknown in system " + proof_system_name(sys));
    }

    SkipFreeExpP from = s.left_to_right ? lhs : rhs;
    SkipFreeExpP to = s.left_to_right ? rhs : lhs;
    return sf_apply(current, s.position, 0, [&](const SkipFreeExpP& sub) {
        if (!skipfree_equal(sub, from)) {
            fail("subterm " + render_skipfree(sub) + " does not match " + s.axiom + " side " +
                 render_skipfree(from));
        }
        return to;
    });
}

// ---------------------------------------------------------------------------
// One-free star system
// ---------------------------------------------------------------------------

using StRewrite = std::function<StarExpP(const StarExpP&)>;

StarExpP st_apply(const StarExpP& e, const std::vector<std::size_t>& pos, std::size_t k,
                  const StRewrite& f) {
    if (k == pos.size()) return f(e);
    std::size_t i = pos[k];
    bool binary = e->kind == StarExp::Kind::Plus || e->kind == StarExp::Kind::Seq ||
                  e->kind == StarExp::Kind::Star;
    if (!binary) fail("position descends into the leaf " + render_star(e));
    if (i > 1) fail("child index " + std::to_string(i) + " out of range at " + render_star(e));
    StarExpP l = i == 0 ? st_apply(e->left, pos, k + 1, f) : e->left;
    StarExpP r = i == 1 ? st_apply(e->right, pos, k + 1, f) : e->right;
    switch (e->kind) {
        case StarExp::Kind::Plus: return StarExp::plus(l, r);
        case StarExp::Kind::Seq: return StarExp::seq(l, r);
        default: return StarExp::star(l, r);
    }
}

StarExpP st_check_step(const StarExpP& current, const ProofStep& s, const Context& ctx);

StarExpP st_fold(StarExpP term, const std::vector<ProofStep>& steps, const Context& ctx,
                 std::size_t* at) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (at) *at = i;
        term = st_check_step(term, steps[i], ctx);
    }
    return term;
}

StarExpP st_check_step(const StarExpP& current, const ProofStep& s, const Context& ctx) {
    auto E = [&](const char* v) { return parse_star(lookup(s, v), ctx); };

    StarExpP lhs, rhs;
    if (s.axiom == "star-rsp") {
        require_vars(s, {"x", "y", "z"});
        StarExpP x = E("x"), y = E("y"), z = E("z");
        StarExpP unrolled = StarExp::plus(StarExp::seq(x, z), y);
        std::size_t at = 0;
        StarExpP got;
        try {
            got = st_fold(z, s.premise, ctx, &at);
        } catch (const StepFail& f) {
            fail("star-rsp premise step " + std::to_string(at) + ": " + f.msg);
        }
        if (!star_equal(got, unrolled)) {
            fail("star-rsp premise derives " + render_star(got) + ", not " +
                 render_star(unrolled));
        }
        lhs = z;
        rhs = StarExp::star(x, y);
    } else if (s.axiom == "star-idem") {
        require_vars(s, {"x"});
        lhs = E("x");
        rhs = StarExp::plus(lhs, lhs);
    } else if (s.axiom == "star-unit") {
        require_vars(s, {"x"});
        lhs = E("x");
        rhs = StarExp::plus(lhs, StarExp::zero());
    } else if (s.axiom == "star-comm") {
        require_vars(s, {"x", "y"});
        StarExpP x = E("x"), y = E("y");
        lhs = StarExp::plus(x, y);
        rhs = StarExp::plus(y, x);
    } else if (s.axiom == "star-assoc") {
        require_vars(s, {"x", "y", "z"});
        StarExpP x = E("x"), y = E("y"), z = E("z");
        lhs = StarExp::plus(x, StarExp::plus(y, z));
        rhs = StarExp::plus(StarExp::plus(x, y), z);
    } else if (s.axiom == "star-zero-seq") {
        require_vars(s, {"x"});
        lhs = StarExp::seq(StarExp::zero(), E("x"));
        rhs = StarExp::zero();
    } else if (s.axiom == "star-seq-assoc") {
        require_vars(s, {"x", "y", "z"});
        StarExpP x = E("x"), y = E("y"), z = E("z");
        lhs = StarExp::seq(x, StarExp::seq(y, z));
        rhs = StarExp::seq(StarExp::seq(x, y), z);
    } else if (s.axiom == "star-distr") {
        require_vars(s, {"x", "y", "z"});
        StarExpP x = E("x"), y = E("y"), z = E("z");
        lhs = StarExp::seq(StarExp::plus(x, y), z);
        rhs = StarExp::plus(StarExp::seq(x, z), StarExp::seq(y, z));
    } else if (s.axiom == "star-fix") {
        require_vars(s, {"x", "y"});
        StarExpP x = E("x"), y = E("y");
        lhs = StarExp::star(x, y);
        rhs = StarExp::plus(StarExp::seq(x, lhs), y);
    } else {
        fail("axiom " + s.axiom + " is unknown in system star");
    }

    StarExpP from = s.left_to_right ? lhs : rhs;
    StarExpP to = s.left_to_right ? rhs : lhs;
    return st_apply(current, s.position, 0, [&](const StarExpP& sub) {
        if (!star_equal(sub, from)) {
            fail("subterm " + render_star(sub) + " does not match " + s.axiom + " side " +
                 render_star(from));
        }
        return to;
    });
}

// ---------------------------------------------------------------------------
// Full GKAT systems
// ---------------------------------------------------------------------------

using GkRewrite = std::function<GkatExpP(const GkatExpP&)>;

GkatExpP gk_apply(const GkatExpP& e, const std::vector<std::size_t>& pos, std::size_t k,
                  const GkRewrite& f) {
    if (k == pos.size()) return f(e);
    std::size_t i = pos[k];
    if (e->kind == GkatExp::Kind::Loop) {
        if (i != 0) fail("loop bodies are child 0 at " + render_gkat(e));
        return GkatExp::loop(gk_apply(e->left, pos, k + 1, f), e->guard);
    }
    bool binary = e->kind == GkatExp::Kind::Guard || e->kind == GkatExp::Kind::Seq;
    if (!binary) fail("position descends into the leaf " + render_gkat(e));
    if (i > 1) fail("child index " + std::to_string(i) + " out of range at " + render_gkat(e));
    GkatExpP l = i == 0 ? gk_apply(e->left, pos, k + 1, f) : e->left;
    GkatExpP r = i == 1 ? gk_apply(e->right, pos, k + 1, f) : e->right;
    if (e->kind == GkatExp::Kind::Guard) return GkatExp::guard_choice(e->guard, l, r);
    return GkatExp::seq(l, r);
}

bool gk_ba_equal(const GkatExpP& a, const GkatExpP& b, const TestUniverse& u) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case GkatExp::Kind::Bool: return ba_equiv(a->test, b->test, u);
        case GkatExp::Kind::Act: return a->action == b->action;
        case GkatExp::Kind::Guard:
            return ba_equiv(a->guard, b->guard, u) && gk_ba_equal(a->left, b->left, u) &&
                   gk_ba_equal(a->right, b->right, u);
        case GkatExp::Kind::Seq:
            return gk_ba_equal(a->left, b->left, u) && gk_ba_equal(a->right, b->right, u);
        case GkatExp::Kind::Loop:
            return ba_equiv(a->guard, b->guard, u) && gk_ba_equal(a->left, b->left, u);
    }
    return false;
}

GkatExpP gk_check_step(const GkatExpP& current, const ProofStep& s, ProofSystem sys,
                       const Context& ctx);

GkatExpP gk_fold(GkatExpP term, const std::vector<ProofStep>& steps, ProofSystem sys,
                 const Context& ctx, std::size_t* at) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (at) *at = i;
        term = gk_check_step(term, steps[i], sys, ctx);
    }
    return term;
}

GkatExpP gk_check_step(const GkatExpP& current, const ProofStep& s, ProofSystem sys,
                       const Context& ctx) {
    auto E = [&](const char* v) { return parse_gkat(lookup(s, v), ctx); };
    auto B = [&](const char* v) { return parse_bexp(lookup(s, v), ctx); };

    if (s.axiom == "BA") {
        require_vars(s, {"result"});
        GkatExpP result = E("result");
        return gk_apply(current, s.position, 0, [&](const GkatExpP& sub) {
            if (!gk_ba_equal(sub, result, ctx.universe)) {
                fail("BA step: " + render_gkat(sub) + " and " + render_gkat(result) +
                     " differ beyond their tests");
            }
            return result;
        });
    }

    GkatExpP lhs, rhs;
    if (s.axiom == "gkat-rsp") {
        require_vars(s, {"x", "y", "z", "b"});
        GkatExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b");
        if (!ba_equiv(guardedness_E(x), BExp::zero(), ctx.universe)) {
            fail("gkat-rsp needs a guarded loop body, but E(" + render_gkat(x) + ") = " +
                 render_bexp(guardedness_E(x)) + " is not 0");
        }
        GkatExpP unrolled = GkatExp::guard_choice(b, GkatExp::seq(x, z), y);
        std::size_t at = 0;
        GkatExpP got;
        try {
            got = gk_fold(z, s.premise, sys, ctx, &at);
        } catch (const StepFail& f) {
            fail("gkat-rsp premise step " + std::to_string(at) + ": " + f.msg);
        }
        if (!gkat_equal(got, unrolled)) {
            fail("gkat-rsp premise derives " + render_gkat(got) + ", not " +
                 render_gkat(unrolled));
        }
        lhs = z;
        rhs = GkatExp::seq(GkatExp::loop(x, b), y);
    } else if (s.axiom == "gkat-idem") {
        require_vars(s, {"x", "b"});
        lhs = E("x");
        rhs = GkatExp::guard_choice(B("b"), lhs, lhs);
    } else if (s.axiom == "gkat-comm") {
        require_vars(s, {"x", "y", "b"});
        GkatExpP x = E("x"), y = E("y");
        BExpP b = B("b");
        lhs = GkatExp::guard_choice(b, x, y);
        rhs = GkatExp::guard_choice(BExp::mk_not(b), y, x);
    } else if (s.axiom == "gkat-assoc") {
        require_vars(s, {"x", "y", "z", "b", "c"});
        GkatExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b"), c = B("c");
        lhs = GkatExp::guard_choice(b, x, GkatExp::guard_choice(c, y, z));
        rhs = GkatExp::guard_choice(BExp::mk_or(b, c), GkatExp::guard_choice(b, x, y), z);
    } else if (s.axiom == "gkat-guard") {
        require_vars(s, {"x", "y", "b"});
        GkatExpP x = E("x"), y = E("y");
        BExpP b = B("b");
        lhs = GkatExp::guard_choice(b, x, y);
        rhs = GkatExp::guard_choice(b, GkatExp::seq(GkatExp::boolean(b), x), y);
    } else if (s.axiom == "gkat-distr") {
        require_vars(s, {"x", "y", "z", "b"});
        GkatExpP x = E("x"), y = E("y"), z = E("z");
        BExpP b = B("b");
        lhs = GkatExp::seq(GkatExp::guard_choice(b, x, y), z);
        rhs = GkatExp::guard_choice(b, GkatExp::seq(x, z), GkatExp::seq(y, z));
    } else if (s.axiom == "gkat-seq-assoc") {
        require_vars(s, {"x", "y", "z"});
        GkatExpP x = E("x"), y = E("y"), z = E("z");
        lhs = GkatExp::seq(x, GkatExp::seq(y, z));
        rhs = GkatExp::seq(GkatExp::seq(x, y), z);
    } else if (s.axiom == "gkat-zero-seq") {
        require_vars(s, {"x"});
        lhs = GkatExp::seq(GkatExp::zero(), E("x"));
        rhs = GkatExp::zero();
    } else if (s.axiom == "gkat-dagger") {
        if (sys == ProofSystem::GkatBisim) {
            fail("axiom x0 = 0 is only available in the language system");
        }
        require_vars(s, {"x"});
        lhs = GkatExp::seq(E("x"), GkatExp::zero());
        rhs = GkatExp::zero();
    } else if (s.axiom == "gkat-one-seq") {
        require_vars(s, {"x"});
        rhs = E("x");
        lhs = GkatExp::seq(GkatExp::one(), rhs);
    } else if (s.axiom == "gkat-seq-one") {
        require_vars(s, {"x"});
        rhs = E("x");
        lhs = GkatExp::seq(rhs, GkatExp::one());
    } else if (s.axiom == "gkat-unroll") {
        require_vars(s, {"x", "b"});
        GkatExpP x = E("x");
        BExpP b = B("b");
        rhs = GkatExp::loop(x, b);
        lhs = GkatExp::guard_choice(b, GkatExp::seq(x, rhs), GkatExp::one());
    } else if (s.axiom == "gkat-loop-guard") {
        require_vars(s, {"x", "a", "b"});
        GkatExpP x = E("x");
        BExpP a = B("a"), b = B("b");
        lhs = GkatExp::loop(GkatExp::guard_choice(a, x, GkatExp::one()), b);
        rhs = GkatExp::loop(GkatExp::seq(GkatExp::boolean(a), x), b);
    } else {
        fail("axiom " + s.axiom + " is unknown in system " + proof_system_name(sys));
    }

    GkatExpP from = s.left_to_right ? lhs : rhs;
    GkatExpP to = s.left_to_right ? rhs : lhs;
    return gk_apply(current, s.position, 0, [&](const GkatExpP& sub) {
        if (!gkat_equal(sub, from)) {
            fail("subterm " + render_gkat(sub) + " does not match " + s.axiom + " side " +
                 render_gkat(from));
        }
        return to;
    });
}

// ---------------------------------------------------------------------------
// Script driver
// ---------------------------------------------------------------------------

// Language emptiness on GKAT automata: a state is dead iff no accepting atom
// is reachable from it. Pruning dead successors reduces language equivalence
// to bisimilarity, mirroring the skip-free construction.
std::vector<bool> gk_dead_states(const GkatAutomaton& g) {
    std::size_t n = g.state_count();
    std::vector<std::vector<std::size_t>> rev(n);
    std::vector<bool> live(n, false);
    std::deque<std::size_t> work;
    for (std::size_t s = 0; s < n; ++s) {
        if (!g.accepts[s].empty()) {
            live[s] = true;
            work.push_back(s);
        }
        for (const auto& f : g.trans[s]) rev[f.state].push_back(s);
    }
    while (!work.empty()) {
        std::size_t s = work.front();
        work.pop_front();
        for (std::size_t p : rev[s]) {
            if (!live[p]) {
                live[p] = true;
                work.push_back(p);
            }
        }
    }
    std::vector<bool> dead(n);
    for (std::size_t s = 0; s < n; ++s) dead[s] = !live[s];
    return dead;
}

GkatAutomaton gk_prune(const GkatAutomaton& g) {
    std::vector<bool> dead = gk_dead_states(g);
    GkatAutomaton out = g;
    for (std::size_t s = 0; s < out.state_count(); ++s) {
        std::vector<GkatTransFamily> kept;
        for (auto& f : out.trans[s]) {
            if (!dead[f.state]) kept.push_back(std::move(f));
        }
        out.trans[s] = std::move(kept);
    }
    return out;
}

CheckResult audit_failure(const ProofScript& p) {
    return {false, p.steps.size(),
            std::string("internal: accepted script fails the semantic audit in system ") +
                proof_system_name(p.system)};
}

CheckResult run_skipfree(const ProofScript& p) {
    SkipFreeExpP lhs = parse_skipfree(p.lhs, p.ctx);
    SkipFreeExpP rhs = parse_skipfree(p.rhs, p.ctx);
    std::size_t at = 0;
    SkipFreeExpP got;
    try {
        got = sf_fold(lhs, p.steps, p.system, p.ctx, &at);
    } catch (const StepFail& f) {
        return {false, at, f.msg};
    }
    if (!skipfree_equal(got, rhs)) {
        return {false, p.steps.size(),
                "derivation ends at " + render_skipfree(got) + ", not " + render_skipfree(rhs)};
    }
    if (p.system == ProofSystem::SkipfreeBisim) {
        SkipFreeAutomaton a1 = derive_skipfree(lhs, p.ctx);
        SkipFreeAutomaton a2 = derive_skipfree(rhs, p.ctx);
        if (!bisim_skipfree(a1, a1.start, a2, a2.start).equivalent) return audit_failure(p);
    } else {
        if (!lang_equiv(lhs, rhs, p.ctx).equivalent) return audit_failure(p);
    }
    return {};
}

CheckResult run_star(const ProofScript& p) {
    StarExpP lhs = parse_star(p.lhs, p.ctx);
    StarExpP rhs = parse_star(p.rhs, p.ctx);
    std::size_t at = 0;
    StarExpP got;
    try {
        got = st_fold(lhs, p.steps, p.ctx, &at);
    } catch (const StepFail& f) {
        return {false, at, f.msg};
    }
    if (!star_equal(got, rhs)) {
        return {false, p.steps.size(),
                "derivation ends at " + render_star(got) + ", not " + render_star(rhs)};
    }
    Lts l1 = derive_star(lhs, p.ctx);
    Lts l2 = derive_star(rhs, p.ctx);
    if (!bisim_lts(l1, l1.start, l2, l2.start).equivalent) return audit_failure(p);
    return {};
}

CheckResult run_gkat(const ProofScript& p) {
    GkatExpP lhs = parse_gkat(p.lhs, p.ctx);
    GkatExpP rhs = parse_gkat(p.rhs, p.ctx);
    std::size_t at = 0;
    GkatExpP got;
    try {
        got = gk_fold(lhs, p.steps, p.system, p.ctx, &at);
    } catch (const StepFail& f) {
        return {false, at, f.msg};
    }
    if (!gkat_equal(got, rhs)) {
        return {false, p.steps.size(),
                "derivation ends at " + render_gkat(got) + ", not " + render_gkat(rhs)};
    }
    GkatAutomaton g1 = derive_gkat(lhs, p.ctx);
    GkatAutomaton g2 = derive_gkat(rhs, p.ctx);
    if (p.system == ProofSystem::GkatLang) {
        g1 = gk_prune(g1);
        g2 = gk_prune(g2);
    }
    if (!bisim_gkat(g1, g1.start, g2, g2.start).equivalent) return audit_failure(p);
    return {};
}

}  // namespace

CheckResult check_script(const ProofScript& p) {
    try {
        switch (p.system) {
            case ProofSystem::SkipfreeBisim:
            case ProofSystem::SkipfreeLang: return run_skipfree(p);
            case ProofSystem::Star: return run_star(p);
            case ProofSystem::GkatBisim:
            case ProofSystem::GkatLang: return run_gkat(p);
        }
    } catch (const Error& e) {
        return {false, p.steps.size(), e.what()};
    }
    return {false, p.steps.size(), "unknown proof system"};
}

namespace {

std::vector<ProofStep> steps_from_json(const nlohmann::json& arr);

ProofStep step_from_json(const nlohmann::json& j) {
    ProofStep s;
    s.axiom = j.at("axiom").get<std::string>();
    if (j.contains("position")) {
        for (const auto& i : j.at("position")) s.position.push_back(i.get<std::size_t>());
    }
    if (j.contains("direction")) {
        std::string d = j.at("direction").get<std::string>();
        if (d != "lr" && d != "rl") throw Error("direction must be lr or rl, got " + d);
        s.left_to_right = d == "lr";
    }
    if (j.contains("subst")) {
        for (const auto& [k, v] : j.at("subst").items()) s.subst[k] = v.get<std::string>();
    }
    if (j.contains("premise")) s.premise = steps_from_json(j.at("premise").at("steps"));
    return s;
}

std::vector<ProofStep> steps_from_json(const nlohmann::json& arr) {
    std::vector<ProofStep> out;
    for (const auto& j : arr) out.push_back(step_from_json(j));
    return out;
}

nlohmann::json step_to_json(const ProofStep& s) {
    nlohmann::json j;
    j["axiom"] = s.axiom;
    j["position"] = s.position;
    j["direction"] = s.left_to_right ? "lr" : "rl";
    j["subst"] = s.subst;
    if (!s.premise.empty()) {
        nlohmann::json prem = nlohmann::json::array();
        for (const auto& p : s.premise) prem.push_back(step_to_json(p));
        j["premise"] = {{"steps", std::move(prem)}};
    }
    return j;
}

}  // namespace

ProofScript script_from_json(const nlohmann::json& j) {
    ProofScript p;
    p.system = proof_system_from_name(j.at("system").get<std::string>());
    p.ctx.universe = TestUniverse(j.at("tests").get<std::vector<std::string>>());
    p.ctx.actions = j.at("actions").get<std::vector<std::string>>();
    p.lhs = j.at("lhs").get<std::string>();
    p.rhs = j.at("rhs").get<std::string>();
    p.steps = steps_from_json(j.at("steps"));
    return p;
}

nlohmann::json script_to_json(const ProofScript& p) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : p.steps) steps.push_back(step_to_json(s));
    return {{"system", proof_system_name(p.system)},
            {"tests", p.ctx.universe.tests()},
            {"actions", p.ctx.actions},
            {"lhs", p.lhs},
            {"rhs", p.rhs},
            {"steps", std::move(steps)}};
}

}  // namespace gkat
