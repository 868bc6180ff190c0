#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gkat/equivalence.hpp"
#include "gkat/generate.hpp"
#include "gkat/small_step.hpp"
#include "gkat/syntax.hpp"
#include "gkat/translate.hpp"

using namespace gkat;

namespace {

Context ctx1() { return Context{TestUniverse({"t"}), {"p", "q"}}; }

bool star_bisim(const StarExpP& a, const StarExpP& b, const Context& c) {
    Lts la = derive_star(a, c), lb = derive_star(b, c);
    return bisim_lts(la, la.start, lb, lb.start).equivalent;
}

}  // namespace

TEST_CASE("guarding keeps exactly the initial transitions inside the test") {
    Context c = ctx1();
    AtomSet t1 = AtomSet::single(c.universe, 1);
    // a1.p survives guarding by {a1}; a0.q is cut
    StarExpP r = parse_star("a1.p + a0.q", c);
    StarExpP g = guard_star(t1, r);
    CHECK(star_bisim(g, parse_star("a1.p", c), c));
    CHECK(star_equal(guard_star(AtomSet::all(c.universe), r), r));
    CHECK(star_bisim(guard_star(AtomSet::none(c.universe), r), StarExp::zero(), c));

    // guarding only touches the head of a sequence
    StarExpP s = parse_star("a1.p a0.q", c);
    CHECK(star_bisim(guard_star(t1, s), s, c));
    CHECK(star_bisim(guard_star(t1.complemented(), s), StarExp::zero(), c));

    // on a star, the guard applies after unrolling the loop head
    StarExpP w = parse_star("a1.p * a0.q", c);
    StarExpP gw = guard_star(t1, w);
    Lts lw = derive_star(w, c), lg = derive_star(gw, c);
    // at atom 0 the guarded version has no transition, the original exits on q
    bool orig_has_exit = false, guarded_has_any = false;
    for (const TransFamily& f : lw.trans[lw.start])
        if (f.atoms.contains(0)) orig_has_exit = true;
    for (const TransFamily& f : lg.trans[lg.start])
        if (f.atoms.contains(0)) guarded_has_any = true;
    CHECK(orig_has_exit);
    CHECK(!guarded_has_any);
}

TEST_CASE("initial atoms are computed structurally") {
    Context c = ctx1();
    CHECK(initial_atoms(StarExp::zero(), c).empty());
    CHECK(initial_atoms(parse_star("a1.p", c), c) == AtomSet::single(c.universe, 1));
    CHECK(initial_atoms(parse_star("a1.p + a0.q", c), c) == AtomSet::all(c.universe));
    // a sequence starts where its head starts
    CHECK(initial_atoms(parse_star("a1.p a0.q", c), c) == AtomSet::single(c.universe, 1));
    // a star can start in the body or the exit
    CHECK(initial_atoms(parse_star("a1.p * a0.q", c), c) == AtomSet::all(c.universe));
}

TEST_CASE("forward translation preserves behaviour and is deterministic") {
    Context c = ctx1();
    StarExpP tp = gtr(SkipFreeExp::act("p"), c);
    // an action becomes the sum over all atoms, ascending and right-nested
    CHECK(star_equal(tp, parse_star("a0.p + a1.p", c)));

    Rng rng(7);
    Context cc = small_context(2, 2);
    for (int i = 0; i < 150; ++i) {
        SkipFreeExpP e = random_skipfree(rng, cc, 4);
        StarExpP r = gtr(e, cc);
        CHECK(is_deterministic_star(r, cc));
        SkipFreeAutomaton a = derive_skipfree(e, cc);
        Lts l = derive_star(r, cc);
        CHECK(bisim_lts(grph_star(a), a.start, l, l.start).equivalent);
    }
}

TEST_CASE("separation finds the maximal separating test") {
    Context c = ctx1();
    StarExpP r1 = parse_star("a1.p", c), r2 = parse_star("a0.q", c);
    auto w = separation(r1, r2, c);
    REQUIRE(w.has_value());
    CHECK(w->maximal);
    // the maximal test is everything outside r2's initial atoms
    CHECK(w->test == AtomSet::single(c.universe, 1));

    // overlapping initial atoms: no separating test
    CHECK(!separation(parse_star("a0.p", c), parse_star("a0.q", c), c).has_value());

    // 0 is separated from anything by the complement of the other side
    auto z = separation(StarExp::zero(), r2, c);
    REQUIRE(z.has_value());
    CHECK(z->test == AtomSet::single(c.universe, 1));

    // maximality agrees with exhaustive enumeration of all candidate tests
    Rng rng(13);
    Context cc = small_context(2, 2);
    for (int i = 0; i < 60; ++i) {
        StarExpP a = random_star(rng, cc, 3), b = random_star(rng, cc, 3);
        auto found = separation(a, b, cc);
        AtomSet best = AtomSet::none(cc.universe);
        bool any = false;
        for (std::uint64_t mask = 0; mask < (1u << cc.universe.atom_count()); ++mask) {
            AtomSet cand = AtomSet::none(cc.universe);
            for (Atom al : all_atoms(cc.universe))
                if ((mask >> al) & 1) cand.insert(al);
            if (star_bisim(guard_star(cand, a), a, cc) &&
                star_bisim(guard_star(cand.complemented(), b), b, cc)) {
                best = best.united(cand);
                any = true;
            }
        }
        if (!any) {
            CHECK(!found.has_value());
        } else {
            REQUIRE(found.has_value());
            CHECK(found->test == best);
        }
    }
}

TEST_CASE("the deterministic fragment") {
    Context c = ctx1();
    CHECK(is_deterministic_star(parse_star("a1.p + a0.q", c), c));
    CHECK(!is_deterministic_star(parse_star("a0.p + a0.q", c), c));
    CHECK(is_deterministic_star(parse_star("a1.p * a0.q", c), c));
    CHECK(!is_deterministic_star(parse_star("a0.p * a0.q", c), c));
    // determinism is checked recursively under sequencing
    CHECK(!is_deterministic_star(parse_star("a1.p (a0.p + a0.q)", c), c));
}

TEST_CASE("back translation inverts the forward translation up to bisimilarity") {
    Context c = ctx1();
    SkipFreeExpP lit = rtg(parse_star("a1.p", c), c);
    SkipFreeAutomaton la = derive_skipfree(lit, c);
    Lts ll = derive_star(parse_star("a1.p", c), c);
    CHECK(bisim_lts(grph_star(la), la.start, ll, ll.start).equivalent);

    CHECK_THROWS_AS(rtg(parse_star("a0.p + a0.q", c), c), PreconditionError);
    try {
        rtg(parse_star("a1.q (a0.p + a0.q)", c), c);
        FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
        // the error names the offending subterm
        CHECK(std::string(e.what()).find("a0.p + a0.q") != std::string::npos);
    }

    Rng rng(19);
    Context cc = small_context(2, 2);
    for (int i = 0; i < 150; ++i) {
        SkipFreeExpP e = random_skipfree(rng, cc, 4);
        SkipFreeExpP back = rtg(gtr(e, cc), cc);
        SkipFreeAutomaton a1 = derive_skipfree(e, cc);
        SkipFreeAutomaton a2 = derive_skipfree(back, cc);
        CHECK(bisim_skipfree(a1, a1.start, a2, a2.start).equivalent);
    }
}

TEST_CASE("round trip on the deterministic fragment preserves behaviour") {
    Rng rng(37);
    Context cc = small_context(2, 2);
    int covered = 0;
    for (int i = 0; i < 300 && covered < 80; ++i) {
        StarExpP r = random_star(rng, cc, 3);
        if (!is_deterministic_star(r, cc)) continue;
        ++covered;
        SkipFreeExpP e = rtg(r, cc);
        SkipFreeAutomaton a = derive_skipfree(e, cc);
        Lts l = derive_star(r, cc);
        CHECK(bisim_lts(grph_star(a), a.start, l, l.start).equivalent);
    }
    CHECK(covered >= 40);  // the generator hits the fragment often enough
}
