#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gkat/bool_algebra.hpp"
#include "gkat/generate.hpp"

using namespace gkat;

namespace {

Context ctx2() { return small_context(2, 1); }  // tests t0, t1

BExpP T(const std::string& n) { return BExp::mk_test(n); }

}  // namespace

TEST_CASE("universe basics") {
    TestUniverse u({"t", "s"});
    CHECK(u.capacity() == 2);
    CHECK(u.atom_count() == 4);
    CHECK(u.has_test("t"));
    CHECK(!u.has_test("x"));
    CHECK(u.index_of("s") == 1);
    CHECK_THROWS_AS(u.index_of("x"), UniverseError);
    CHECK_THROWS_AS(TestUniverse({"a", "a"}), UniverseError);

    std::vector<std::string> too_many;
    for (int i = 0; i < 17; ++i) too_many.push_back("t" + std::to_string(i));
    CHECK_THROWS_AS(TestUniverse{too_many}, CapacityError);
    CHECK_NOTHROW(TestUniverse(too_many, 17));
}

TEST_CASE("entailment evaluates truth assignments") {
    TestUniverse u({"t", "s"});
    // atom bit i set iff test i holds; {t} is atom 0b01 = 1
    BExpP b = BExp::mk_and(T("t"), BExp::mk_not(T("s")));
    CHECK(entails(1, b, u));
    CHECK(!entails(3, b, u));
    for (Atom a : all_atoms(u)) {
        CHECK(entails(a, BExp::one(), u));
        CHECK(!entails(a, BExp::zero(), u));
        CHECK((entails(a, T("t"), u) != entails(a, BExp::mk_not(T("t")), u)));
    }
}

TEST_CASE("atoms_of is homomorphic") {
    TestUniverse u1({"t"});
    CHECK(atoms_of(T("t"), u1).atoms() == std::vector<Atom>{1});
    CHECK(atoms_of(BExp::mk_or(T("t"), BExp::mk_not(T("t"))), u1) == AtomSet::all(u1));

    TestUniverse u({"t", "s"});
    CHECK(atoms_of(BExp::mk_and(T("t"), BExp::mk_not(T("t"))), u).empty());

    Context c = ctx2();
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        BExpP b = random_bexp(rng, c, 4), d = random_bexp(rng, c, 4);
        const TestUniverse& uu = c.universe;
        CHECK(atoms_of(BExp::mk_or(b, d), uu) == atoms_of(b, uu).united(atoms_of(d, uu)));
        CHECK(atoms_of(BExp::mk_and(b, d), uu) == atoms_of(b, uu).intersected(atoms_of(d, uu)));
        CHECK(atoms_of(BExp::mk_not(b), uu) == atoms_of(b, uu).complemented());
    }
}

TEST_CASE("ba_equiv decides the free algebra") {
    TestUniverse u({"t", "s", "r"});
    BExpP lhs = BExp::mk_or(T("t"), BExp::mk_and(T("s"), T("r")));
    BExpP rhs = BExp::mk_and(BExp::mk_or(T("t"), T("s")), BExp::mk_or(T("t"), T("r")));
    CHECK(ba_equiv(lhs, rhs, u));
    CHECK(!ba_equiv(T("t"), T("s"), u));
    CHECK(ba_equiv(BExp::mk_not(BExp::mk_not(T("t"))), T("t"), u));
}

TEST_CASE("ba_equiv is an equivalence and congruence") {
    Context c = ctx2();
    const TestUniverse& u = c.universe;
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        BExpP a = random_bexp(rng, c, 3), b = random_bexp(rng, c, 3),
              d = random_bexp(rng, c, 3);
        CHECK(ba_equiv(a, a, u));
        CHECK(ba_equiv(a, b, u) == ba_equiv(b, a, u));
        if (ba_equiv(a, b, u) && ba_equiv(b, d, u)) CHECK(ba_equiv(a, d, u));
        if (ba_equiv(a, b, u)) {
            CHECK(ba_equiv(BExp::mk_not(a), BExp::mk_not(b), u));
            CHECK(ba_equiv(BExp::mk_or(a, d), BExp::mk_or(b, d), u));
            CHECK(ba_equiv(BExp::mk_and(a, d), BExp::mk_and(b, d), u));
        }
    }
}

TEST_CASE("atom set operations") {
    TestUniverse u({"t", "s"});
    AtomSet s = AtomSet::none(u);
    CHECK(s.empty());
    s.insert(2);
    CHECK(s.contains(2));
    CHECK(s.count() == 1);
    CHECK(AtomSet::single(u, 2) == s);
    CHECK(s.subset_of(AtomSet::all(u)));
    CHECK(s.complemented().atoms() == std::vector<Atom>{0, 1, 3});
    s.erase(2);
    CHECK(s.empty());
}

TEST_CASE("deterministic rendering of atom sets") {
    TestUniverse u({"t", "s"});
    AtomSet s = AtomSet::none(u);
    s.insert(0);
    s.insert(3);
    // minterm disjunction in ascending atom order
    CHECK(render_bexp(bexp_of_atom_set(s, u)) == "!t & !s | t & s");
    CHECK(render_bexp(bexp_of_atom(2, u)) == "!t & s");
    CHECK(ba_equiv(bexp_of_atom_set(AtomSet::all(u), u), BExp::one(), u));
    CHECK(ba_equiv(bexp_of_atom_set(AtomSet::none(u), u), BExp::zero(), u));
    // round trip through atoms_of
    CHECK(atoms_of(bexp_of_atom_set(s, u), u) == s);
}

TEST_CASE("empty universe has the single empty atom") {
    TestUniverse u{};
    CHECK(u.atom_count() == 1);
    CHECK(all_atoms(u) == std::vector<Atom>{0});
    CHECK(entails(0, BExp::one(), u));
    CHECK(render_bexp(bexp_of_atom(0, u)) == "1");
}
