#ifndef GKAT_BOOL_ALGEBRA_HPP
#define GKAT_BOOL_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gkat/errors.hpp"

namespace gkat {

/// Default upper bound on the number of declared tests. The atom space has
/// size 2^|tests|, and every decision procedure here enumerates it, so the
/// cap turns blowup into a reported error instead of a hang.
inline constexpr std::size_t kDefaultMaxTests = 16;

/// An atom: one complete truth assignment over the test universe.
/// Bit i is set iff test i holds. Atoms are ordered by their mask value.
using Atom = std::uint32_t;

/// The finite, ordered set of declared test names.
class TestUniverse {
public:
    TestUniverse() = default;
    explicit TestUniverse(std::vector<std::string> tests,
                          std::size_t max_tests = kDefaultMaxTests);

    std::size_t capacity() const { return tests_.size(); }
    std::size_t atom_count() const { return std::size_t{1} << tests_.size(); }
    const std::vector<std::string>& tests() const { return tests_; }

    bool has_test(const std::string& name) const;
    /// Index of a declared test; throws UniverseError for unknown names.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const TestUniverse& other) const { return tests_ == other.tests_; }

private:
    std::vector<std::string> tests_;
};

/// Boolean expression tree over a test universe.
struct BExp;
using BExpP = std::shared_ptr<const BExp>;

struct BExp {
    enum class Kind { Zero, One, Test, Or, And, Not };
    Kind kind;
    std::string test;  // Kind::Test only
    BExpP left, right; // Or/And both, Not uses left

    static BExpP zero();
    static BExpP one();
    static BExpP mk_test(std::string name);
    static BExpP mk_or(BExpP l, BExpP r);
    static BExpP mk_and(BExpP l, BExpP r);
    static BExpP mk_not(BExpP c);
};

bool bexp_equal(const BExpP& a, const BExpP& b);
std::string render_bexp(const BExpP& b);

/// A set of atoms: the canonical form of an element of the free Boolean
/// algebra over the universe. Two BExp denote the same element iff their
/// AtomSets are equal.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::size_t atom_count);

    static AtomSet none(const TestUniverse& u);
    static AtomSet all(const TestUniverse& u);
    static AtomSet single(const TestUniverse& u, Atom a);

    std::size_t atom_count() const { return atom_count_; }
    bool contains(Atom a) const;
    void insert(Atom a);
    void erase(Atom a);
    std::size_t count() const;
    bool empty() const;

    AtomSet united(const AtomSet& other) const;
    AtomSet intersected(const AtomSet& other) const;
    AtomSet complemented() const;
    bool subset_of(const AtomSet& other) const;

    std::vector<Atom> atoms() const;

    bool operator==(const AtomSet& other) const;
    bool operator!=(const AtomSet& other) const { return !(*this == other); }

private:
    std::size_t atom_count_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// All atoms of the universe in ascending mask order.
std::vector<Atom> all_atoms(const TestUniverse& u);

/// True iff evaluating b under the truth assignment a yields true.
bool entails(Atom a, const BExpP& b, const TestUniverse& u);

/// The set { alpha : entails(alpha, b) }.
AtomSet atoms_of(const BExpP& b, const TestUniverse& u);

/// Decides provability from the Boolean algebra axioms via the free-algebra
/// isomorphism: b and c are equivalent iff their atom sets coincide.
bool ba_equiv(const BExpP& b, const BExpP& c, const TestUniverse& u);

/// Renders an AtomSet back to a BExp as the disjunction of minterms in
/// ascending atom order (deterministic output).
BExpP bexp_of_atom_set(const AtomSet& s, const TestUniverse& u);

/// Minterm of a single atom: conjunction of all tests/negated tests.
BExpP bexp_of_atom(Atom a, const TestUniverse& u);

}  // namespace gkat

#endif
