#ifndef GKAT_TRANSLATE_HPP
#define GKAT_TRANSLATE_HPP

#include <optional>

#include "gkat/syntax.hpp"

namespace gkat {

/// b·r: keeps exactly the initial transitions of r whose atom lies in b.
StarExpP guard_star(const AtomSet& b, const StarExpP& r);

/// Forward translation of skip-free GKAT into one-free star expressions.
/// Generalized sums over atoms are right-nested in ascending atom order.
StarExpP gtr(const SkipFreeExpP& e, const Context& ctx);

/// Atoms labelling some initial transition of r.
AtomSet initial_atoms(const StarExpP& r, const Context& ctx);

/// A test separating r1 from r2: guarding r1 by it and r2 by its complement
/// changes neither expression. `maximal` marks the weakest such test.
struct SeparationWitness {
    AtomSet test;
    bool maximal = false;
};

/// The maximal separating test, or nullopt if none exists. Candidates come
/// from the initial-atom sets and are verified behaviorally before return.
std::optional<SeparationWitness> separation(const StarExpP& r1, const StarExpP& r2,
                                            const Context& ctx);

/// Membership in the deterministic fragment: sums and stars must have
/// separated operands.
bool is_deterministic_star(const StarExpP& r, const Context& ctx);

/// Back translation into skip-free GKAT; defined on the deterministic
/// fragment, using the maximal separating test at sums and stars.
/// Throws PreconditionError naming the offending subterm otherwise.
SkipFreeExpP rtg(const StarExpP& r, const Context& ctx);

}  // namespace gkat

#endif
