#ifndef GKAT_SOLVE_HPP
#define GKAT_SOLVE_HPP

#include <map>
#include <string>
#include <vector>

#include "gkat/small_step.hpp"

namespace gkat {

/// An LTS together with an entry/body tag on every transition family that
/// targets a state. Families targeting acceptance form the exit outputs and
/// carry no tag.
struct LayeredLts {
    Lts lts;
    std::vector<std::vector<bool>> entry;  // parallel to lts.trans

    bool is_entry(std::size_t state, std::size_t family) const {
        return entry[state][family];
    }
};

/// Outcome of the well-layeredness check. Conditions, in order: flatness
/// (no pair both entry and body), no body cycles, loop entries re-enter
/// their source, loop containment is acyclic, and entered loops have no
/// accepting exits from inside.
struct LayeringReport {
    bool ok = true;
    std::string condition;  // violated condition, empty when ok
    std::string witness;    // human-readable witness path
};

LayeringReport check_well_layered(const LayeredLts& l);

/// Searches for a labelling passing check_well_layered: transitions on no
/// cycle are always body; cycle transitions are first tagged by whether the
/// target reaches the source, then enumerated exhaustively. Returns true and
/// fills `out` on success. Throws CapacityError when the enumeration space
/// is too large.
bool find_layering(const Lts& l, LayeredLts& out, std::size_t max_choice_bits = 20);

/// Star expression per state, each verified bisimilar to its state.
struct SolutionMap {
    std::vector<StarExpP> assignment;
};

/// The canonical solution: per state, a star expression whose loop part
/// collects entry transitions (with through-paths back to the loop head)
/// and whose exit part collects acceptance and body transitions. Requires a
/// valid layering; throws PreconditionError otherwise.
SolutionMap canonical_solution(const LayeredLts& l);

/// One-step expansion: the sum of r's accepting initial transitions plus
/// the sum of its stepping initial transitions sequenced with their targets,
/// in ascending atom order. Bisimilar to r.
StarExpP expand_fundamental(const StarExpP& r, const Context& ctx);

}  // namespace gkat

#endif
