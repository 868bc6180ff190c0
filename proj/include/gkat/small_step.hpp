#ifndef GKAT_SMALL_STEP_HPP
#define GKAT_SMALL_STEP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gkat/bool_algebra.hpp"
#include "gkat/syntax.hpp"

namespace gkat {

/// Default cap on reachable-state exploration. Expression-derived systems are
/// finite with far fewer states; hitting the cap signals a construction bug
/// or an adversarial input.
inline constexpr std::size_t kDefaultStateBound = 100000;

/// Transition endpoint: successful termination or another state.
struct Target {
    bool is_accept = false;
    std::size_t state = 0;

    static Target accept() { return Target{true, 0}; }
    static Target to(std::size_t s) { return Target{false, s}; }

    bool operator==(const Target& o) const {
        return is_accept == o.is_accept && (is_accept || state == o.state);
    }
    bool operator!=(const Target& o) const { return !(*this == o); }
};

/// A family of transitions sharing action and endpoint, one per atom in
/// `atoms`. Keeping guards as AtomSets avoids materializing 2^|T| entries.
struct TransFamily {
    AtomSet atoms;
    std::string action;
    Target target;
};

/// Deterministic skip-free automaton: per state and atom, either reject
/// (no family covers the atom) or output an action and accept/move.
struct SkipFreeAutomaton {
    Context ctx;
    std::size_t start = 0;
    std::vector<std::string> labels;
    std::vector<SkipFreeExpP> exprs;  // entries may be null for synthetic automata
    std::vector<std::vector<TransFamily>> trans;  // atoms disjoint within a state

    std::size_t state_count() const { return trans.size(); }
    /// The family covering (state, atom), or nullptr for reject.
    const TransFamily* outcome(std::size_t state, Atom a) const;
};

/// Labelled transition system: per state, a finite set of (atom, action,
/// endpoint) transitions; atoms of distinct families may overlap.
struct Lts {
    Context ctx;
    std::size_t start = 0;
    std::vector<std::string> labels;
    std::vector<StarExpP> exprs;  // entries may be null for synthetic systems
    std::vector<std::vector<TransFamily>> trans;

    std::size_t state_count() const { return trans.size(); }
};

/// Output transition family of a GKAT automaton (endpoint always a state).
struct GkatTransFamily {
    AtomSet atoms;
    std::string action;
    std::size_t state = 0;
};

/// Deterministic GKAT automaton: per state and atom, reject, accept, or
/// output an action and move.
struct GkatAutomaton {
    Context ctx;
    std::size_t start = 0;
    std::vector<std::string> labels;
    std::vector<GkatExpP> exprs;
    std::vector<AtomSet> accepts;  // per state, the immediately accepted atoms
    std::vector<std::vector<GkatTransFamily>> trans;  // atoms disjoint with accepts

    std::size_t state_count() const { return trans.size(); }
    /// The output family covering (state, atom), or nullptr if none.
    const GkatTransFamily* outcome(std::size_t state, Atom a) const;
};

/// Reachable syntactic-derivative automaton of a skip-free expression:
/// actions accept with themselves, guarded choice branches on entailment,
/// sequencing rewrites the left factor, loops unroll/self-loop/exit.
SkipFreeAutomaton derive_skipfree(const SkipFreeExpP& e, const Context& ctx,
                                  std::size_t state_bound = kDefaultStateBound);

/// Reachable derivative LTS of a one-free star expression.
Lts derive_star(const StarExpP& r, const Context& ctx,
                std::size_t state_bound = kDefaultStateBound);

/// Reachable derivative automaton of a full GKAT expression; the sequencing
/// successor drops a leading 1 and nothing else.
GkatAutomaton derive_gkat(const GkatExpP& e, const Context& ctx,
                          std::size_t state_bound = kDefaultStateBound);

/// Views a skip-free automaton as an LTS over the same state set.
Lts grph_star(const SkipFreeAutomaton& a);

/// Inverse of grph_star on deterministic LTSs; throws NondeterminismError
/// if two transitions of one state share an atom.
SkipFreeAutomaton func_star(const Lts& l);

/// Adds a fresh all-accepting state and reroutes accepting transitions to it.
GkatAutomaton embed_automaton(const SkipFreeAutomaton& a);

// JSON interchange: {states:[{id,label}], start,
// transitions:[{from, atoms:[...], action?, to:"accept"|id, tag?}]}.
nlohmann::json skipfree_to_json(const SkipFreeAutomaton& a);
nlohmann::json lts_to_json(const Lts& l);
nlohmann::json gkat_to_json(const GkatAutomaton& g);

/// Reads an LTS back from the JSON interchange form. If entry_tags is given,
/// it receives one flag per transition family: true iff tagged "entry".
Lts lts_from_json(const nlohmann::json& j, const Context& ctx,
                  std::vector<std::vector<bool>>* entry_tags = nullptr);

// DOT export with transition guards rendered as Boolean expressions.
std::string skipfree_to_dot(const SkipFreeAutomaton& a);
std::string lts_to_dot(const Lts& l);
std::string gkat_to_dot(const GkatAutomaton& g);

}  // namespace gkat

#endif
