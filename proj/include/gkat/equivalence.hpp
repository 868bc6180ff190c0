#ifndef GKAT_EQUIVALENCE_HPP
#define GKAT_EQUIVALENCE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gkat/small_step.hpp"

namespace gkat {

struct TraceStep {
    Atom atom;
    std::string action;

    bool operator==(const TraceStep& o) const { return atom == o.atom && action == o.action; }
    bool operator<(const TraceStep& o) const {
        return atom != o.atom ? atom < o.atom : action < o.action;
    }
};

/// A nonempty alternating atom/action string denoting one successful run.
using GuardedTrace = std::vector<TraceStep>;

enum class DisagreementKind {
    AcceptVsReject,
    AcceptVsStep,
    RejectVsStep,
    ActionMismatch,
};

const char* disagreement_name(DisagreementKind k);

/// A distinguishing experiment: both systems can follow `steps` from their
/// start states; at `verdict_atom` they then differ as `kind` records.
struct Trace {
    std::vector<TraceStep> steps;
    Atom verdict_atom = 0;
    DisagreementKind kind = DisagreementKind::AcceptVsReject;
};

struct EquivVerdict {
    bool equivalent = false;
    /// On success: a bisimulation relating the two start states
    /// (pairs of state indices, first component in system 1).
    std::vector<std::pair<std::size_t, std::size_t>> witness;
    /// On failure: the behavioral disagreement.
    Trace counterexample;
    /// Language checks additionally provide a guarded trace accepted by
    /// exactly one side (1 or 2).
    GuardedTrace accepted_trace;
    int accepted_by = 0;
};

nlohmann::json trace_to_json(const Trace& t);
nlohmann::json verdict_to_json(const EquivVerdict& v);

/// Bisimilarity of two skip-free automaton states: matching rejection sets,
/// matching accepting outputs, and related successors at every atom.
EquivVerdict bisim_skipfree(const SkipFreeAutomaton& a1, std::size_t s1,
                            const SkipFreeAutomaton& a2, std::size_t s2);

/// Bisimilarity of two LTS states: equal sets of accepting labels plus the
/// forth and back transfer conditions.
EquivVerdict bisim_lts(const Lts& l1, std::size_t s1, const Lts& l2, std::size_t s2);

/// Bisimilarity of two GKAT automaton states.
EquivVerdict bisim_gkat(const GkatAutomaton& g1, std::size_t s1, const GkatAutomaton& g2,
                        std::size_t s2);

/// Flags the states accepting the empty language: every atom either rejects
/// or moves into another such state.
std::vector<bool> dead_states(const SkipFreeAutomaton& a);

/// Reroutes every transition into a dead state to rejection.
SkipFreeAutomaton prune_automaton(const SkipFreeAutomaton& a);

/// True iff e accepts no trace.
bool is_dead_expr(const SkipFreeExpP& e, const Context& ctx);

/// Syntactic pruning: a sequence dies with its right factor, a loop dies
/// with its guarded exit, everything else maps through.
SkipFreeExpP prune_expr(const SkipFreeExpP& e, const Context& ctx);

/// Language equivalence, decided as bisimilarity of the pruned automata.
/// On failure the verdict carries a guarded trace accepted by exactly one
/// side, rebuilt from the pruned-automaton disagreement.
EquivVerdict lang_equiv(const SkipFreeExpP& e1, const SkipFreeExpP& e2, const Context& ctx);

/// All accepted guarded traces with at most max_len actions.
std::set<GuardedTrace> traces(const SkipFreeExpP& e, const Context& ctx, std::size_t max_len);
std::set<GuardedTrace> traces_from(const SkipFreeAutomaton& a, std::size_t state,
                                   std::size_t max_len);

/// Word in At(ΣAt)*: atoms.size() == actions.size() + 1.
struct GuardedString {
    std::vector<Atom> atoms;
    std::vector<std::string> actions;

    bool operator==(const GuardedString& o) const {
        return atoms == o.atoms && actions == o.actions;
    }
    bool operator<(const GuardedString& o) const {
        return atoms != o.atoms ? atoms < o.atoms : actions < o.actions;
    }
};

/// The guarded-string language of a full GKAT expression, truncated to
/// strings with at most max_actions actions.
std::set<GuardedString> guarded_lang_gkat(const GkatExpP& e, const Context& ctx,
                                          std::size_t max_actions);

/// A relation on 0..state_count-1 as row bitmasks (state_count <= 64).
using Relation = std::vector<std::uint64_t>;

/// States are predicates' and relations' common carrier; tests denote the
/// states satisfying them, actions arbitrary relations.
struct Interpretation {
    std::size_t state_count = 0;
    std::map<std::string, std::uint64_t> sat;   // test -> satisfying states
    std::map<std::string, Relation> eval;       // action -> relation
};

/// Input/output relation of a GKAT expression under an interpretation;
/// loops via reflexive-transitive closure.
Relation eval_relational(const GkatExpP& e, const Interpretation& sigma, const Context& ctx);

}  // namespace gkat

#endif
