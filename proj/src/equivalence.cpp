#include "gkat/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include <nlohmann/json.hpp>

namespace gkat {

const char* disagreement_name(DisagreementKind k) {
    switch (k) {
        case DisagreementKind::AcceptVsReject: return "accept-vs-reject";
        case DisagreementKind::AcceptVsStep: return "accept-vs-step";
        case DisagreementKind::RejectVsStep: return "reject-vs-step";
        case DisagreementKind::ActionMismatch: return "action-mismatch";
    }
    return "?";
}

nlohmann::json trace_to_json(const Trace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps) steps.push_back({{"atom", s.atom}, {"action", s.action}});
    return {{"steps", std::move(steps)}, {"atom", t.verdict_atom},
            {"kind", disagreement_name(t.kind)}};
}

nlohmann::json verdict_to_json(const EquivVerdict& v) {
    nlohmann::json j;
    j["equivalent"] = v.equivalent;
    if (v.equivalent) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& p : v.witness) w.push_back({p.first, p.second});
        j["witness"] = std::move(w);
    } else {
        j["counterexample"] = trace_to_json(v.counterexample);
        if (v.accepted_by != 0) {
            nlohmann::json t = nlohmann::json::array();
            for (const auto& s : v.accepted_trace) {
                t.push_back({{"atom", s.atom}, {"action", s.action}});
            }
            j["trace"] = std::move(t);
            j["acceptedBy"] = v.accepted_by;
        }
    }
    return j;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

struct PairEntry {
    std::size_t x, y;
    std::size_t parent;  // index into the pair list; self for the root
    Atom atom;           // edge taken from parent
    std::string action;
};

Trace unwind(const std::vector<PairEntry>& pairs, std::size_t i, Atom verdict,
             DisagreementKind kind) {
    Trace t;
    t.verdict_atom = verdict;
    t.kind = kind;
    while (pairs[i].parent != i) {
        t.steps.push_back({pairs[i].atom, pairs[i].action});
        i = pairs[i].parent;
    }
    std::reverse(t.steps.begin(), t.steps.end());
    return t;
}

std::vector<std::pair<std::size_t, std::size_t>> class_witness(UnionFind& uf, std::size_t n1,
                                                               std::size_t n2) {
    std::vector<std::pair<std::size_t, std::size_t>> w;
    for (std::size_t x = 0; x < n1; ++x) {
        for (std::size_t y = 0; y < n2; ++y) {
            if (uf.find(x) == uf.find(n1 + y)) w.emplace_back(x, y);
        }
    }
    return w;
}

void require_same_context(const Context& c1, const Context& c2) {
    if (!(c1 == c2)) throw UniverseError("the two systems declare different tests or actions");
}

}  // namespace

EquivVerdict bisim_skipfree(const SkipFreeAutomaton& a1, std::size_t s1,
                            const SkipFreeAutomaton& a2, std::size_t s2) {
    require_same_context(a1.ctx, a2.ctx);
    std::size_t n1 = a1.state_count();
    UnionFind uf(n1 + a2.state_count());
    std::vector<PairEntry> pairs;
    std::deque<std::size_t> work;
    pairs.push_back({s1, s2, 0, 0, {}});
    uf.unite(s1, n1 + s2);
    work.push_back(0);

    while (!work.empty()) {
        std::size_t i = work.front();
        work.pop_front();
        std::size_t x = pairs[i].x, y = pairs[i].y;
        for (Atom a : all_atoms(a1.ctx.universe)) {
            const TransFamily* o1 = a1.outcome(x, a);
            const TransFamily* o2 = a2.outcome(y, a);
            if (!o1 && !o2) continue;
            EquivVerdict fail;
            if (!o1 || !o2) {
                fail.counterexample = unwind(pairs, i, a, DisagreementKind::RejectVsStep);
                return fail;
            }
            if (o1->action != o2->action) {
                fail.counterexample = unwind(pairs, i, a, DisagreementKind::ActionMismatch);
                return fail;
            }
            if (o1->target.is_accept != o2->target.is_accept) {
                fail.counterexample = unwind(pairs, i, a, DisagreementKind::AcceptVsStep);
                return fail;
            }
            if (o1->target.is_accept) continue;
            if (uf.unite(o1->target.state, n1 + o2->target.state)) {
                pairs.push_back({o1->target.state, o2->target.state, i, a, o1->action});
                work.push_back(pairs.size() - 1);
            }
        }
    }
    EquivVerdict ok;
    ok.equivalent = true;
    ok.witness = class_witness(uf, n1, a2.state_count());
    return ok;
}

EquivVerdict bisim_gkat(const GkatAutomaton& g1, std::size_t s1, const GkatAutomaton& g2,
                        std::size_t s2) {
    require_same_context(g1.ctx, g2.ctx);
    std::size_t n1 = g1.state_count();
    UnionFind uf(n1 + g2.state_count());
    std::vector<PairEntry> pairs;
    std::deque<std::size_t> work;
    pairs.push_back({s1, s2, 0, 0, {}});
    uf.unite(s1, n1 + s2);
    work.push_back(0);

    while (!work.empty()) {
        std::size_t i = work.front();
        work.pop_front();
        std::size_t x = pairs[i].x, y = pairs[i].y;
        for (Atom a : all_atoms(g1.ctx.universe)) {
            bool acc1 = g1.accepts[x].contains(a);
            bool acc2 = g2.accepts[y].contains(a);
            const GkatTransFamily* o1 = acc1 ? nullptr : g1.outcome(x, a);
            const GkatTransFamily* o2 = acc2 ? nullptr : g2.outcome(y, a);
            EquivVerdict fail;
            if (acc1 != acc2) {
                const GkatTransFamily* other = acc1 ? o2 : o1;
                fail.counterexample =
                    unwind(pairs, i, a,
                           other ? DisagreementKind::AcceptVsStep
                                 : DisagreementKind::AcceptVsReject);
                return fail;
            }
            if (acc1) continue;
            if (!o1 && !o2) continue;
            if (!o1 || !o2) {
                fail.counterexample = unwind(pairs, i, a, DisagreementKind::RejectVsStep);
                return fail;
            }
            if (o1->action != o2->action) {
                fail.counterexample = unwind(pairs, i, a, DisagreementKind::ActionMismatch);
                return fail;
            }
            if (uf.unite(o1->state, n1 + o2->state)) {
                pairs.push_back({o1->state, o2->state, i, a, o1->action});
                work.push_back(pairs.size() - 1);
            }
        }
    }
    EquivVerdict ok;
    ok.equivalent = true;
    ok.witness = class_witness(uf, n1, g2.state_count());
    return ok;
}

// ---------------------------------------------------------------------------
// LTS bisimilarity: greatest-fixpoint refinement over the full product,
// sound for nondeterministic systems (a merge-based scheme is not).
// ---------------------------------------------------------------------------

namespace {

struct LtsView {
    // Per state: accepting labels and state transitions, expanded per atom.
    std::vector<std::set<std::pair<Atom, std::string>>> accepts;
    std::vector<std::vector<std::tuple<Atom, std::string, std::size_t>>> moves;

    explicit LtsView(const Lts& l) : accepts(l.state_count()), moves(l.state_count()) {
        for (std::size_t s = 0; s < l.state_count(); ++s) {
            for (const auto& f : l.trans[s]) {
                for (Atom a : f.atoms.atoms()) {
                    if (f.target.is_accept) {
                        accepts[s].insert({a, f.action});
                    } else {
                        moves[s].emplace_back(a, f.action, f.target.state);
                    }
                }
            }
            std::sort(moves[s].begin(), moves[s].end());
            moves[s].erase(std::unique(moves[s].begin(), moves[s].end()), moves[s].end());
        }
    }
};

class LtsBisim {
public:
    LtsBisim(const Lts& l1, const Lts& l2) : v1_(l1), v2_(l2), n1_(l1.state_count()),
                                             n2_(l2.state_count()),
                                             round_(n1_, std::vector<std::size_t>(n2_, 0)) {
        // round 0 = still related; k > 0 = removed in round k
        for (std::size_t k = 1;; ++k) {
            bool changed = false;
            for (std::size_t x = 0; x < n1_; ++x) {
                for (std::size_t y = 0; y < n2_; ++y) {
                    if (round_[x][y] != 0) continue;
                    if (!holds(x, y, k)) {
                        round_[x][y] = k;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
    }

    bool related(std::size_t x, std::size_t y) const { return round_[x][y] == 0; }

    std::vector<std::pair<std::size_t, std::size_t>> witness() const {
        std::vector<std::pair<std::size_t, std::size_t>> w;
        for (std::size_t x = 0; x < n1_; ++x) {
            for (std::size_t y = 0; y < n2_; ++y) {
                if (related(x, y)) w.emplace_back(x, y);
            }
        }
        return w;
    }

    Trace counterexample(std::size_t x, std::size_t y) const {
        Trace t = rebuild(x, y);
        return t;
    }

private:
    // Present at the start of round k (i.e. not removed in rounds < k).
    bool present(std::size_t x, std::size_t y, std::size_t k) const {
        return round_[x][y] == 0 || round_[x][y] >= k;
    }

    // All three bisimulation clauses against the relation as of round k.
    bool holds(std::size_t x, std::size_t y, std::size_t k) const {
        if (v1_.accepts[x] != v2_.accepts[y]) return false;
        for (const auto& [a, p, x2] : v1_.moves[x]) {
            bool matched = false;
            for (const auto& [b, q, y2] : v2_.moves[y]) {
                if (a == b && p == q && present(x2, y2, k)) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
        for (const auto& [a, p, y2] : v2_.moves[y]) {
            bool matched = false;
            for (const auto& [b, q, x2] : v1_.moves[x]) {
                if (a == b && p == q && present(x2, y2, k)) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
        return true;
    }

    Trace rebuild(std::size_t x, std::size_t y) const {
        std::size_t k = round_[x][y];
        // Accepting-label mismatch: terminal disagreement.
        if (v1_.accepts[x] != v2_.accepts[y]) {
            std::set<std::pair<Atom, std::string>> diff;
            std::set_symmetric_difference(v1_.accepts[x].begin(), v1_.accepts[x].end(),
                                          v2_.accepts[y].begin(), v2_.accepts[y].end(),
                                          std::inserter(diff, diff.begin()));
            auto [a, p] = *diff.begin();
            bool on1 = v1_.accepts[x].count({a, p}) != 0;
            const auto& other = on1 ? v2_.moves[y] : v1_.moves[x];
            bool other_steps = std::any_of(other.begin(), other.end(), [&](const auto& m) {
                return std::get<0>(m) == a && std::get<1>(m) == p;
            });
            Trace t;
            t.verdict_atom = a;
            t.kind = other_steps ? DisagreementKind::AcceptVsStep
                                 : DisagreementKind::AcceptVsReject;
            return t;
        }
        // Otherwise some transition has no partner as of the removal round.
        auto scan = [&](const auto& mine, const auto& theirs, bool mine_is_first)
            -> std::optional<Trace> {
            for (const auto& [a, p, s2] : mine) {
                std::size_t best_round = 0;
                std::size_t best_other = 0;
                bool any_same_label = false, any_same_atom = false, viable = false;
                for (const auto& [b, q, t2] : theirs) {
                    if (b != a) continue;
                    any_same_atom = true;
                    if (q != p) continue;
                    any_same_label = true;
                    std::size_t r = mine_is_first ? round_[s2][t2] : round_[t2][s2];
                    if (r == 0 || r >= k) {
                        viable = true;  // clause satisfied for this transition
                        break;
                    }
                    if (r >= best_round) {
                        best_round = r;
                        best_other = t2;
                    }
                }
                bool acc_match =
                    mine_is_first ? v2_.accepts[y].count({a, p}) != 0
                                  : v1_.accepts[x].count({a, p}) != 0;
                if (viable || acc_match) continue;
                Trace t;
                if (!any_same_label) {
                    t.verdict_atom = a;
                    t.kind = any_same_atom ? DisagreementKind::ActionMismatch
                                           : DisagreementKind::RejectVsStep;
                    return t;
                }
                // Every partner candidate was removed earlier; descend.
                Trace sub = mine_is_first ? rebuild(s2, best_other) : rebuild(best_other, s2);
                sub.steps.insert(sub.steps.begin(), TraceStep{a, p});
                return sub;
            }
            return std::nullopt;
        };
        if (auto t = scan(v1_.moves[x], v2_.moves[y], true)) return *t;
        if (auto t = scan(v2_.moves[y], v1_.moves[x], false)) return *t;
        // Unreachable for a removed pair.
        return Trace{};
    }

    LtsView v1_, v2_;
    std::size_t n1_, n2_;
    std::vector<std::vector<std::size_t>> round_;
};

}  // namespace

EquivVerdict bisim_lts(const Lts& l1, std::size_t s1, const Lts& l2, std::size_t s2) {
    require_same_context(l1.ctx, l2.ctx);
    LtsBisim b(l1, l2);
    EquivVerdict v;
    if (b.related(s1, s2)) {
        v.equivalent = true;
        v.witness = b.witness();
    } else {
        v.counterexample = b.counterexample(s1, s2);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Dead states, pruning, language equivalence
// ---------------------------------------------------------------------------

std::vector<bool> dead_states(const SkipFreeAutomaton& a) {
    std::size_t n = a.state_count();
    std::vector<std::vector<std::size_t>> rev(n);
    std::deque<std::size_t> work;
    std::vector<bool> live(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& f : a.trans[s]) {
            if (f.target.is_accept) {
                if (!live[s]) {
                    live[s] = true;
                    work.push_back(s);
                }
            } else {
                rev[f.target.state].push_back(s);
            }
        }
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

SkipFreeAutomaton prune_automaton(const SkipFreeAutomaton& a) {
    std::vector<bool> dead = dead_states(a);
    SkipFreeAutomaton out = a;
    for (std::size_t s = 0; s < out.state_count(); ++s) {
        std::vector<TransFamily> kept;
        for (auto& f : out.trans[s]) {
            if (f.target.is_accept || !dead[f.target.state]) kept.push_back(std::move(f));
        }
        out.trans[s] = std::move(kept);
    }
    return out;
}

bool is_dead_expr(const SkipFreeExpP& e, const Context& ctx) {
    SkipFreeAutomaton a = derive_skipfree(e, ctx);
    return dead_states(a)[a.start];
}

SkipFreeExpP prune_expr(const SkipFreeExpP& e, const Context& ctx) {
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero:
        case SkipFreeExp::Kind::Act: return e;
        case SkipFreeExp::Kind::Guard:
            return SkipFreeExp::guard_choice(e->guard, prune_expr(e->left, ctx),
                                             prune_expr(e->right, ctx));
        case SkipFreeExp::Kind::Seq:
            if (is_dead_expr(e->right, ctx)) return SkipFreeExp::zero();
            return SkipFreeExp::seq(prune_expr(e->left, ctx), prune_expr(e->right, ctx));
        case SkipFreeExp::Kind::While: {
            SkipFreeExpP guarded_exit =
                SkipFreeExp::guard_choice(e->guard, SkipFreeExp::zero(), e->right);
            if (is_dead_expr(guarded_exit, ctx)) return SkipFreeExp::zero();
            return SkipFreeExp::while_do(prune_expr(e->left, ctx), e->guard,
                                         prune_expr(e->right, ctx));
        }
    }
    return e;
}

namespace {

// Shortest trace from `state` to an accepting output; valid only for states
// that are live in `a`.
GuardedTrace shortest_accepting_path(const SkipFreeAutomaton& a, std::size_t state) {
    std::vector<std::optional<std::tuple<std::size_t, Atom, std::string>>> parent(a.state_count());
    std::deque<std::size_t> work{state};
    std::vector<bool> seen(a.state_count(), false);
    seen[state] = true;
    for (;;) {
        if (work.empty()) throw Error("internal: no accepting path from a live state");
        std::size_t s = work.front();
        work.pop_front();
        for (const auto& f : a.trans[s]) {
            Atom atom = f.atoms.atoms().front();
            if (f.target.is_accept) {
                GuardedTrace t{{atom, f.action}};
                std::size_t cur = s;
                while (parent[cur]) {
                    auto [prev, pa, pp] = *parent[cur];
                    t.insert(t.begin(), TraceStep{pa, pp});
                    cur = prev;
                }
                return t;
            }
            if (!seen[f.target.state]) {
                seen[f.target.state] = true;
                parent[f.target.state] = {{s, atom, f.action}};
                work.push_back(f.target.state);
            }
        }
    }
}

std::size_t replay(const SkipFreeAutomaton& a, const std::vector<TraceStep>& steps) {
    std::size_t s = a.start;
    for (const auto& st : steps) {
        const TransFamily* o = a.outcome(s, st.atom);
        if (!o || o->target.is_accept) throw Error("internal: counterexample does not replay");
        s = o->target.state;
    }
    return s;
}

}  // namespace

EquivVerdict lang_equiv(const SkipFreeExpP& e1, const SkipFreeExpP& e2, const Context& ctx) {
    SkipFreeAutomaton a1 = prune_automaton(derive_skipfree(e1, ctx));
    SkipFreeAutomaton a2 = prune_automaton(derive_skipfree(e2, ctx));
    EquivVerdict v = bisim_skipfree(a1, a1.start, a2, a2.start);
    if (v.equivalent) return v;

    // Rebuild a guarded trace accepted by exactly one side.
    std::size_t x = replay(a1, v.counterexample.steps);
    std::size_t y = replay(a2, v.counterexample.steps);
    Atom atom = v.counterexample.verdict_atom;
    const TransFamily* o1 = a1.outcome(x, atom);
    const TransFamily* o2 = a2.outcome(y, atom);
    const TransFamily* chosen = o1 ? o1 : o2;
    v.accepted_by = o1 ? 1 : 2;
    const SkipFreeAutomaton& side = o1 ? a1 : a2;
    v.accepted_trace = v.counterexample.steps;
    v.accepted_trace.push_back({atom, chosen->action});
    if (!chosen->target.is_accept) {
        GuardedTrace tail = shortest_accepting_path(side, chosen->target.state);
        v.accepted_trace.insert(v.accepted_trace.end(), tail.begin(), tail.end());
    }
    return v;
}

namespace {

void collect_traces(const SkipFreeAutomaton& a, std::size_t state, std::size_t budget,
                    GuardedTrace& prefix, std::set<GuardedTrace>& out) {
    if (budget == 0) return;
    for (const auto& f : a.trans[state]) {
        for (Atom atom : f.atoms.atoms()) {
            prefix.push_back({atom, f.action});
            if (f.target.is_accept) {
                out.insert(prefix);
            } else {
                collect_traces(a, f.target.state, budget - 1, prefix, out);
            }
            prefix.pop_back();
        }
    }
}

}  // namespace

std::set<GuardedTrace> traces_from(const SkipFreeAutomaton& a, std::size_t state,
                                   std::size_t max_len) {
    std::set<GuardedTrace> out;
    GuardedTrace prefix;
    collect_traces(a, state, max_len, prefix, out);
    return out;
}

std::set<GuardedTrace> traces(const SkipFreeExpP& e, const Context& ctx, std::size_t max_len) {
    SkipFreeAutomaton a = derive_skipfree(e, ctx);
    return traces_from(a, a.start, max_len);
}

// ---------------------------------------------------------------------------
// Guarded-string semantics of full GKAT
// ---------------------------------------------------------------------------

namespace {

using GsSet = std::set<GuardedString>;

GsSet atoms_as_strings(const AtomSet& s) {
    GsSet out;
    for (Atom a : s.atoms()) out.insert(GuardedString{{a}, {}});
    return out;
}

// Fuse matching boundary atoms; drop results over the action budget.
GsSet diamond(const GsSet& l, const GsSet& k, std::size_t budget) {
    GsSet out;
    for (const auto& w : l) {
        for (const auto& v : k) {
            if (w.atoms.back() != v.atoms.front()) continue;
            if (w.actions.size() + v.actions.size() > budget) continue;
            GuardedString f = w;
            f.atoms.insert(f.atoms.end(), v.atoms.begin() + 1, v.atoms.end());
            f.actions.insert(f.actions.end(), v.actions.begin(), v.actions.end());
            out.insert(std::move(f));
        }
    }
    return out;
}

GsSet ghat(const GkatExpP& e, const Context& ctx, std::size_t budget) {
    const TestUniverse& u = ctx.universe;
    switch (e->kind) {
        case GkatExp::Kind::Bool: return atoms_as_strings(atoms_of(e->test, u));
        case GkatExp::Kind::Act: {
            GsSet out;
            if (budget == 0) return out;
            for (Atom a : all_atoms(u)) {
                for (Atom b : all_atoms(u)) out.insert(GuardedString{{a, b}, {e->action}});
            }
            return out;
        }
        case GkatExp::Kind::Guard: {
            GsSet l = diamond(atoms_as_strings(atoms_of(e->guard, u)),
                              ghat(e->left, ctx, budget), budget);
            GsSet r = diamond(atoms_as_strings(atoms_of(e->guard, u).complemented()),
                              ghat(e->right, ctx, budget), budget);
            l.insert(r.begin(), r.end());
            return l;
        }
        case GkatExp::Kind::Seq:
            return diamond(ghat(e->left, ctx, budget), ghat(e->right, ctx, budget), budget);
        case GkatExp::Kind::Loop: {
            GsSet body = diamond(atoms_as_strings(atoms_of(e->guard, u)),
                                 ghat(e->left, ctx, budget), budget);
            // Bounded iterate of T = At ∪ body⋄T; monotone, hence terminates.
            GsSet total = atoms_as_strings(AtomSet::all(u));
            for (;;) {
                GsSet next = diamond(body, total, budget);
                std::size_t before = total.size();
                total.insert(next.begin(), next.end());
                if (total.size() == before) break;
            }
            return diamond(total,
                           atoms_as_strings(atoms_of(e->guard, u).complemented()), budget);
        }
    }
    return {};
}

}  // namespace

std::set<GuardedString> guarded_lang_gkat(const GkatExpP& e, const Context& ctx,
                                          std::size_t max_actions) {
    return ghat(e, ctx, max_actions);
}

// ---------------------------------------------------------------------------
// Relational interpretations
// ---------------------------------------------------------------------------

namespace {

std::uint64_t full_mask(std::size_t n) {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

Relation diag(std::uint64_t states, std::size_t n) {
    Relation r(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if ((states >> s) & 1) r[s] = std::uint64_t{1} << s;
    }
    return r;
}

Relation compose(const Relation& a, const Relation& b, std::size_t n) {
    Relation out(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if ((a[s] >> t) & 1) out[s] |= b[t];
        }
    }
    return out;
}

Relation unite(const Relation& a, const Relation& b, std::size_t n) {
    Relation out(n);
    for (std::size_t s = 0; s < n; ++s) out[s] = a[s] | b[s];
    return out;
}

Relation closure(const Relation& a, std::size_t n) {
    Relation out = a;
    for (std::size_t s = 0; s < n; ++s) out[s] |= std::uint64_t{1} << s;
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            if ((out[s] >> t) & 1) out[s] |= out[t];
        }
    }
    return out;
}

std::uint64_t sat_mask(const BExpP& b, const Interpretation& sigma, std::size_t n) {
    switch (b->kind) {
        case BExp::Kind::Zero: return 0;
        case BExp::Kind::One: return full_mask(n);
        case BExp::Kind::Test: {
            auto it = sigma.sat.find(b->test);
            if (it == sigma.sat.end()) throw UniverseError("interpretation misses test " + b->test);
            return it->second & full_mask(n);
        }
        case BExp::Kind::Or: return sat_mask(b->left, sigma, n) | sat_mask(b->right, sigma, n);
        case BExp::Kind::And: return sat_mask(b->left, sigma, n) & sat_mask(b->right, sigma, n);
        case BExp::Kind::Not: return ~sat_mask(b->left, sigma, n) & full_mask(n);
    }
    return 0;
}

}  // namespace

Relation eval_relational(const GkatExpP& e, const Interpretation& sigma, const Context& ctx) {
    std::size_t n = sigma.state_count;
    if (n > 64) throw CapacityError("relational interpretations support at most 64 states");
    switch (e->kind) {
        case GkatExp::Kind::Bool: return diag(sat_mask(e->test, sigma, n), n);
        case GkatExp::Kind::Act: {
            auto it = sigma.eval.find(e->action);
            if (it == sigma.eval.end()) {
                throw UniverseError("interpretation misses action " + e->action);
            }
            Relation r = it->second;
            r.resize(n, 0);
            return r;
        }
        case GkatExp::Kind::Guard: {
            Relation guard = diag(sat_mask(e->guard, sigma, n), n);
            Relation anti = diag(~sat_mask(e->guard, sigma, n) & full_mask(n), n);
            return unite(compose(guard, eval_relational(e->left, sigma, ctx), n),
                         compose(anti, eval_relational(e->right, sigma, ctx), n), n);
        }
        case GkatExp::Kind::Seq:
            return compose(eval_relational(e->left, sigma, ctx),
                           eval_relational(e->right, sigma, ctx), n);
        case GkatExp::Kind::Loop: {
            Relation guard = diag(sat_mask(e->guard, sigma, n), n);
            Relation anti = diag(~sat_mask(e->guard, sigma, n) & full_mask(n), n);
            Relation body = compose(guard, eval_relational(e->left, sigma, ctx), n);
            return compose(closure(body, n), anti, n);
        }
    }
    return Relation(n, 0);
}

}  // namespace gkat
