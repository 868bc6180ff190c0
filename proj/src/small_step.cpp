#include "gkat/small_step.hpp"

#include <deque>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace gkat {

const TransFamily* SkipFreeAutomaton::outcome(std::size_t state, Atom a) const {
    for (const auto& f : trans[state]) {
        if (f.atoms.contains(a)) return &f;
    }
    return nullptr;
}

const GkatTransFamily* GkatAutomaton::outcome(std::size_t state, Atom a) const {
    for (const auto& f : trans[state]) {
        if (f.atoms.contains(a)) return &f;
    }
    return nullptr;
}

namespace {

void check_state_bound(std::size_t n, std::size_t bound) {
    if (n > bound) {
        throw CapacityError("state exploration exceeded the bound of " + std::to_string(bound) +
                            " states");
    }
}

// One-step outcome of a skip-free expression at a fixed atom.
struct SfStep {
    bool reject = true;
    std::string action;
    bool accept = false;  // accept with `action`
    SkipFreeExpP next;    // move to `next` with `action`
};

SfStep sf_step(const SkipFreeExpP& e, Atom a, const TestUniverse& u) {
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero: return {};
        case SkipFreeExp::Kind::Act: {
            SfStep s;
            s.reject = false;
            s.action = e->action;
            s.accept = true;
            return s;
        }
        case SkipFreeExp::Kind::Guard:
            return entails(a, e->guard, u) ? sf_step(e->left, a, u) : sf_step(e->right, a, u);
        case SkipFreeExp::Kind::Seq: {
            SfStep s = sf_step(e->left, a, u);
            if (s.reject) return s;
            s.next = s.accept ? e->right : SkipFreeExp::seq(s.next, e->right);
            s.accept = false;
            return s;
        }
        case SkipFreeExp::Kind::While: {
            if (!entails(a, e->guard, u)) return sf_step(e->right, a, u);
            SfStep s = sf_step(e->left, a, u);
            if (s.reject) return s;
            s.next = s.accept ? e : SkipFreeExp::seq(s.next, e);
            s.accept = false;
            return s;
        }
    }
    return {};
}

// Appends atom `a` to the family with the given action/target, creating the
// family if needed; scanning atoms in ascending order keeps the result
// deterministic and the family atom sets disjoint.
void add_to_family(std::vector<TransFamily>& families, const TestUniverse& u, Atom a,
                   const std::string& action, Target target) {
    for (auto& f : families) {
        if (f.action == action && f.target == target) {
            f.atoms.insert(a);
            return;
        }
    }
    TransFamily f;
    f.atoms = AtomSet(u.atom_count());
    f.atoms.insert(a);
    f.action = action;
    f.target = target;
    families.push_back(std::move(f));
}

}  // namespace

SkipFreeAutomaton derive_skipfree(const SkipFreeExpP& e, const Context& ctx,
                                  std::size_t state_bound) {
    SkipFreeAutomaton a;
    a.ctx = ctx;
    std::unordered_map<std::string, std::size_t> index;
    std::deque<std::size_t> work;

    auto intern = [&](const SkipFreeExpP& s) {
        std::string key = render_skipfree(s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = a.labels.size();
        index.emplace(std::move(key), id);
        a.labels.push_back(render_skipfree(s));
        a.exprs.push_back(s);
        a.trans.emplace_back();
        work.push_back(id);
        check_state_bound(a.labels.size(), state_bound);
        return id;
    };

    a.start = intern(e);
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        SkipFreeExpP cur = a.exprs[id];
        for (Atom atom : all_atoms(ctx.universe)) {
            SfStep s = sf_step(cur, atom, ctx.universe);
            if (s.reject) continue;
            Target t = s.accept ? Target::accept() : Target::to(intern(s.next));
            add_to_family(a.trans[id], ctx.universe, atom, s.action, t);
        }
    }
    return a;
}

namespace {

// Initial transitions of a star expression: (atom, action, nullptr-for-accept).
struct StTrans {
    Atom atom;
    std::string action;
    StarExpP next;  // null means accept
};

void st_initial(const StarExpP& r, std::vector<StTrans>& out) {
    switch (r->kind) {
        case StarExp::Kind::Zero: return;
        case StarExp::Kind::Lit:
            out.push_back({r->atom, r->action, nullptr});
            return;
        case StarExp::Kind::Plus:
            st_initial(r->left, out);
            st_initial(r->right, out);
            return;
        case StarExp::Kind::Seq: {
            std::vector<StTrans> ls;
            st_initial(r->left, ls);
            for (auto& t : ls) {
                out.push_back({t.atom, t.action,
                               t.next ? StarExp::seq(t.next, r->right) : r->right});
            }
            return;
        }
        case StarExp::Kind::Star: {
            std::vector<StTrans> ls;
            st_initial(r->left, ls);
            for (auto& t : ls) {
                out.push_back({t.atom, t.action, t.next ? StarExp::seq(t.next, r) : r});
            }
            st_initial(r->right, out);
            return;
        }
    }
}

}  // namespace

Lts derive_star(const StarExpP& r, const Context& ctx, std::size_t state_bound) {
    Lts l;
    l.ctx = ctx;
    std::unordered_map<std::string, std::size_t> index;
    std::deque<std::size_t> work;

    auto intern = [&](const StarExpP& s) {
        std::string key = render_star(s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = l.labels.size();
        index.emplace(std::move(key), id);
        l.labels.push_back(render_star(s));
        l.exprs.push_back(s);
        l.trans.emplace_back();
        work.push_back(id);
        check_state_bound(l.labels.size(), state_bound);
        return id;
    };

    l.start = intern(r);
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        std::vector<StTrans> init;
        st_initial(l.exprs[id], init);
        for (const auto& t : init) {
            Target tgt = t.next ? Target::to(intern(t.next)) : Target::accept();
            add_to_family(l.trans[id], ctx.universe, t.atom, t.action, tgt);
        }
    }
    return l;
}

namespace {

// One-step outcome of a full GKAT expression at a fixed atom.
struct GkStep {
    enum class Kind { Reject, Accept, Output } kind = Kind::Reject;
    std::string action;
    GkatExpP next;
};

// Sequencing that drops a leading 1 and nothing more.
GkatExpP seq_smart(const GkatExpP& l, const GkatExpP& r) {
    if (l->kind == GkatExp::Kind::Bool && l->test->kind == BExp::Kind::One) return r;
    return GkatExp::seq(l, r);
}

GkStep gk_step(const GkatExpP& e, Atom a, const TestUniverse& u) {
    switch (e->kind) {
        case GkatExp::Kind::Bool:
            return {entails(a, e->test, u) ? GkStep::Kind::Accept : GkStep::Kind::Reject, {}, nullptr};
        case GkatExp::Kind::Act:
            return {GkStep::Kind::Output, e->action, GkatExp::one()};
        case GkatExp::Kind::Guard:
            return entails(a, e->guard, u) ? gk_step(e->left, a, u) : gk_step(e->right, a, u);
        case GkatExp::Kind::Seq: {
            GkStep s = gk_step(e->left, a, u);
            switch (s.kind) {
                case GkStep::Kind::Reject: return s;
                case GkStep::Kind::Accept: return gk_step(e->right, a, u);
                case GkStep::Kind::Output:
                    s.next = seq_smart(s.next, e->right);
                    return s;
            }
            return s;
        }
        case GkatExp::Kind::Loop: {
            if (!entails(a, e->guard, u)) return {GkStep::Kind::Accept, {}, nullptr};
            GkStep s = gk_step(e->left, a, u);
            if (s.kind != GkStep::Kind::Output) return {};
            s.next = seq_smart(s.next, e);
            return s;
        }
    }
    return {};
}

void add_to_gkat_family(std::vector<GkatTransFamily>& families, const TestUniverse& u, Atom a,
                        const std::string& action, std::size_t state) {
    for (auto& f : families) {
        if (f.action == action && f.state == state) {
            f.atoms.insert(a);
            return;
        }
    }
    GkatTransFamily f;
    f.atoms = AtomSet(u.atom_count());
    f.atoms.insert(a);
    f.action = action;
    f.state = state;
    families.push_back(std::move(f));
}

}  // namespace

GkatAutomaton derive_gkat(const GkatExpP& e, const Context& ctx, std::size_t state_bound) {
    GkatAutomaton g;
    g.ctx = ctx;
    std::unordered_map<std::string, std::size_t> index;
    std::deque<std::size_t> work;

    auto intern = [&](const GkatExpP& s) {
        std::string key = render_gkat(s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = g.labels.size();
        index.emplace(std::move(key), id);
        g.labels.push_back(render_gkat(s));
        g.exprs.push_back(s);
        g.accepts.push_back(AtomSet(ctx.universe.atom_count()));
        g.trans.emplace_back();
        work.push_back(id);
        check_state_bound(g.labels.size(), state_bound);
        return id;
    };

    g.start = intern(e);
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        GkatExpP cur = g.exprs[id];
        for (Atom atom : all_atoms(ctx.universe)) {
            GkStep s = gk_step(cur, atom, ctx.universe);
            switch (s.kind) {
                case GkStep::Kind::Reject: break;
                case GkStep::Kind::Accept: g.accepts[id].insert(atom); break;
                case GkStep::Kind::Output:
                    add_to_gkat_family(g.trans[id], ctx.universe, atom, s.action, intern(s.next));
                    break;
            }
        }
    }
    return g;
}

Lts grph_star(const SkipFreeAutomaton& a) {
    Lts l;
    l.ctx = a.ctx;
    l.start = a.start;
    l.labels = a.labels;
    l.exprs.assign(a.state_count(), nullptr);
    l.trans = a.trans;
    return l;
}

SkipFreeAutomaton func_star(const Lts& l) {
    SkipFreeAutomaton a;
    a.ctx = l.ctx;
    a.start = l.start;
    a.labels = l.labels;
    a.exprs.assign(l.state_count(), nullptr);
    a.trans.resize(l.state_count());
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        for (const auto& f : l.trans[s]) {
            for (Atom atom : f.atoms.atoms()) {
                for (const auto& g : a.trans[s]) {
                    if (g.atoms.contains(atom) && !(g.action == f.action && g.target == f.target)) {
                        auto describe = [&](const TransFamily& fam) {
                            return fam.action + " -> " +
                                   (fam.target.is_accept ? std::string("accept")
                                                         : l.labels[fam.target.state]);
                        };
                        throw NondeterminismError(
                            "state '" + l.labels[s] + "' is not graph-like at atom a" +
                            std::to_string(atom) + ": " + describe(g) + " vs " + describe(f));
                    }
                }
                add_to_family(a.trans[s], l.ctx.universe, atom, f.action, f.target);
            }
        }
    }
    return a;
}

GkatAutomaton embed_automaton(const SkipFreeAutomaton& a) {
    GkatAutomaton g;
    g.ctx = a.ctx;
    g.start = a.start;
    g.labels = a.labels;
    std::size_t top = a.state_count();
    g.labels.push_back("top");
    g.exprs.assign(top + 1, nullptr);
    g.accepts.assign(top + 1, AtomSet(a.ctx.universe.atom_count()));
    g.accepts[top] = AtomSet::all(a.ctx.universe);
    g.trans.resize(top + 1);
    for (std::size_t s = 0; s < a.state_count(); ++s) {
        for (const auto& f : a.trans[s]) {
            GkatTransFamily nf;
            nf.atoms = f.atoms;
            nf.action = f.action;
            nf.state = f.target.is_accept ? top : f.target.state;
            g.trans[s].push_back(std::move(nf));
        }
    }
    return g;
}

namespace {

nlohmann::json states_json(const std::vector<std::string>& labels) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        arr.push_back({{"id", i}, {"label", labels[i]}});
    }
    return arr;
}

nlohmann::json atoms_json(const AtomSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (Atom a : s.atoms()) arr.push_back(a);
    return arr;
}

nlohmann::json family_json(std::size_t from, const TransFamily& f) {
    nlohmann::json t = {{"from", from}, {"atoms", atoms_json(f.atoms)}, {"action", f.action}};
    if (f.target.is_accept) {
        t["to"] = "accept";
    } else {
        t["to"] = f.target.state;
    }
    return t;
}

}  // namespace

nlohmann::json skipfree_to_json(const SkipFreeAutomaton& a) {
    nlohmann::json j;
    j["states"] = states_json(a.labels);
    j["start"] = a.start;
    nlohmann::json trans = nlohmann::json::array();
    for (std::size_t s = 0; s < a.state_count(); ++s) {
        for (const auto& f : a.trans[s]) trans.push_back(family_json(s, f));
    }
    j["transitions"] = std::move(trans);
    return j;
}

nlohmann::json lts_to_json(const Lts& l) {
    nlohmann::json j;
    j["states"] = states_json(l.labels);
    j["start"] = l.start;
    nlohmann::json trans = nlohmann::json::array();
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        for (const auto& f : l.trans[s]) trans.push_back(family_json(s, f));
    }
    j["transitions"] = std::move(trans);
    return j;
}

nlohmann::json gkat_to_json(const GkatAutomaton& g) {
    nlohmann::json j;
    j["states"] = states_json(g.labels);
    j["start"] = g.start;
    nlohmann::json trans = nlohmann::json::array();
    for (std::size_t s = 0; s < g.state_count(); ++s) {
        if (!g.accepts[s].empty()) {
            trans.push_back({{"from", s}, {"atoms", atoms_json(g.accepts[s])}, {"to", "accept"}});
        }
        for (const auto& f : g.trans[s]) {
            trans.push_back(
                {{"from", s}, {"atoms", atoms_json(f.atoms)}, {"action", f.action}, {"to", f.state}});
        }
    }
    j["transitions"] = std::move(trans);
    return j;
}

Lts lts_from_json(const nlohmann::json& j, const Context& ctx,
                  std::vector<std::vector<bool>>* entry_tags) {
    Lts l;
    l.ctx = ctx;
    if (!j.contains("states") || !j.contains("transitions")) {
        throw Error("LTS JSON needs 'states' and 'transitions'");
    }
    std::size_t n = j["states"].size();
    l.labels.resize(n);
    for (const auto& s : j["states"]) {
        std::size_t id = s.at("id").get<std::size_t>();
        if (id >= n) throw Error("state id " + std::to_string(id) + " out of range");
        l.labels[id] = s.value("label", "s" + std::to_string(id));
    }
    l.exprs.assign(n, nullptr);
    l.trans.resize(n);
    if (entry_tags) entry_tags->assign(n, {});
    l.start = j.value("start", std::size_t{0});
    if (n > 0 && l.start >= n) throw Error("start state out of range");
    for (const auto& t : j["transitions"]) {
        std::size_t from = t.at("from").get<std::size_t>();
        if (from >= n) throw Error("transition 'from' out of range");
        TransFamily f;
        f.atoms = AtomSet(ctx.universe.atom_count());
        for (const auto& a : t.at("atoms")) {
            std::size_t atom = a.get<std::size_t>();
            if (atom >= ctx.universe.atom_count()) {
                throw Error("atom " + std::to_string(atom) + " out of range");
            }
            f.atoms.insert(static_cast<Atom>(atom));
        }
        f.action = t.at("action").get<std::string>();
        if (!ctx.has_action(f.action)) throw UniverseError("unknown action: " + f.action);
        if (t.at("to").is_string()) {
            if (t.at("to").get<std::string>() != "accept") throw Error("'to' must be a state id or \"accept\"");
            f.target = Target::accept();
        } else {
            std::size_t to = t.at("to").get<std::size_t>();
            if (to >= n) throw Error("transition 'to' out of range");
            f.target = Target::to(to);
        }
        bool entry = t.value("tag", "body") == std::string("entry");
        l.trans[from].push_back(std::move(f));
        if (entry_tags) (*entry_tags)[from].push_back(entry);
    }
    return l;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string guard_label(const AtomSet& atoms, const TestUniverse& u) {
    return render_bexp(bexp_of_atom_set(atoms, u));
}

void dot_states(std::string& out, const std::vector<std::string>& labels, std::size_t start) {
    out += "  accept [shape=doublecircle,label=\"ok\"];\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += "  s" + std::to_string(i) + " [label=\"" + dot_escape(labels[i]) + "\"";
        if (i == start) out += ",penwidth=2";
        out += "];\n";
    }
}

}  // namespace

std::string lts_to_dot(const Lts& l) {
    std::string out = "digraph lts {\n";
    dot_states(out, l.labels, l.start);
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        for (const auto& f : l.trans[s]) {
            out += "  s" + std::to_string(s) + " -> " +
                   (f.target.is_accept ? std::string("accept")
                                       : "s" + std::to_string(f.target.state)) +
                   " [label=\"" + dot_escape(guard_label(f.atoms, l.ctx.universe)) + " | " +
                   dot_escape(f.action) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

std::string skipfree_to_dot(const SkipFreeAutomaton& a) { return lts_to_dot(grph_star(a)); }

std::string gkat_to_dot(const GkatAutomaton& g) {
    std::string out = "digraph gkat {\n";
    dot_states(out, g.labels, g.start);
    for (std::size_t s = 0; s < g.state_count(); ++s) {
        if (!g.accepts[s].empty()) {
            out += "  s" + std::to_string(s) + " -> accept [label=\"" +
                   dot_escape(guard_label(g.accepts[s], g.ctx.universe)) + "\"];\n";
        }
        for (const auto& f : g.trans[s]) {
            out += "  s" + std::to_string(s) + " -> s" + std::to_string(f.state) + " [label=\"" +
                   dot_escape(guard_label(f.atoms, g.ctx.universe)) + " | " +
                   dot_escape(f.action) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace gkat
