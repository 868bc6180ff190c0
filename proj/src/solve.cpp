#include "gkat/solve.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "gkat/equivalence.hpp"

namespace gkat {

namespace {

struct Edge {
    std::size_t from, to;
};

std::string state_name(const Lts& l, std::size_t s) {
    return l.labels.size() > s && !l.labels[s].empty() ? l.labels[s]
                                                       : "state " + std::to_string(s);
}

// Adjacency over state-target families, optionally restricted by tag.
enum class EdgeFilter { All, Entry, Body };

std::vector<std::vector<std::size_t>> successors(const LayeredLts& l, EdgeFilter f) {
    std::vector<std::vector<std::size_t>> succ(l.lts.state_count());
    for (std::size_t s = 0; s < l.lts.state_count(); ++s) {
        for (std::size_t i = 0; i < l.lts.trans[s].size(); ++i) {
            const auto& fam = l.lts.trans[s][i];
            if (fam.target.is_accept) continue;
            bool entry = l.entry[s][i];
            if (f == EdgeFilter::Entry && !entry) continue;
            if (f == EdgeFilter::Body && entry) continue;
            succ[s].push_back(fam.target.state);
        }
    }
    for (auto& v : succ) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return succ;
}

// A cycle in the given graph rendered as a path, or empty if acyclic.
std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& succ) {
    std::size_t n = succ.size();
    std::vector<int> color(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::size_t> stack, pos(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> dfs{{root, 0}};
        color[root] = 1;
        stack = {root};
        while (!dfs.empty()) {
            auto& [s, idx] = dfs.back();
            if (idx == succ[s].size()) {
                color[s] = 2;
                stack.pop_back();
                dfs.pop_back();
                continue;
            }
            std::size_t t = succ[s][idx++];
            if (color[t] == 1) {
                auto it = std::find(stack.begin(), stack.end(), t);
                std::vector<std::size_t> cycle(it, stack.end());
                cycle.push_back(t);
                return cycle;
            }
            if (color[t] == 0) {
                color[t] = 1;
                stack.push_back(t);
                dfs.push_back({t, 0});
            }
        }
    }
    return {};
}

std::string render_path(const Lts& l, const std::vector<std::size_t>& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += " -> ";
        out += state_name(l, path[i]);
    }
    return out;
}

// Reachability along all state transitions from each state (not reflexive).
std::vector<std::vector<bool>> plus_reach(const std::vector<std::vector<std::size_t>>& succ) {
    std::size_t n = succ.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::deque<std::size_t> work(succ[s].begin(), succ[s].end());
        for (std::size_t t : succ[s]) reach[s][t] = true;
        while (!work.empty()) {
            std::size_t t = work.front();
            work.pop_front();
            for (std::size_t u : succ[t]) {
                if (!reach[s][u]) {
                    reach[s][u] = true;
                    work.push_back(u);
                }
            }
        }
    }
    return reach;
}

// The loop-containment relation: x contains y when an entry step of x
// followed by body steps, never revisiting x, lands on y.
std::vector<std::vector<std::size_t>> containment(const LayeredLts& l) {
    auto entry = successors(l, EdgeFilter::Entry);
    auto body = successors(l, EdgeFilter::Body);
    std::size_t n = l.lts.state_count();
    std::vector<std::vector<std::size_t>> contains(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::set<std::size_t> seen;
        std::deque<std::size_t> work;
        for (std::size_t y : entry[x]) {
            if (y != x && seen.insert(y).second) work.push_back(y);
        }
        while (!work.empty()) {
            std::size_t y = work.front();
            work.pop_front();
            for (std::size_t z : body[y]) {
                if (z != x && seen.insert(z).second) work.push_back(z);
            }
        }
        contains[x].assign(seen.begin(), seen.end());
    }
    return contains;
}

bool has_accept(const Lts& l, std::size_t s) {
    for (const auto& f : l.trans[s]) {
        if (f.target.is_accept) return true;
    }
    return false;
}

}  // namespace

LayeringReport check_well_layered(const LayeredLts& l) {
    const Lts& lts = l.lts;
    if (l.entry.size() != lts.state_count()) {
        return {false, "labelling shape", "tag vector does not match the state count"};
    }
    for (std::size_t s = 0; s < lts.state_count(); ++s) {
        if (l.entry[s].size() != lts.trans[s].size()) {
            return {false, "labelling shape",
                    "tag vector of " + state_name(lts, s) + " does not match its family count"};
        }
    }

    // Flatness: no state pair connected by both an entry and a body family.
    for (std::size_t s = 0; s < lts.state_count(); ++s) {
        std::set<std::size_t> as_entry, as_body;
        for (std::size_t i = 0; i < lts.trans[s].size(); ++i) {
            if (lts.trans[s][i].target.is_accept) continue;
            (l.entry[s][i] ? as_entry : as_body).insert(lts.trans[s][i].target.state);
        }
        for (std::size_t t : as_entry) {
            if (as_body.count(t)) {
                return {false, "flatness",
                        state_name(lts, s) + " -> " + state_name(lts, t) +
                            " is both entry and body"};
            }
        }
    }

    auto body = successors(l, EdgeFilter::Body);
    if (auto cycle = find_cycle(body); !cycle.empty()) {
        return {false, "full specification (no body cycles)", render_path(lts, cycle)};
    }

    auto all = successors(l, EdgeFilter::All);
    auto reach = plus_reach(all);
    auto entry = successors(l, EdgeFilter::Entry);
    for (std::size_t x = 0; x < lts.state_count(); ++x) {
        for (std::size_t y : entry[x]) {
            if (y != x && !reach[y][x]) {
                return {false, "full specification (loop entry re-entry)",
                        state_name(lts, x) + " -> " + state_name(lts, y) +
                            " never returns to " + state_name(lts, x)};
            }
        }
    }

    auto contains = containment(l);
    if (auto cycle = find_cycle(contains); !cycle.empty()) {
        return {false, "layeredness", "loop containment cycle " + render_path(lts, cycle)};
    }

    for (std::size_t x = 0; x < lts.state_count(); ++x) {
        for (std::size_t y : contains[x]) {
            if (has_accept(lts, y)) {
                return {false, "goto-freeness",
                        state_name(lts, y) + " accepts from inside the loop of " +
                            state_name(lts, x)};
            }
        }
    }
    return {};
}

bool find_layering(const Lts& l, LayeredLts& out, std::size_t max_choice_bits) {
    out.lts = l;
    out.entry.assign(l.state_count(), {});
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        out.entry[s].assign(l.trans[s].size(), false);
    }

    // Families off every cycle must be body; only cycle families are choices.
    std::vector<std::vector<std::size_t>> succ(l.state_count());
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        for (const auto& f : l.trans[s]) {
            if (!f.target.is_accept) succ[s].push_back(f.target.state);
        }
    }
    auto reach = plus_reach(succ);
    std::vector<std::pair<std::size_t, std::size_t>> choices;
    for (std::size_t s = 0; s < l.state_count(); ++s) {
        for (std::size_t i = 0; i < l.trans[s].size(); ++i) {
            const auto& f = l.trans[s][i];
            if (!f.target.is_accept && reach[f.target.state][s]) choices.emplace_back(s, i);
        }
    }

    // Fast path: every cycle transition is a loop entry.
    for (auto [s, i] : choices) out.entry[s][i] = true;
    if (check_well_layered(out).ok) return true;

    if (choices.size() > max_choice_bits) {
        throw CapacityError("layering search over " + std::to_string(choices.size()) +
                            " cycle transitions exceeds the bound of " +
                            std::to_string(max_choice_bits));
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << choices.size()); ++mask) {
        for (std::size_t b = 0; b < choices.size(); ++b) {
            out.entry[choices[b].first][choices[b].second] = (mask >> b) & 1;
        }
        if (check_well_layered(out).ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Canonical solutions
// ---------------------------------------------------------------------------

namespace {

struct Move {
    Atom atom;
    std::string action;
    Target target;
    bool entry = false;

    bool operator<(const Move& o) const {
        return std::tie(atom, action, target.is_accept, target.state) <
               std::tie(o.atom, o.action, o.target.is_accept, o.target.state);
    }
};

StarExpP sum_of(const std::vector<StarExpP>& terms) {
    if (terms.empty()) return StarExp::zero();
    StarExpP s = terms.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;) s = StarExp::plus(terms[i], s);
    return s;
}

class Solver {
public:
    explicit Solver(const LayeredLts& l) : l_(l), moves_(l.lts.state_count()) {
        for (std::size_t s = 0; s < l.lts.state_count(); ++s) {
            for (std::size_t i = 0; i < l.lts.trans[s].size(); ++i) {
                const auto& f = l.lts.trans[s][i];
                bool entry = !f.target.is_accept && l.entry[s][i];
                for (Atom a : f.atoms.atoms()) {
                    moves_[s].push_back({a, f.action, f.target, entry});
                }
            }
            std::sort(moves_[s].begin(), moves_[s].end());
            moves_[s].erase(std::unique(moves_[s].begin(), moves_[s].end(),
                                        [](const Move& a, const Move& b) {
                                            return !(a < b) && !(b < a);
                                        }),
                            moves_[s].end());
        }
    }

    StarExpP phi(std::size_t x) {
        auto it = phi_.find(x);
        if (it != phi_.end()) {
            if (!it->second) {
                throw Error("layering check missed a cycle at " + state_name(l_.lts, x));
            }
            return it->second;
        }
        phi_[x] = nullptr;
        std::vector<StarExpP> self_entry, other_entry, accept, body;
        for (const Move& m : moves_[x]) {
            StarExpP lit = StarExp::lit(m.atom, m.action);
            if (m.target.is_accept) {
                accept.push_back(lit);
            } else if (m.entry) {
                if (m.target.state == x) {
                    self_entry.push_back(lit);
                } else {
                    other_entry.push_back(StarExp::seq(lit, through(m.target.state, x)));
                }
            } else {
                body.push_back(StarExp::seq(lit, phi(m.target.state)));
            }
        }
        StarExpP result = StarExp::star(StarExp::plus(sum_of(self_entry), sum_of(other_entry)),
                                        StarExp::plus(sum_of(accept), sum_of(body)));
        phi_[x] = result;
        return result;
    }

private:
    // The through-expression: runs from y inside the loop of x until a body
    // transition re-enters x.
    StarExpP through(std::size_t y, std::size_t x) {
        auto key = std::make_pair(y, x);
        auto it = t_.find(key);
        if (it != t_.end()) {
            if (!it->second) {
                throw Error("layering check missed a cycle through " + state_name(l_.lts, y));
            }
            return it->second;
        }
        t_[key] = nullptr;
        std::vector<StarExpP> self_entry, other_entry, to_x, onward;
        for (const Move& m : moves_[y]) {
            StarExpP lit = StarExp::lit(m.atom, m.action);
            if (m.target.is_accept) {
                throw Error("layering check missed an accepting inner state " +
                            state_name(l_.lts, y));
            }
            if (m.entry) {
                if (m.target.state == y) {
                    self_entry.push_back(lit);
                } else {
                    other_entry.push_back(StarExp::seq(lit, through(m.target.state, y)));
                }
            } else if (m.target.state == x) {
                to_x.push_back(lit);
            } else {
                onward.push_back(StarExp::seq(lit, through(m.target.state, x)));
            }
        }
        StarExpP result = StarExp::star(StarExp::plus(sum_of(self_entry), sum_of(other_entry)),
                                        StarExp::plus(sum_of(to_x), sum_of(onward)));
        t_[key] = result;
        return result;
    }

    const LayeredLts& l_;
    std::vector<std::vector<Move>> moves_;
    std::map<std::size_t, StarExpP> phi_;
    std::map<std::pair<std::size_t, std::size_t>, StarExpP> t_;
};

}  // namespace

SolutionMap canonical_solution(const LayeredLts& l) {
    LayeringReport rep = check_well_layered(l);
    if (!rep.ok) {
        throw PreconditionError("input is not well-layered: " + rep.condition + " (" +
                                rep.witness + ")");
    }
    Solver solver(l);
    SolutionMap out;
    out.assignment.resize(l.lts.state_count());
    for (std::size_t s = 0; s < l.lts.state_count(); ++s) {
        out.assignment[s] = solver.phi(s);
        Lts derived = derive_star(out.assignment[s], l.lts.ctx);
        if (!bisim_lts(derived, derived.start, l.lts, s).equivalent) {
            throw Error("canonical solution failed verification at " + state_name(l.lts, s));
        }
    }
    return out;
}

StarExpP expand_fundamental(const StarExpP& r, const Context& ctx) {
    Lts l = derive_star(r, ctx);
    std::vector<Move> moves;
    for (const auto& f : l.trans[l.start]) {
        for (Atom a : f.atoms.atoms()) moves.push_back({a, f.action, f.target, false});
    }
    std::sort(moves.begin(), moves.end());
    std::vector<StarExpP> accept, step;
    for (const Move& m : moves) {
        StarExpP lit = StarExp::lit(m.atom, m.action);
        if (m.target.is_accept) {
            accept.push_back(lit);
        } else {
            step.push_back(StarExp::seq(lit, l.exprs[m.target.state]));
        }
    }
    return StarExp::plus(sum_of(accept), sum_of(step));
}

}  // namespace gkat
