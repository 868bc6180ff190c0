#include "gkat/translate.hpp"

#include "gkat/equivalence.hpp"

namespace gkat {

StarExpP guard_star(const AtomSet& b, const StarExpP& r) {
    switch (r->kind) {
        case StarExp::Kind::Zero: return r;
        case StarExp::Kind::Lit: return b.contains(r->atom) ? r : StarExp::zero();
        case StarExp::Kind::Plus:
            return StarExp::plus(guard_star(b, r->left), guard_star(b, r->right));
        case StarExp::Kind::Seq: return StarExp::seq(guard_star(b, r->left), r->right);
        case StarExp::Kind::Star:
            return StarExp::plus(StarExp::seq(guard_star(b, r->left), r),
                                 guard_star(b, r->right));
    }
    return r;
}

namespace {

// Right-nested sum over ascending atoms; the atom range is never empty.
StarExpP atom_sum(const std::string& action, const TestUniverse& u) {
    std::vector<Atom> atoms = all_atoms(u);
    StarExpP sum = StarExp::lit(atoms.back(), action);
    for (std::size_t i = atoms.size() - 1; i-- > 0;) {
        sum = StarExp::plus(StarExp::lit(atoms[i], action), sum);
    }
    return sum;
}

}  // namespace

StarExpP gtr(const SkipFreeExpP& e, const Context& ctx) {
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero: return StarExp::zero();
        case SkipFreeExp::Kind::Act: return atom_sum(e->action, ctx.universe);
        case SkipFreeExp::Kind::Guard: {
            AtomSet b = atoms_of(e->guard, ctx.universe);
            return StarExp::plus(guard_star(b, gtr(e->left, ctx)),
                                 guard_star(b.complemented(), gtr(e->right, ctx)));
        }
        case SkipFreeExp::Kind::Seq:
            return StarExp::seq(gtr(e->left, ctx), gtr(e->right, ctx));
        case SkipFreeExp::Kind::While: {
            AtomSet b = atoms_of(e->guard, ctx.universe);
            return StarExp::star(guard_star(b, gtr(e->left, ctx)),
                                 guard_star(b.complemented(), gtr(e->right, ctx)));
        }
    }
    return StarExp::zero();
}

AtomSet initial_atoms(const StarExpP& r, const Context& ctx) {
    switch (r->kind) {
        case StarExp::Kind::Zero: return AtomSet::none(ctx.universe);
        case StarExp::Kind::Lit: return AtomSet::single(ctx.universe, r->atom);
        case StarExp::Kind::Plus:
        case StarExp::Kind::Star:
            return initial_atoms(r->left, ctx).united(initial_atoms(r->right, ctx));
        case StarExp::Kind::Seq: return initial_atoms(r->left, ctx);
    }
    return AtomSet::none(ctx.universe);
}

namespace {

bool guard_preserves(const AtomSet& b, const StarExpP& r, const Context& ctx) {
    Lts guarded = derive_star(guard_star(b, r), ctx);
    Lts plain = derive_star(r, ctx);
    return bisim_lts(guarded, guarded.start, plain, plain.start).equivalent;
}

}  // namespace

std::optional<SeparationWitness> separation(const StarExpP& r1, const StarExpP& r2,
                                            const Context& ctx) {
    AtomSet i1 = initial_atoms(r1, ctx);
    AtomSet i2 = initial_atoms(r2, ctx);
    if (!i1.intersected(i2).empty()) return std::nullopt;
    SeparationWitness w{i2.complemented(), true};
    if (!guard_preserves(w.test, r1, ctx)) return std::nullopt;
    if (!guard_preserves(w.test.complemented(), r2, ctx)) return std::nullopt;
    return w;
}

bool is_deterministic_star(const StarExpP& r, const Context& ctx) {
    switch (r->kind) {
        case StarExp::Kind::Zero:
        case StarExp::Kind::Lit: return true;
        case StarExp::Kind::Seq:
            return is_deterministic_star(r->left, ctx) && is_deterministic_star(r->right, ctx);
        case StarExp::Kind::Plus:
        case StarExp::Kind::Star:
            return is_deterministic_star(r->left, ctx) &&
                   is_deterministic_star(r->right, ctx) &&
                   separation(r->left, r->right, ctx).has_value();
    }
    return false;
}

SkipFreeExpP rtg(const StarExpP& r, const Context& ctx) {
    switch (r->kind) {
        case StarExp::Kind::Zero: return SkipFreeExp::zero();
        case StarExp::Kind::Lit:
            return SkipFreeExp::guard_choice(bexp_of_atom(r->atom, ctx.universe),
                                             SkipFreeExp::act(r->action), SkipFreeExp::zero());
        case StarExp::Kind::Seq:
            return SkipFreeExp::seq(rtg(r->left, ctx), rtg(r->right, ctx));
        case StarExp::Kind::Plus:
        case StarExp::Kind::Star: {
            auto w = separation(r->left, r->right, ctx);
            if (!w) {
                throw PreconditionError("back translation needs separated operands in " +
                                        render_star(r));
            }
            BExpP b = bexp_of_atom_set(w->test, ctx.universe);
            if (r->kind == StarExp::Kind::Plus) {
                return SkipFreeExp::guard_choice(b, rtg(r->left, ctx), rtg(r->right, ctx));
            }
            return SkipFreeExp::while_do(rtg(r->left, ctx), b, rtg(r->right, ctx));
        }
    }
    return SkipFreeExp::zero();
}

}  // namespace gkat
