#include "gkat/generate.hpp"

namespace gkat {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

const std::string& pick_action(Rng& rng, const Context& ctx) {
    return ctx.actions[pick(rng, ctx.actions.size())];
}

}  // namespace

BExpP random_bexp(Rng& rng, const Context& ctx, std::size_t depth) {
    std::size_t leaf_kinds = 2 + (ctx.universe.capacity() > 0 ? 1 : 0);
    std::size_t kinds = depth == 0 ? leaf_kinds : leaf_kinds + 3;
    std::size_t c = pick(rng, kinds);
    if (c == 0) return BExp::zero();
    if (c == 1) return BExp::one();
    if (ctx.universe.capacity() > 0 && c == 2) {
        return BExp::mk_test(ctx.universe.tests()[pick(rng, ctx.universe.capacity())]);
    }
    switch (c - leaf_kinds) {
        case 0:
            return BExp::mk_or(random_bexp(rng, ctx, depth - 1),
                               random_bexp(rng, ctx, depth - 1));
        case 1:
            return BExp::mk_and(random_bexp(rng, ctx, depth - 1),
                                random_bexp(rng, ctx, depth - 1));
        default: return BExp::mk_not(random_bexp(rng, ctx, depth - 1));
    }
}

SkipFreeExpP random_skipfree(Rng& rng, const Context& ctx, std::size_t depth) {
    std::size_t kinds = depth == 0 ? 2 : 5;
    switch (pick(rng, kinds)) {
        case 0: return SkipFreeExp::zero();
        case 1: return SkipFreeExp::act(pick_action(rng, ctx));
        case 2:
            return SkipFreeExp::guard_choice(random_bexp(rng, ctx, 2),
                                             random_skipfree(rng, ctx, depth - 1),
                                             random_skipfree(rng, ctx, depth - 1));
        case 3:
            return SkipFreeExp::seq(random_skipfree(rng, ctx, depth - 1),
                                    random_skipfree(rng, ctx, depth - 1));
        default:
            return SkipFreeExp::while_do(random_skipfree(rng, ctx, depth - 1),
                                         random_bexp(rng, ctx, 2),
                                         random_skipfree(rng, ctx, depth - 1));
    }
}

StarExpP random_star(Rng& rng, const Context& ctx, std::size_t depth) {
    std::size_t kinds = depth == 0 ? 2 : 5;
    switch (pick(rng, kinds)) {
        case 0: return StarExp::zero();
        case 1:
            return StarExp::lit(static_cast<Atom>(pick(rng, ctx.universe.atom_count())),
                                pick_action(rng, ctx));
        case 2:
            return StarExp::plus(random_star(rng, ctx, depth - 1),
                                 random_star(rng, ctx, depth - 1));
        case 3:
            return StarExp::seq(random_star(rng, ctx, depth - 1),
                                random_star(rng, ctx, depth - 1));
        default:
            return StarExp::star(random_star(rng, ctx, depth - 1),
                                 random_star(rng, ctx, depth - 1));
    }
}

GkatExpP random_gkat(Rng& rng, const Context& ctx, std::size_t depth) {
    std::size_t kinds = depth == 0 ? 2 : 5;
    switch (pick(rng, kinds)) {
        case 0: return GkatExp::boolean(random_bexp(rng, ctx, 2));
        case 1: return GkatExp::act(pick_action(rng, ctx));
        case 2:
            return GkatExp::guard_choice(random_bexp(rng, ctx, 2),
                                         random_gkat(rng, ctx, depth - 1),
                                         random_gkat(rng, ctx, depth - 1));
        case 3:
            return GkatExp::seq(random_gkat(rng, ctx, depth - 1),
                                random_gkat(rng, ctx, depth - 1));
        default: return GkatExp::loop(random_gkat(rng, ctx, depth - 1), random_bexp(rng, ctx, 2));
    }
}

Interpretation random_interpretation(Rng& rng, const Context& ctx, std::size_t states) {
    if (states == 0 || states > 64) throw CapacityError("interpretations take 1..64 states");
    Interpretation sigma;
    sigma.state_count = states;
    std::uint64_t mask = states == 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << states) - 1;
    for (const auto& t : ctx.universe.tests()) sigma.sat[t] = rng() & mask;
    for (const auto& p : ctx.actions) {
        Relation r(states);
        for (auto& row : r) row = rng() & mask;
        sigma.eval[p] = r;
    }
    return sigma;
}

Context small_context(std::size_t tests, std::size_t actions) {
    std::vector<std::string> ts, as;
    for (std::size_t i = 0; i < tests; ++i) ts.push_back("t" + std::to_string(i));
    for (std::size_t i = 0; i < actions; ++i) as.push_back("p" + std::to_string(i));
    return Context{TestUniverse(std::move(ts)), std::move(as)};
}

}  // namespace gkat
