#ifndef GKAT_GENERATE_HPP
#define GKAT_GENERATE_HPP

#include <random>

#include "gkat/equivalence.hpp"
#include "gkat/syntax.hpp"

namespace gkat {

using Rng = std::mt19937_64;

/// Depth-bounded random terms. Identical seeds yield identical terms for a
/// given build; leaves become more likely as the depth budget shrinks.
BExpP random_bexp(Rng& rng, const Context& ctx, std::size_t depth);
SkipFreeExpP random_skipfree(Rng& rng, const Context& ctx, std::size_t depth);
StarExpP random_star(Rng& rng, const Context& ctx, std::size_t depth);
GkatExpP random_gkat(Rng& rng, const Context& ctx, std::size_t depth);

/// Random relational interpretation over `states` states (at most 64).
Interpretation random_interpretation(Rng& rng, const Context& ctx, std::size_t states);

/// A default context for randomized testing: `tests` tests named t0.. and
/// `actions` actions named p0.. .
Context small_context(std::size_t tests, std::size_t actions);

}  // namespace gkat

#endif
