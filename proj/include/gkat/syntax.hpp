#ifndef GKAT_SYNTAX_HPP
#define GKAT_SYNTAX_HPP

#include <memory>
#include <string>
#include <vector>

#include "gkat/bool_algebra.hpp"

namespace gkat {

/// Declared test universe plus action alphabet; travels with every
/// expression file as its header.
struct Context {
    TestUniverse universe;
    std::vector<std::string> actions;

    bool has_action(const std::string& name) const;
    std::size_t action_index(const std::string& name) const;

    bool operator==(const Context& other) const {
        return universe == other.universe && actions == other.actions;
    }
};

// ---------------------------------------------------------------------------
// Skip-free GKAT expressions:  0 | p | e1 +_b e2 | e1 . e2 | e1 *[b] e2
// ---------------------------------------------------------------------------

struct SkipFreeExp;
using SkipFreeExpP = std::shared_ptr<const SkipFreeExp>;

struct SkipFreeExp {
    enum class Kind { Zero, Act, Guard, Seq, While };
    Kind kind;
    std::string action;  // Act
    BExpP guard;         // Guard, While
    SkipFreeExpP left, right;

    static SkipFreeExpP zero();
    static SkipFreeExpP act(std::string action);
    /// e1 +_b e2
    static SkipFreeExpP guard_choice(BExpP b, SkipFreeExpP l, SkipFreeExpP r);
    static SkipFreeExpP seq(SkipFreeExpP l, SkipFreeExpP r);
    /// e1 ^{(b)} e2, the binary loop
    static SkipFreeExpP while_do(SkipFreeExpP body, BExpP b, SkipFreeExpP exit);
};

bool skipfree_equal(const SkipFreeExpP& a, const SkipFreeExpP& b);
std::string render_skipfree(const SkipFreeExpP& e);
std::size_t skipfree_size(const SkipFreeExpP& e);

// ---------------------------------------------------------------------------
// One-free star expressions:  0 | ap | r1 + r2 | r1 r2 | r1 * r2
// ---------------------------------------------------------------------------

struct StarExp;
using StarExpP = std::shared_ptr<const StarExp>;

struct StarExp {
    enum class Kind { Zero, Lit, Plus, Seq, Star };
    Kind kind;
    Atom atom = 0;       // Lit
    std::string action;  // Lit
    StarExpP left, right;

    static StarExpP zero();
    static StarExpP lit(Atom a, std::string action);
    static StarExpP plus(StarExpP l, StarExpP r);
    static StarExpP seq(StarExpP l, StarExpP r);
    static StarExpP star(StarExpP l, StarExpP r);
};

bool star_equal(const StarExpP& a, const StarExpP& b);
std::string render_star(const StarExpP& r);
std::size_t star_size(const StarExpP& r);

// ---------------------------------------------------------------------------
// Full GKAT expressions:  b | p | e1 +_b e2 | e1 . e2 | e ^[b]
// ---------------------------------------------------------------------------

struct GkatExp;
using GkatExpP = std::shared_ptr<const GkatExp>;

struct GkatExp {
    enum class Kind { Bool, Act, Guard, Seq, Loop };
    Kind kind;
    BExpP test;          // Bool
    std::string action;  // Act
    BExpP guard;         // Guard, Loop
    GkatExpP left, right;

    static GkatExpP boolean(BExpP b);
    static GkatExpP act(std::string action);
    static GkatExpP guard_choice(BExpP b, GkatExpP l, GkatExpP r);
    static GkatExpP seq(GkatExpP l, GkatExpP r);
    /// e ^{(b)}, the unary loop
    static GkatExpP loop(GkatExpP body, BExpP b);

    static GkatExpP one() { return boolean(BExp::one()); }
    static GkatExpP zero() { return boolean(BExp::zero()); }
};

bool gkat_equal(const GkatExpP& a, const GkatExpP& b);
std::string render_gkat(const GkatExpP& e);

/// The structure-preserving injection of skip-free GKAT into full GKAT;
/// the binary loop e1^{(b)} e2 becomes e1^{(b)} . e2.
GkatExpP embed_syntax(const SkipFreeExpP& e);

// ---------------------------------------------------------------------------
// Parsing. The concrete grammars are documented in the README; every parser
// validates symbols against the given context.
// ---------------------------------------------------------------------------

BExpP parse_bexp(const std::string& text, const Context& ctx);
SkipFreeExpP parse_skipfree(const std::string& text, const Context& ctx);
StarExpP parse_star(const std::string& text, const Context& ctx);
GkatExpP parse_gkat(const std::string& text, const Context& ctx);

/// Parses a full expression file: header lines `tests: t,s;` and
/// `actions: p,q;` followed by one expression.
struct ParsedFile {
    Context ctx;
    std::string body;
};
ParsedFile parse_file_header(const std::string& text,
                             std::size_t max_tests = kDefaultMaxTests);

}  // namespace gkat

#endif
