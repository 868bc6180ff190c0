#include "gkat/syntax.hpp"

#include <algorithm>

namespace gkat {

bool Context::has_action(const std::string& name) const {
    return std::find(actions.begin(), actions.end(), name) != actions.end();
}

std::size_t Context::action_index(const std::string& name) const {
    auto it = std::find(actions.begin(), actions.end(), name);
    if (it == actions.end()) throw UniverseError("unknown action: " + name);
    return static_cast<std::size_t>(it - actions.begin());
}

// ---------------------------------------------------------------------------
// Skip-free expressions
// ---------------------------------------------------------------------------

SkipFreeExpP SkipFreeExp::zero() {
    return std::make_shared<SkipFreeExp>(SkipFreeExp{Kind::Zero, {}, nullptr, nullptr, nullptr});
}
SkipFreeExpP SkipFreeExp::act(std::string action) {
    return std::make_shared<SkipFreeExp>(
        SkipFreeExp{Kind::Act, std::move(action), nullptr, nullptr, nullptr});
}
SkipFreeExpP SkipFreeExp::guard_choice(BExpP b, SkipFreeExpP l, SkipFreeExpP r) {
    return std::make_shared<SkipFreeExp>(
        SkipFreeExp{Kind::Guard, {}, std::move(b), std::move(l), std::move(r)});
}
SkipFreeExpP SkipFreeExp::seq(SkipFreeExpP l, SkipFreeExpP r) {
    return std::make_shared<SkipFreeExp>(
        SkipFreeExp{Kind::Seq, {}, nullptr, std::move(l), std::move(r)});
}
SkipFreeExpP SkipFreeExp::while_do(SkipFreeExpP body, BExpP b, SkipFreeExpP exit) {
    return std::make_shared<SkipFreeExp>(
        SkipFreeExp{Kind::While, {}, std::move(b), std::move(body), std::move(exit)});
}

bool skipfree_equal(const SkipFreeExpP& a, const SkipFreeExpP& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SkipFreeExp::Kind::Zero: return true;
        case SkipFreeExp::Kind::Act: return a->action == b->action;
        case SkipFreeExp::Kind::Seq:
            return skipfree_equal(a->left, b->left) && skipfree_equal(a->right, b->right);
        case SkipFreeExp::Kind::Guard:
        case SkipFreeExp::Kind::While:
            return bexp_equal(a->guard, b->guard) && skipfree_equal(a->left, b->left) &&
                   skipfree_equal(a->right, b->right);
    }
    return false;
}

namespace {

// Precedence: . (3) > *[b] (2) > +[b] (1); all left-associative.
std::string render_skipfree_prec(const SkipFreeExpP& e, int parent) {
    int prec;
    std::string out;
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero: return "0";
        case SkipFreeExp::Kind::Act: return e->action;
        case SkipFreeExp::Kind::Seq:
            prec = 3;
            out = render_skipfree_prec(e->left, prec) + " . " +
                  render_skipfree_prec(e->right, prec + 1);
            break;
        case SkipFreeExp::Kind::While:
            prec = 2;
            out = render_skipfree_prec(e->left, prec) + " *[" + render_bexp(e->guard) + "] " +
                  render_skipfree_prec(e->right, prec + 1);
            break;
        case SkipFreeExp::Kind::Guard:
            prec = 1;
            out = render_skipfree_prec(e->left, prec) + " +[" + render_bexp(e->guard) + "] " +
                  render_skipfree_prec(e->right, prec + 1);
            break;
        default: return "?";
    }
    if (prec < parent) return "(" + out + ")";
    return out;
}

}  // namespace

std::string render_skipfree(const SkipFreeExpP& e) { return render_skipfree_prec(e, 0); }

std::size_t skipfree_size(const SkipFreeExpP& e) {
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero:
        case SkipFreeExp::Kind::Act: return 1;
        default: return 1 + skipfree_size(e->left) + skipfree_size(e->right);
    }
}

// ---------------------------------------------------------------------------
// One-free star expressions
// ---------------------------------------------------------------------------

StarExpP StarExp::zero() {
    return std::make_shared<StarExp>(StarExp{Kind::Zero, 0, {}, nullptr, nullptr});
}
StarExpP StarExp::lit(Atom a, std::string action) {
    return std::make_shared<StarExp>(StarExp{Kind::Lit, a, std::move(action), nullptr, nullptr});
}
StarExpP StarExp::plus(StarExpP l, StarExpP r) {
    return std::make_shared<StarExp>(StarExp{Kind::Plus, 0, {}, std::move(l), std::move(r)});
}
StarExpP StarExp::seq(StarExpP l, StarExpP r) {
    return std::make_shared<StarExp>(StarExp{Kind::Seq, 0, {}, std::move(l), std::move(r)});
}
StarExpP StarExp::star(StarExpP l, StarExpP r) {
    return std::make_shared<StarExp>(StarExp{Kind::Star, 0, {}, std::move(l), std::move(r)});
}

bool star_equal(const StarExpP& a, const StarExpP& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case StarExp::Kind::Zero: return true;
        case StarExp::Kind::Lit: return a->atom == b->atom && a->action == b->action;
        default: return star_equal(a->left, b->left) && star_equal(a->right, b->right);
    }
}

namespace {

// Precedence: * (3) > juxtaposition (2) > + (1); all left-associative.
std::string render_star_prec(const StarExpP& r, int parent) {
    int prec;
    std::string out;
    switch (r->kind) {
        case StarExp::Kind::Zero: return "0";
        case StarExp::Kind::Lit:
            return "a" + std::to_string(r->atom) + "." + r->action;
        case StarExp::Kind::Star:
            prec = 3;
            out = render_star_prec(r->left, prec) + " * " + render_star_prec(r->right, prec + 1);
            break;
        case StarExp::Kind::Seq:
            prec = 2;
            out = render_star_prec(r->left, prec) + " " + render_star_prec(r->right, prec + 1);
            break;
        case StarExp::Kind::Plus:
            prec = 1;
            out = render_star_prec(r->left, prec) + " + " + render_star_prec(r->right, prec + 1);
            break;
        default: return "?";
    }
    if (prec < parent) return "(" + out + ")";
    return out;
}

}  // namespace

std::string render_star(const StarExpP& r) { return render_star_prec(r, 0); }

std::size_t star_size(const StarExpP& r) {
    switch (r->kind) {
        case StarExp::Kind::Zero:
        case StarExp::Kind::Lit: return 1;
        default: return 1 + star_size(r->left) + star_size(r->right);
    }
}

// ---------------------------------------------------------------------------
// Full GKAT expressions
// ---------------------------------------------------------------------------

GkatExpP GkatExp::boolean(BExpP b) {
    return std::make_shared<GkatExp>(
        GkatExp{Kind::Bool, std::move(b), {}, nullptr, nullptr, nullptr});
}
GkatExpP GkatExp::act(std::string action) {
    return std::make_shared<GkatExp>(
        GkatExp{Kind::Act, nullptr, std::move(action), nullptr, nullptr, nullptr});
}
GkatExpP GkatExp::guard_choice(BExpP b, GkatExpP l, GkatExpP r) {
    return std::make_shared<GkatExp>(
        GkatExp{Kind::Guard, nullptr, {}, std::move(b), std::move(l), std::move(r)});
}
GkatExpP GkatExp::seq(GkatExpP l, GkatExpP r) {
    return std::make_shared<GkatExp>(
        GkatExp{Kind::Seq, nullptr, {}, nullptr, std::move(l), std::move(r)});
}
GkatExpP GkatExp::loop(GkatExpP body, BExpP b) {
    return std::make_shared<GkatExp>(
        GkatExp{Kind::Loop, nullptr, {}, std::move(b), std::move(body), nullptr});
}

bool gkat_equal(const GkatExpP& a, const GkatExpP& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case GkatExp::Kind::Bool: return bexp_equal(a->test, b->test);
        case GkatExp::Kind::Act: return a->action == b->action;
        case GkatExp::Kind::Seq:
            return gkat_equal(a->left, b->left) && gkat_equal(a->right, b->right);
        case GkatExp::Kind::Guard:
            return bexp_equal(a->guard, b->guard) && gkat_equal(a->left, b->left) &&
                   gkat_equal(a->right, b->right);
        case GkatExp::Kind::Loop:
            return bexp_equal(a->guard, b->guard) && gkat_equal(a->left, b->left);
    }
    return false;
}

namespace {

// Precedence: ^[b] (3) > . (2) > +[b] (1).
std::string render_gkat_prec(const GkatExpP& e, int parent) {
    int prec;
    std::string out;
    switch (e->kind) {
        case GkatExp::Kind::Bool:
            switch (e->test->kind) {
                case BExp::Kind::Zero: return "0";
                case BExp::Kind::One: return "1";
                case BExp::Kind::Test: return e->test->test;
                default: return "[" + render_bexp(e->test) + "]";
            }
        case GkatExp::Kind::Act: return e->action;
        case GkatExp::Kind::Loop:
            prec = 3;
            out = render_gkat_prec(e->left, prec + 1) + " ^[" + render_bexp(e->guard) + "]";
            break;
        case GkatExp::Kind::Seq:
            prec = 2;
            out = render_gkat_prec(e->left, prec) + " . " + render_gkat_prec(e->right, prec + 1);
            break;
        case GkatExp::Kind::Guard:
            prec = 1;
            out = render_gkat_prec(e->left, prec) + " +[" + render_bexp(e->guard) + "] " +
                  render_gkat_prec(e->right, prec + 1);
            break;
        default: return "?";
    }
    if (prec < parent) return "(" + out + ")";
    return out;
}

}  // namespace

std::string render_gkat(const GkatExpP& e) { return render_gkat_prec(e, 0); }

GkatExpP embed_syntax(const SkipFreeExpP& e) {
    switch (e->kind) {
        case SkipFreeExp::Kind::Zero: return GkatExp::zero();
        case SkipFreeExp::Kind::Act: return GkatExp::act(e->action);
        case SkipFreeExp::Kind::Guard:
            return GkatExp::guard_choice(e->guard, embed_syntax(e->left), embed_syntax(e->right));
        case SkipFreeExp::Kind::Seq:
            return GkatExp::seq(embed_syntax(e->left), embed_syntax(e->right));
        case SkipFreeExp::Kind::While:
            return GkatExp::seq(GkatExp::loop(embed_syntax(e->left), e->guard),
                                embed_syntax(e->right));
    }
    return nullptr;
}

}  // namespace gkat
