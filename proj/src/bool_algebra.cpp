#include "gkat/bool_algebra.hpp"

#include <algorithm>
#include <unordered_set>

namespace gkat {

TestUniverse::TestUniverse(std::vector<std::string> tests, std::size_t max_tests)
    : tests_(std::move(tests)) {
    if (tests_.size() > max_tests) {
        throw CapacityError("test universe has " + std::to_string(tests_.size()) +
                            " tests, exceeding the cap of " + std::to_string(max_tests));
    }
    std::unordered_set<std::string> seen;
    for (const auto& t : tests_) {
        if (t.empty()) throw UniverseError("empty test name");
        if (!seen.insert(t).second) throw UniverseError("duplicate test name: " + t);
    }
}

bool TestUniverse::has_test(const std::string& name) const {
    return std::find(tests_.begin(), tests_.end(), name) != tests_.end();
}

std::size_t TestUniverse::index_of(const std::string& name) const {
    auto it = std::find(tests_.begin(), tests_.end(), name);
    if (it == tests_.end()) throw UniverseError("unknown test: " + name);
    return static_cast<std::size_t>(it - tests_.begin());
}

BExpP BExp::zero() { return std::make_shared<BExp>(BExp{Kind::Zero, {}, nullptr, nullptr}); }
BExpP BExp::one() { return std::make_shared<BExp>(BExp{Kind::One, {}, nullptr, nullptr}); }
BExpP BExp::mk_test(std::string name) {
    return std::make_shared<BExp>(BExp{Kind::Test, std::move(name), nullptr, nullptr});
}
BExpP BExp::mk_or(BExpP l, BExpP r) {
    return std::make_shared<BExp>(BExp{Kind::Or, {}, std::move(l), std::move(r)});
}
BExpP BExp::mk_and(BExpP l, BExpP r) {
    return std::make_shared<BExp>(BExp{Kind::And, {}, std::move(l), std::move(r)});
}
BExpP BExp::mk_not(BExpP c) {
    return std::make_shared<BExp>(BExp{Kind::Not, {}, std::move(c), nullptr});
}

bool bexp_equal(const BExpP& a, const BExpP& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case BExp::Kind::Zero:
        case BExp::Kind::One: return true;
        case BExp::Kind::Test: return a->test == b->test;
        case BExp::Kind::Not: return bexp_equal(a->left, b->left);
        case BExp::Kind::Or:
        case BExp::Kind::And:
            return bexp_equal(a->left, b->left) && bexp_equal(a->right, b->right);
    }
    return false;
}

namespace {

// Precedence: ! > & > |
std::string render_bexp_prec(const BExpP& b, int parent_prec) {
    int prec;
    std::string out;
    switch (b->kind) {
        case BExp::Kind::Zero: return "0";
        case BExp::Kind::One: return "1";
        case BExp::Kind::Test: return b->test;
        case BExp::Kind::Not:
            return "!" + render_bexp_prec(b->left, 3);
        case BExp::Kind::And:
            prec = 2;
            out = render_bexp_prec(b->left, prec) + " & " + render_bexp_prec(b->right, prec + 1);
            break;
        case BExp::Kind::Or:
            prec = 1;
            out = render_bexp_prec(b->left, prec) + " | " + render_bexp_prec(b->right, prec + 1);
            break;
        default: return "?";
    }
    if (prec < parent_prec) return "(" + out + ")";
    return out;
}

}  // namespace

std::string render_bexp(const BExpP& b) { return render_bexp_prec(b, 0); }

AtomSet::AtomSet(std::size_t atom_count)
    : atom_count_(atom_count), bits_((atom_count + 63) / 64, 0) {}

AtomSet AtomSet::none(const TestUniverse& u) { return AtomSet(u.atom_count()); }

AtomSet AtomSet::all(const TestUniverse& u) {
    AtomSet s(u.atom_count());
    for (auto& w : s.bits_) w = ~std::uint64_t{0};
    // clear slack bits past atom_count
    std::size_t slack = s.bits_.size() * 64 - s.atom_count_;
    if (slack > 0 && !s.bits_.empty()) s.bits_.back() >>= slack;
    return s;
}

AtomSet AtomSet::single(const TestUniverse& u, Atom a) {
    AtomSet s(u.atom_count());
    s.insert(a);
    return s;
}

bool AtomSet::contains(Atom a) const {
    return (bits_[a / 64] >> (a % 64)) & 1;
}
void AtomSet::insert(Atom a) { bits_[a / 64] |= std::uint64_t{1} << (a % 64); }
void AtomSet::erase(Atom a) { bits_[a / 64] &= ~(std::uint64_t{1} << (a % 64)); }

std::size_t AtomSet::count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

bool AtomSet::empty() const {
    for (auto w : bits_) if (w != 0) return false;
    return true;
}

AtomSet AtomSet::united(const AtomSet& other) const {
    AtomSet s = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] |= other.bits_[i];
    return s;
}

AtomSet AtomSet::intersected(const AtomSet& other) const {
    AtomSet s = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] &= other.bits_[i];
    return s;
}

AtomSet AtomSet::complemented() const {
    AtomSet s = *this;
    for (auto& w : s.bits_) w = ~w;
    std::size_t slack = s.bits_.size() * 64 - s.atom_count_;
    if (slack > 0 && !s.bits_.empty()) {
        s.bits_.back() &= ~std::uint64_t{0} >> slack;
    }
    return s;
}

bool AtomSet::subset_of(const AtomSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] & ~other.bits_[i]) return false;
    }
    return true;
}

std::vector<Atom> AtomSet::atoms() const {
    std::vector<Atom> out;
    for (Atom a = 0; a < atom_count_; ++a) {
        if (contains(a)) out.push_back(a);
    }
    return out;
}

bool AtomSet::operator==(const AtomSet& other) const {
    return atom_count_ == other.atom_count_ && bits_ == other.bits_;
}

std::vector<Atom> all_atoms(const TestUniverse& u) {
    std::vector<Atom> out;
    out.reserve(u.atom_count());
    for (Atom a = 0; a < u.atom_count(); ++a) out.push_back(a);
    return out;
}

bool entails(Atom a, const BExpP& b, const TestUniverse& u) {
    switch (b->kind) {
        case BExp::Kind::Zero: return false;
        case BExp::Kind::One: return true;
        case BExp::Kind::Test: return (a >> u.index_of(b->test)) & 1;
        case BExp::Kind::Or: return entails(a, b->left, u) || entails(a, b->right, u);
        case BExp::Kind::And: return entails(a, b->left, u) && entails(a, b->right, u);
        case BExp::Kind::Not: return !entails(a, b->left, u);
    }
    return false;
}

AtomSet atoms_of(const BExpP& b, const TestUniverse& u) {
    switch (b->kind) {
        case BExp::Kind::Zero: return AtomSet::none(u);
        case BExp::Kind::One: return AtomSet::all(u);
        case BExp::Kind::Or: return atoms_of(b->left, u).united(atoms_of(b->right, u));
        case BExp::Kind::And: return atoms_of(b->left, u).intersected(atoms_of(b->right, u));
        case BExp::Kind::Not: return atoms_of(b->left, u).complemented();
        case BExp::Kind::Test: {
            AtomSet s(u.atom_count());
            std::size_t i = u.index_of(b->test);
            for (Atom a = 0; a < u.atom_count(); ++a) {
                if ((a >> i) & 1) s.insert(a);
            }
            return s;
        }
    }
    return AtomSet::none(u);
}

bool ba_equiv(const BExpP& b, const BExpP& c, const TestUniverse& u) {
    return atoms_of(b, u) == atoms_of(c, u);
}

BExpP bexp_of_atom(Atom a, const TestUniverse& u) {
    if (u.capacity() == 0) return BExp::one();
    BExpP out;
    for (std::size_t i = 0; i < u.capacity(); ++i) {
        BExpP lit = BExp::mk_test(u.tests()[i]);
        if (!((a >> i) & 1)) lit = BExp::mk_not(lit);
        out = out ? BExp::mk_and(out, lit) : lit;
    }
    return out;
}

BExpP bexp_of_atom_set(const AtomSet& s, const TestUniverse& u) {
    if (s.empty()) return BExp::zero();
    if (s == AtomSet::all(u)) return BExp::one();
    BExpP out;
    for (Atom a : s.atoms()) {
        BExpP m = bexp_of_atom(a, u);
        out = out ? BExp::mk_or(out, m) : m;
    }
    return out;
}

}  // namespace gkat
