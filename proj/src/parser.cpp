#include <cctype>
#include <optional>

#include "gkat/syntax.hpp"

namespace gkat {

namespace {

struct Token {
    enum class Kind {
        Ident, Zero, One,
        LParen, RParen, LBracket, RBracket, LBrace, RBrace,
        Dot, Plus, Star, Caret, Bang, Amp, Pipe, Comma,
        End
    };
    Kind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

    Token expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k) fail("expected " + what);
        return next();
    }

    bool accept(Token::Kind k) {
        if (tok_.kind != k) return false;
        advance();
        return true;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            tok_.kind = Token::Kind::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        ++pos_;
        ++col_;
        switch (c) {
            case '0': tok_.kind = Token::Kind::Zero; break;
            case '1': tok_.kind = Token::Kind::One; break;
            case '(': tok_.kind = Token::Kind::LParen; break;
            case ')': tok_.kind = Token::Kind::RParen; break;
            case '[': tok_.kind = Token::Kind::LBracket; break;
            case ']': tok_.kind = Token::Kind::RBracket; break;
            case '{': tok_.kind = Token::Kind::LBrace; break;
            case '}': tok_.kind = Token::Kind::RBrace; break;
            case '.': tok_.kind = Token::Kind::Dot; break;
            case '+': tok_.kind = Token::Kind::Plus; break;
            case '*': tok_.kind = Token::Kind::Star; break;
            case '^': tok_.kind = Token::Kind::Caret; break;
            case '!': tok_.kind = Token::Kind::Bang; break;
            case '&': tok_.kind = Token::Kind::Amp; break;
            case '|': tok_.kind = Token::Kind::Pipe; break;
            case ',': tok_.kind = Token::Kind::Comma; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", tok_.line,
                                 tok_.col);
        }
        tok_.text = std::string(1, c);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

// --- Boolean expressions: precedence ! > & > | -----------------------------

BExpP bexp_or(Lexer& lx, const Context& ctx);

BExpP bexp_primary(Lexer& lx, const Context& ctx) {
    const Token& t = lx.peek();
    switch (t.kind) {
        case Token::Kind::Zero: lx.next(); return BExp::zero();
        case Token::Kind::One: lx.next(); return BExp::one();
        case Token::Kind::Ident: {
            Token id = lx.next();
            if (!ctx.universe.has_test(id.text)) {
                throw ParseError("unknown test '" + id.text + "'", id.line, id.col);
            }
            return BExp::mk_test(id.text);
        }
        case Token::Kind::LParen: {
            lx.next();
            BExpP b = bexp_or(lx, ctx);
            lx.expect(Token::Kind::RParen, "')'");
            return b;
        }
        default: lx.fail("expected Boolean expression");
    }
}

BExpP bexp_not(Lexer& lx, const Context& ctx) {
    if (lx.accept(Token::Kind::Bang)) return BExp::mk_not(bexp_not(lx, ctx));
    return bexp_primary(lx, ctx);
}

BExpP bexp_and(Lexer& lx, const Context& ctx) {
    BExpP b = bexp_not(lx, ctx);
    while (lx.accept(Token::Kind::Amp)) b = BExp::mk_and(b, bexp_not(lx, ctx));
    return b;
}

BExpP bexp_or(Lexer& lx, const Context& ctx) {
    BExpP b = bexp_and(lx, ctx);
    while (lx.accept(Token::Kind::Pipe)) b = BExp::mk_or(b, bexp_and(lx, ctx));
    return b;
}

BExpP bracketed_bexp(Lexer& lx, const Context& ctx) {
    lx.expect(Token::Kind::LBracket, "'['");
    BExpP b = bexp_or(lx, ctx);
    lx.expect(Token::Kind::RBracket, "']'");
    return b;
}

// --- Skip-free expressions: . > *[b] > +[b], left-associative --------------

SkipFreeExpP sf_guard(Lexer& lx, const Context& ctx);

SkipFreeExpP sf_primary(Lexer& lx, const Context& ctx) {
    const Token& t = lx.peek();
    switch (t.kind) {
        case Token::Kind::Zero: lx.next(); return SkipFreeExp::zero();
        case Token::Kind::Ident: {
            Token id = lx.next();
            if (!ctx.has_action(id.text)) {
                throw ParseError("unknown action '" + id.text + "'", id.line, id.col);
            }
            return SkipFreeExp::act(id.text);
        }
        case Token::Kind::LBracket: {
            // [b] e is shorthand for e +[b] 0
            BExpP b = bracketed_bexp(lx, ctx);
            SkipFreeExpP e = sf_primary(lx, ctx);
            return SkipFreeExp::guard_choice(b, e, SkipFreeExp::zero());
        }
        case Token::Kind::LParen: {
            lx.next();
            SkipFreeExpP e = sf_guard(lx, ctx);
            lx.expect(Token::Kind::RParen, "')'");
            return e;
        }
        default: lx.fail("expected expression");
    }
}

SkipFreeExpP sf_seq(Lexer& lx, const Context& ctx) {
    SkipFreeExpP e = sf_primary(lx, ctx);
    while (lx.accept(Token::Kind::Dot)) e = SkipFreeExp::seq(e, sf_primary(lx, ctx));
    return e;
}

SkipFreeExpP sf_while(Lexer& lx, const Context& ctx) {
    SkipFreeExpP e = sf_seq(lx, ctx);
    while (lx.accept(Token::Kind::Star)) {
        BExpP b = bracketed_bexp(lx, ctx);
        e = SkipFreeExp::while_do(e, b, sf_seq(lx, ctx));
    }
    return e;
}

SkipFreeExpP sf_guard(Lexer& lx, const Context& ctx) {
    SkipFreeExpP e = sf_while(lx, ctx);
    while (lx.accept(Token::Kind::Plus)) {
        BExpP b = bracketed_bexp(lx, ctx);
        e = SkipFreeExp::guard_choice(b, e, sf_while(lx, ctx));
    }
    return e;
}

// --- Star expressions: * > juxtaposition > +, left-associative -------------

StarExpP st_plus(Lexer& lx, const Context& ctx);

Atom atom_from_ident(const Token& id, const Context& ctx) {
    if (id.text.size() < 2 || id.text[0] != 'a') {
        throw ParseError("expected atom 'a<index>' or '{tests}'", id.line, id.col);
    }
    std::size_t value = 0;
    for (std::size_t i = 1; i < id.text.size(); ++i) {
        char c = id.text[i];
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError("expected atom 'a<index>' or '{tests}'", id.line, id.col);
        }
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (value >= ctx.universe.atom_count()) {
        throw ParseError("atom index " + std::to_string(value) + " out of range (universe has " +
                             std::to_string(ctx.universe.atom_count()) + " atoms)",
                         id.line, id.col);
    }
    return static_cast<Atom>(value);
}

StarExpP st_literal(Lexer& lx, const Context& ctx, Atom atom) {
    lx.expect(Token::Kind::Dot, "'.'");
    Token act = lx.expect(Token::Kind::Ident, "action name");
    if (!ctx.has_action(act.text)) {
        throw ParseError("unknown action '" + act.text + "'", act.line, act.col);
    }
    return StarExp::lit(atom, act.text);
}

StarExpP st_primary(Lexer& lx, const Context& ctx) {
    const Token& t = lx.peek();
    switch (t.kind) {
        case Token::Kind::Zero: lx.next(); return StarExp::zero();
        case Token::Kind::Ident: {
            Token id = lx.next();
            return st_literal(lx, ctx, atom_from_ident(id, ctx));
        }
        case Token::Kind::LBrace: {
            // {t,s}.p names the atom making exactly the listed tests true
            lx.next();
            Atom atom = 0;
            bool first = true;
            while (!lx.accept(Token::Kind::RBrace)) {
                if (!first) lx.expect(Token::Kind::Comma, "','");
                first = false;
                Token id = lx.expect(Token::Kind::Ident, "test name");
                if (!ctx.universe.has_test(id.text)) {
                    throw ParseError("unknown test '" + id.text + "'", id.line, id.col);
                }
                atom |= Atom{1} << ctx.universe.index_of(id.text);
            }
            return st_literal(lx, ctx, atom);
        }
        case Token::Kind::LParen: {
            lx.next();
            StarExpP r = st_plus(lx, ctx);
            lx.expect(Token::Kind::RParen, "')'");
            return r;
        }
        default: lx.fail("expected star expression");
    }
}

StarExpP st_star(Lexer& lx, const Context& ctx) {
    StarExpP r = st_primary(lx, ctx);
    while (lx.accept(Token::Kind::Star)) r = StarExp::star(r, st_primary(lx, ctx));
    return r;
}

bool starts_star_primary(const Token& t) {
    switch (t.kind) {
        case Token::Kind::Zero:
        case Token::Kind::Ident:
        case Token::Kind::LBrace:
        case Token::Kind::LParen: return true;
        default: return false;
    }
}

StarExpP st_seq(Lexer& lx, const Context& ctx) {
    StarExpP r = st_star(lx, ctx);
    while (starts_star_primary(lx.peek())) r = StarExp::seq(r, st_star(lx, ctx));
    return r;
}

StarExpP st_plus(Lexer& lx, const Context& ctx) {
    StarExpP r = st_seq(lx, ctx);
    while (lx.accept(Token::Kind::Plus)) r = StarExp::plus(r, st_seq(lx, ctx));
    return r;
}

// --- Full GKAT expressions: ^[b] > . > +[b] --------------------------------

GkatExpP gk_guard(Lexer& lx, const Context& ctx);

GkatExpP gk_primary(Lexer& lx, const Context& ctx) {
    const Token& t = lx.peek();
    switch (t.kind) {
        case Token::Kind::Zero: lx.next(); return GkatExp::zero();
        case Token::Kind::One: lx.next(); return GkatExp::one();
        case Token::Kind::Ident: {
            Token id = lx.next();
            if (ctx.has_action(id.text)) return GkatExp::act(id.text);
            if (ctx.universe.has_test(id.text)) return GkatExp::boolean(BExp::mk_test(id.text));
            throw ParseError("unknown symbol '" + id.text + "'", id.line, id.col);
        }
        case Token::Kind::LBracket: return GkatExp::boolean(bracketed_bexp(lx, ctx));
        case Token::Kind::LParen: {
            lx.next();
            GkatExpP e = gk_guard(lx, ctx);
            lx.expect(Token::Kind::RParen, "')'");
            return e;
        }
        default: lx.fail("expected expression");
    }
}

GkatExpP gk_postfix(Lexer& lx, const Context& ctx) {
    GkatExpP e = gk_primary(lx, ctx);
    while (lx.accept(Token::Kind::Caret)) e = GkatExp::loop(e, bracketed_bexp(lx, ctx));
    return e;
}

GkatExpP gk_seq(Lexer& lx, const Context& ctx) {
    GkatExpP e = gk_postfix(lx, ctx);
    while (lx.accept(Token::Kind::Dot)) e = GkatExp::seq(e, gk_postfix(lx, ctx));
    return e;
}

GkatExpP gk_guard(Lexer& lx, const Context& ctx) {
    GkatExpP e = gk_seq(lx, ctx);
    while (lx.accept(Token::Kind::Plus)) {
        BExpP b = bracketed_bexp(lx, ctx);
        e = GkatExp::guard_choice(b, e, gk_seq(lx, ctx));
    }
    return e;
}

void expect_end(Lexer& lx) {
    if (lx.peek().kind != Token::Kind::End) lx.fail("unexpected trailing input");
}

}  // namespace

BExpP parse_bexp(const std::string& text, const Context& ctx) {
    Lexer lx(text);
    BExpP b = bexp_or(lx, ctx);
    expect_end(lx);
    return b;
}

SkipFreeExpP parse_skipfree(const std::string& text, const Context& ctx) {
    Lexer lx(text);
    SkipFreeExpP e = sf_guard(lx, ctx);
    expect_end(lx);
    return e;
}

StarExpP parse_star(const std::string& text, const Context& ctx) {
    Lexer lx(text);
    StarExpP r = st_plus(lx, ctx);
    expect_end(lx);
    return r;
}

GkatExpP parse_gkat(const std::string& text, const Context& ctx) {
    Lexer lx(text);
    GkatExpP e = gk_guard(lx, ctx);
    expect_end(lx);
    return e;
}

namespace {

// Parses `keyword: name, name, ...;` starting at pos; returns the names.
std::vector<std::string> parse_decl(const std::string& text, std::size_t& pos,
                                    const std::string& keyword, int line) {
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (text.compare(pos, keyword.size(), keyword) != 0) {
        throw ParseError("expected '" + keyword + ":' declaration", line, 1);
    }
    pos += keyword.size();
    skip_ws();
    if (pos >= text.size() || text[pos] != ':') {
        throw ParseError("expected ':' after '" + keyword + "'", line, 1);
    }
    ++pos;
    std::vector<std::string> names;
    for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ';') {
            ++pos;
            break;
        }
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        if (pos == start) throw ParseError("expected name in '" + keyword + ":' list", line, 1);
        names.push_back(text.substr(start, pos - start));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') ++pos;
    }
    return names;
}

}  // namespace

ParsedFile parse_file_header(const std::string& text, std::size_t max_tests) {
    std::size_t pos = 0;
    std::vector<std::string> tests = parse_decl(text, pos, "tests", 1);
    std::vector<std::string> actions = parse_decl(text, pos, "actions", 2);
    ParsedFile out;
    out.ctx.universe = TestUniverse(std::move(tests), max_tests);
    out.ctx.actions = std::move(actions);
    out.body = text.substr(pos);
    return out;
}

}  // namespace gkat
