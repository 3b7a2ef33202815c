#include "blurshift/lexer.hpp"

#include <cctype>

namespace blurshift {

std::vector<Token> tokenize(const std::string& src, int first_line) {
    std::vector<Token> out;
    int line = first_line, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string text, int c) { out.push_back(Token{k, std::move(text), line, c}); };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int start_col = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                size_t k = j + 1;
                while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                push(Token::Kind::Sym, src.substr(i, k - i), start_col);
                col += static_cast<int>(k - i);
                i = k;
            } else {
                push(Token::Kind::Int, src.substr(i, j - i), start_col);
                col += static_cast<int>(j - i);
                i = j;
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            push(Token::Kind::Ident, src.substr(i, j - i), start_col);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        static const char* two[] = {"->", ">=", "<=", "..", "!="};
        bool done = false;
        for (const char* t : two) {
            if (src.compare(i, 2, t) == 0) {
                push(Token::Kind::Punct, t, start_col);
                i += 2;
                col += 2;
                done = true;
                break;
            }
        }
        if (done) continue;
        push(Token::Kind::Punct, std::string(1, ch), start_col);
        ++i;
        ++col;
    }
    out.push_back(Token{Token::Kind::End, "", line, col});
    return out;
}

TokenStream::TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {
    if (toks_.empty() || toks_.back().kind != Token::Kind::End) toks_.push_back(Token{});
}

const Token& TokenStream::peek(size_t ahead) const {
    size_t p = pos_ + ahead;
    return p < toks_.size() ? toks_[p] : toks_.back();
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
}

bool TokenStream::is(const std::string& text, size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind != Token::Kind::End && t.text == text;
}

bool TokenStream::accept(const std::string& text) {
    if (!is(text)) return false;
    next();
    return true;
}

void TokenStream::expect(const std::string& text) {
    if (!accept(text)) fail("expected '" + text + "'");
}

void TokenStream::fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
}

uint64_t TokenStream::expect_uint() {
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    return std::stoull(next().text);
}

int64_t TokenStream::expect_int() {
    bool neg = accept("-");
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    int64_t v = std::stoll(next().text);
    return neg ? -v : v;
}

Symbol TokenStream::expect_symbol() {
    if (peek().kind != Token::Kind::Sym) fail("expected symbol c.i");
    return parse_symbol(next().text);
}

std::string TokenStream::expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    return next().text;
}

void TokenStream::expect_end() {
    if (!at_end()) fail("unexpected trailing input");
}

Affine TokenStream::parse_affine(const std::string& var) {
    Affine f;
    bool seen_var = false, seen_const = false;
    bool first = true;
    while (true) {
        int sign = 1;
        if (accept("-")) sign = -1;
        else if (!first && !accept("+")) break;
        else if (first) accept("+");
        if (peek().kind == Token::Kind::Int && is("*", 1) && is(var, 2)) {
            if (seen_var) fail("repeated variable term");
            f.a = sign * std::stoll(next().text);
            next();
            next();
            seen_var = true;
        } else if (is(var)) {
            if (seen_var) fail("repeated variable term");
            next();
            f.a = sign;
            seen_var = true;
        } else if (peek().kind == Token::Kind::Int) {
            if (seen_const) fail("repeated constant term");
            f.b = sign * std::stoll(next().text);
            seen_const = true;
        } else {
            fail("expected affine expression in " + var);
        }
        first = false;
        if (!is("+") && !is("-")) break;
        // "-" followed by something that is not a term belongs to the caller
        const Token& nt = peek(1);
        if (!(nt.kind == Token::Kind::Int || nt.text == var)) break;
    }
    return f;
}

ColExpr TokenStream::parse_colexpr() {
    ColExpr c;
    if (accept("t")) {
        c.var = true;
        if (is("+") && peek(1).kind == Token::Kind::Int) {
            next();
            c.off = std::stoll(next().text);
        } else if (is("-") && peek(1).kind == Token::Kind::Int) {
            next();
            c.off = -std::stoll(next().text);
        }
        return c;
    }
    c.off = static_cast<int64_t>(expect_uint());
    return c;
}

}  // namespace blurshift
