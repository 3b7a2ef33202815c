#pragma once

#include <string>
#include <vector>

#include "blurshift/symbol.hpp"

namespace blurshift {

struct Token {
    enum class Kind { Int, Sym, Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

// Shared tokenizer for every text format. "2.7" is a symbol, "2" an integer,
// "0..5" is Int Punct(..) Int. '#' starts a comment to end of line.
std::vector<Token> tokenize(const std::string& src, int first_line = 1);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks);
    explicit TokenStream(const std::string& src, int first_line = 1) : TokenStream(tokenize(src, first_line)) {}

    const Token& peek(size_t ahead = 0) const;
    Token next();
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool is(const std::string& text, size_t ahead = 0) const;
    bool accept(const std::string& text);
    void expect(const std::string& text);
    uint64_t expect_uint();
    int64_t expect_int();  // optional leading '-'
    Symbol expect_symbol();
    std::string expect_ident();
    void expect_end();
    [[noreturn]] void fail(const std::string& msg) const;

    // a*var+b with integer coefficients; var may be omitted (constant).
    Affine parse_affine(const std::string& var);
    ColExpr parse_colexpr();

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace blurshift
