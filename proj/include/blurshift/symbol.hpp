#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blurshift {

// Every failure carries a stable short code ("InfiniteOverlap", "SinkRule", ...)
// so the CLI and tests can match on it without parsing prose.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_, col_;
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error("CapExceeded", msg) {}
};

struct Symbol {
    uint64_t col = 0;
    uint64_t idx = 0;
    auto operator<=>(const Symbol&) const = default;
};

using Word = std::vector<Symbol>;

// Cantor pairing; the single total order used for enumeration and prefix weights.
uint64_t cantor_pair(uint64_t x, uint64_t y);
void cantor_unpair(uint64_t z, uint64_t& x, uint64_t& y);
inline uint64_t code(Symbol s) { return cantor_pair(s.col, s.idx); }
Symbol symbol_from_code(uint64_t c);

std::string to_string(Symbol s);
std::string to_string(const Word& w);
Symbol parse_symbol(const std::string& text);

bool code_less(Symbol a, Symbol b);

// a*x + b, used for index thresholds (x = input index) and for parametric
// patches (x = family parameter).
struct Affine {
    int64_t a = 0;
    int64_t b = 0;
    int64_t at(int64_t x) const { return a * x + b; }
    bool constant() const { return a == 0; }
    auto operator<=>(const Affine&) const = default;
};

std::string affine_text(const Affine& f, const std::string& var);

// Column reference: a constant, or the bound variable t plus an offset.
struct ColExpr {
    bool var = false;
    int64_t off = 0;
    auto operator<=>(const ColExpr&) const = default;
    // Negative results mean "no such column".
    int64_t at(int64_t t) const { return var ? t + off : off; }
};

std::string colexpr_text(const ColExpr& c);

uint64_t gcd_u(uint64_t a, uint64_t b);
uint64_t lcm_u(uint64_t a, uint64_t b);

}  // namespace blurshift
