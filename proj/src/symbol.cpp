#include "blurshift/symbol.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace blurshift {

uint64_t cantor_pair(uint64_t x, uint64_t y) {
    unsigned __int128 d = static_cast<unsigned __int128>(x) + y;
    unsigned __int128 v = d * (d + 1) / 2 + y;
    if (v > std::numeric_limits<uint64_t>::max())
        throw Error("Overflow", "symbol code does not fit in 64 bits");
    return static_cast<uint64_t>(v);
}

void cantor_unpair(uint64_t z, uint64_t& x, uint64_t& y) {
    uint64_t d = static_cast<uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    // correct floating error in both directions
    auto tri = [](uint64_t n) { return static_cast<unsigned __int128>(n) * (n + 1) / 2; };
    while (tri(d) > z) --d;
    while (tri(d + 1) <= z) ++d;
    y = z - static_cast<uint64_t>(tri(d));
    x = d - y;
}

Symbol symbol_from_code(uint64_t c) {
    Symbol s;
    cantor_unpair(c, s.col, s.idx);
    return s;
}

bool code_less(Symbol a, Symbol b) { return code(a) < code(b); }

std::string to_string(Symbol s) { return std::to_string(s.col) + "." + std::to_string(s.idx); }

std::string to_string(const Word& w) {
    std::string out;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) out += ' ';
        out += to_string(w[k]);
    }
    return out;
}

Symbol parse_symbol(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == text.size())
        throw Error("ParseError", "bad symbol '" + text + "'");
    for (size_t k = 0; k < text.size(); ++k)
        if (k != dot && !std::isdigit(static_cast<unsigned char>(text[k])))
            throw Error("ParseError", "bad symbol '" + text + "'");
    return Symbol{std::stoull(text.substr(0, dot)), std::stoull(text.substr(dot + 1))};
}

std::string affine_text(const Affine& f, const std::string& var) {
    if (f.a == 0) return std::to_string(f.b);
    std::string out = f.a == 1 ? var : std::to_string(f.a) + "*" + var;
    if (f.b > 0) out += "+" + std::to_string(f.b);
    if (f.b < 0) out += "-" + std::to_string(-f.b);
    return out;
}

std::string colexpr_text(const ColExpr& c) {
    if (!c.var) return std::to_string(c.off);
    if (c.off == 0) return "t";
    return c.off > 0 ? "t+" + std::to_string(c.off) : "t-" + std::to_string(-c.off);
}

uint64_t gcd_u(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

uint64_t lcm_u(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u(a, b) * b;
}

}  // namespace blurshift
