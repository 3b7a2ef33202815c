#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blurshift/family.hpp"

namespace blurshift {

class TokenStream;

// "~H", "~H(3)" or, inside rule followers, "~H(t+1)".
struct BlurRef {
    std::string name;
    std::optional<ColExpr> arg;
    auto operator<=>(const BlurRef&) const = default;
    std::string text() const;
};

// Label inside "all minus ...": a blur or a whole column.
struct Label {
    bool is_blur = true;
    BlurRef blur;
    ColExpr col;
    auto operator<=>(const Label&) const = default;
};

struct Term {
    enum class Kind { Finite, Blur, Column, Tail, All };
    Kind kind = Kind::Finite;
    std::vector<Symbol> syms;  // members for Finite, removed symbols otherwise
    BlurRef blur;              // Blur
    ColExpr col;               // Column, Tail
    Affine from;               // Tail: first index, affine in the input index i
    std::vector<Label> labels; // All
    auto operator<=>(const Term&) const = default;
    std::string text() const;
};

// Finite union of terms. A set mentioning t or i is a template; rule followers
// are templates instantiated at the input symbol.
class SymbolSet {
public:
    std::vector<Term> terms;

    static SymbolSet parse(const std::string& text);
    static SymbolSet parse(TokenStream& ts);
    static SymbolSet finite(std::vector<Symbol> syms);
    static SymbolSet column(uint64_t c);
    static SymbolSet all();

    std::string text() const;
    bool is_template() const;
    SymbolSet instantiate(Symbol input) const;
    uint64_t constant_bound() const;
    bool operator==(const SymbolSet&) const = default;
};

// Queries on closed sets, relative to a family (which fixes the alphabet).
bool member(Symbol s, const SymbolSet& e, const BlurFamily& f);
IndexSet slice(const SymbolSet& e, uint64_t col, const BlurFamily& f);
bool is_infinite(const SymbolSet& e, const BlurFamily& f);
bool is_empty(const SymbolSet& e, const BlurFamily& f);
bool blur_intersection_infinite(const SymbolSet& e, BlurId h, const BlurFamily& f);
bool blur_intersection_infinite(const SymbolSet& e, const std::string& label, const BlurFamily& f);

struct Residual {
    bool finite = true;
    std::vector<Symbol> symbols;  // the explicit residual when finite
    std::string witness;          // an uncovered infinite part otherwise
};
Residual coverage_residual(const SymbolSet& e, const std::vector<BlurId>& blurs, const BlurFamily& f);

// The first n members in increasing code order (fewer if finite).
std::vector<Symbol> enumerate(const SymbolSet& e, size_t n, const BlurFamily& f);
// Symbols of e with code < limit, in code order.
std::vector<Symbol> enumerate_below(const SymbolSet& e, uint64_t code_limit, const BlurFamily& f);

// Complement within the alphabet, as another closed SymbolSet.
SymbolSet complement(const SymbolSet& e, const BlurFamily& f);

BlurId resolve_ref(const BlurRef& r, const BlurFamily& f);

// Column-wise evaluation of an arbitrary boolean combination of slices.
using SliceFn = std::function<IndexSet(uint64_t)>;
bool slices_infinite(const Scope& s, const SliceFn& fn);
bool slices_empty(const Scope& s, const SliceFn& fn);
std::vector<Symbol> slices_elements(const Scope& s, const SliceFn& fn);  // finite only
// Describes an infinite part, e.g. "col 2" or "col 0 residue 1 mod 2".
std::string slices_witness(const Scope& s, const SliceFn& fn);

Scope scope_for(const BlurFamily& f, std::initializer_list<const SymbolSet*> sets, std::initializer_list<uint64_t> extra = {});

}  // namespace blurshift
