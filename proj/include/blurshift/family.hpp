#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/index_set.hpp"
#include "blurshift/symbol.hpp"

namespace blurshift {

class TokenStream;

// Columns available in the alphabet: [0, columns) or every column.
struct Alphabet {
    std::optional<uint64_t> columns;
    bool has(uint64_t c) const { return !columns || c < *columns; }
    bool finite() const { return columns.has_value(); }
    std::string text() const;
};

enum class BlurKind { ColumnCofinite, Residue, Diagonal };

struct BlurPresentation {
    std::string label;
    BlurKind kind = BlurKind::ColumnCofinite;
    uint64_t column = 0;
    uint64_t modulus = 1, remainder = 0;
    uint64_t slope = 0;  // diagonal: {(k, slope*k + offset) : k >= start}
    int64_t offset = 0;
    uint64_t start = 0;
    std::vector<Symbol> removed, added;
};

// Indices lo(t)..hi(t) of column col(t), for the member with parameter t.
struct PatchRange {
    ColExpr col;
    Affine lo, hi;
    auto operator<=>(const PatchRange&) const = default;
};

// H(t) := column t, minus/plus patches, for every t >= t0.
struct ParametricFamily {
    std::string label;
    uint64_t t0 = 0;
    std::vector<PatchRange> removed, added;
};

// A concrete blur: a named one, or the member H(t) of the parametric family.
struct BlurId {
    int32_t named = -1;
    uint64_t t = 0;
    bool param() const { return named < 0; }
    auto operator<=>(const BlurId&) const = default;
};

struct Issue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
    bool ok() const { return errors.empty(); }
};

class BlurFamily {
public:
    Alphabet alphabet;
    std::vector<BlurPresentation> named;
    std::optional<ParametricFamily> param;

    IndexSet slice(BlurId h, uint64_t col) const;
    bool contains(BlurId h, Symbol s) const;
    std::string label(BlurId h) const;  // "H1", "H(5)"
    BlurId resolve(const std::string& label) const;
    std::optional<BlurId> try_resolve(const std::string& label) const;
    bool diagonal(BlurId h) const;
    // The base column of a column-based blur.
    std::optional<uint64_t> base_column(BlurId h) const;
    std::vector<Symbol> explicit_points(BlurId h) const;  // added patches
    // All named blurs, in declaration order.
    std::vector<BlurId> named_ids() const;

    // Blurcodes interleave named blurs (0, j) and parametric members (1, t - t0)
    // by Cantor pairing.
    uint64_t blurcode(BlurId h) const;
    std::optional<BlurId> from_blurcode(uint64_t c) const;

    // Largest constant that can influence column-dependent behaviour.
    uint64_t constant_bound() const;

    std::vector<Symbol> intersection(BlurId a, BlurId b) const;  // only for finite intersections

    std::string definition_text(size_t named_index) const;
    std::string param_text() const;
};

// Shared by presentation files: parse the right-hand side of "blur X = ..." or
// "blurfam X(t>=t0) = ...".
BlurPresentation parse_blur_definition(const std::string& label, TokenStream& ts);
ParametricFamily parse_blurfam_definition(const std::string& label, uint64_t t0, TokenStream& ts);

ValidationReport validate_family(const BlurFamily& f);

// Columns a query must inspect one by one; rep (if set) stands for every
// column >= *rep, all of which behave alike once past every constant.
struct Scope {
    std::vector<uint64_t> cols;
    std::optional<uint64_t> rep;
};
Scope make_scope(const Alphabet& a, uint64_t bound);

}  // namespace blurshift
