#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/point.hpp"
#include "blurshift/presentation.hpp"

namespace blurshift {

// Blurs allowed at a coordinate: any, only the listed ones, or all but them.
struct BlurSet {
    enum class Kind { Any, Only, Except };
    Kind kind = Kind::Any;
    std::vector<BlurId> ids;  // sorted
    bool contains(BlurId h) const;
    bool empty() const { return kind == Kind::Only && ids.empty(); }
    BlurSet complement() const;
    bool operator==(const BlurSet&) const = default;
};

// One coordinate constraint. Positions are relative to the coordinate being
// computed unless `absolute` is set (then the map does not commute with the
// shift; only used as a negative control).
struct Atom {
    size_t pos = 0;
    bool absolute = false;
    bool is_blur = false;
    SymbolSet syms;  // symbol atoms
    BlurSet blurs;   // blur atoms
    bool operator==(const Atom&) const = default;
};

using Clause = std::vector<Atom>;  // conjunction; empty means every point

// Finite union of clauses. Every clause fixes finitely many coordinates, so
// each member is decided by a finite window.
struct FiniteSet {
    std::vector<Clause> clauses;

    static FiniteSet everything() { return FiniteSet{{Clause{}}}; }
    static FiniteSet nothing() { return FiniteSet{}; }
    size_t max_position() const;  // largest constrained position, 0 when none
    bool has_absolute() const;
};

bool atom_holds(const Atom& a, const Glyph& g, const BlurFamily& f);
// Membership of sigma^shift(x) (absolute atoms read x itself).
bool fds_member(const FiniteSet& s, const Point& x, const BlurFamily& f, size_t shift = 0);
FiniteSet fds_complement(const FiniteSet& s, const BlurFamily& f);
FiniteSet fds_union(const FiniteSet& a, const FiniteSet& b);
// Pseudo cylinder [w] placed at coordinate k.
FiniteSet pseudo_cylinder(size_t k, const std::vector<Glyph>& w);
FiniteSet cylinder_set(const Cylinder& z, const BlurFamily& f);

std::string atom_text(const Atom& a, const BlurFamily& f);
std::string fds_text(const FiniteSet& s, const BlurFamily& f);
// "x0 = 0.1 and x1 is blur or x0 in col 2"
FiniteSet parse_condition(const std::string& text, const BlurFamily& f);

struct Action {
    enum class Kind { EmitSymbol, EmitBlur, Transform };
    Kind kind = Kind::EmitSymbol;
    Symbol sym;
    BlurId blur;  // codomain blur
    // Transform: column col(t); index a*i+b, or code(t, i) when by_code.
    ColExpr col;
    Affine idx{1, 0};
    bool by_code = false;
};

struct CodeRule {
    FiniteSet when;
    Action action;
    bool is_default = false;
    int line = 0;
};

class Code {
public:
    std::string name;
    Presentation domain, codomain;
    std::string domain_path, codomain_path;
    std::vector<CodeRule> rules;  // the last one is the default

    // Paths in the header are resolved against base_dir.
    static Code parse(const std::string& text, const std::string& base_dir = ".");
    static Code load(const std::string& path);

    size_t window() const;  // 1 + largest constrained position
    bool has_absolute() const;
    std::string action_text(const Action& a) const;

    // First rule matching sigma^n(x).
    size_t rule_at(const Point& x, size_t n) const;
    // Output glyph of the action on the glyph x_n.
    Glyph act(const Action& a, const Glyph& g) const;
    // Image of a domain blur under a transform: the codomain blur G with H
    // minus T^-1(G) finite. Throws TransformBlurUndefined when there is none.
    BlurId transform_blur(const Action& a, BlurId h) const;
    Symbol transform_symbol(const Action& a, Symbol s) const;
};

struct CodeOutput {
    std::vector<Glyph> coords;  // first `horizon` output coordinates
    std::optional<Point> point; // closed form, when the code commutes with the shift
};
// Throws PointNotInDomain, OutputNotInCodomain.
CodeOutput apply_code(const Code& c, const Point& x, size_t horizon);

struct CheckResult {
    bool ok = true;
    std::string witness;  // first failing sample
};
CheckResult commute_check(const Code& c, const std::vector<Point>& samples, size_t horizon = 20);
// Phi(sigma^p x) == Phi(x) for points with sigma^p x == x.
CheckResult period_check(const Code& c, const std::vector<Point>& samples);

enum class Tri { Holds, Fails, Unknown };
std::string tri_text(Tri t);

struct LengthPreserving {
    Tri verdict = Tri::Unknown;
    std::string witness;
};
LengthPreserving length_preserving_check(const Code& c, uint64_t seed = 1);

struct ConditionVerdict {
    std::string name;  // "i", "ii.a", "ii.b", "iii"
    Tri verdict = Tri::Unknown;
    std::string detail;
};
std::vector<ConditionVerdict> chl_condition_report(const Code& c);

}  // namespace blurshift
