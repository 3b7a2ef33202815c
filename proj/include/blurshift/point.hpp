#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/family.hpp"

namespace blurshift {

// One coordinate of a point: an alphabet symbol or a blur symbol.
struct Glyph {
    bool is_blur = false;
    Symbol sym;
    BlurId blur;

    static Glyph of(Symbol s) { return Glyph{false, s, {}}; }
    static Glyph of(BlurId h) { return Glyph{true, {}, h}; }
    auto operator<=>(const Glyph&) const = default;
};

std::string glyph_text(const Glyph& g, const BlurFamily& f);

// Either head.cycle^omega, or head followed by the constant blur tail.
class Point {
public:
    enum class Kind { Periodic, BlurTail };

    static Point periodic(Word head, Word cycle);  // canonicalizes
    static Point blur_tail(Word head, BlurId h);

    Kind kind() const { return kind_; }
    bool is_blur() const { return kind_ == Kind::BlurTail; }
    const Word& head() const { return head_; }
    const Word& cycle() const { return cycle_; }
    BlurId blur() const { return blur_; }

    Glyph at(size_t k) const;
    // Index of the first blur coordinate; nullopt for points of the full shift.
    std::optional<size_t> stratum() const;
    // First n symbols (stops early at the blur for blur tails).
    Word symbols(size_t n) const;

    bool operator==(const Point&) const = default;

private:
    Kind kind_ = Kind::Periodic;
    Word head_, cycle_;
    BlurId blur_;
};

Point shift_apply(const Point& x);
Point shift_apply(const Point& x, size_t times);
// First coordinate where x and y differ; nullopt if equal.
std::optional<size_t> first_difference(const Point& x, const Point& y);

// (alpha) or (alpha H-bar).
struct Prefix {
    Word word;
    std::optional<BlurId> blur;
    bool operator==(const Prefix&) const = default;
};

// Z(alpha) when blur is unset, Z(alpha H-bar, F) otherwise; Z() is everything.
struct Cylinder {
    Word word;
    std::optional<BlurId> blur;
    std::vector<Symbol> excluded;  // sorted by code, subset of the blur
    bool operator==(const Cylinder&) const = default;

    static Cylinder plain(Word w) { return Cylinder{std::move(w), std::nullopt, {}}; }
    static Cylinder blurred(Word w, BlurId h, std::vector<Symbol> excluded = {});
};

bool glyph_in_closure(const Glyph& g, BlurId h, const BlurFamily& f);  // g in H-bar
bool is_prefix(const Prefix& p, const Point& x, const BlurFamily& f);
bool cylinder_member(const Cylinder& z, const Point& x, const BlurFamily& f);

struct Relation {
    enum class Kind { Disjoint, Subset, Superset, Equal, Overlap };
    Kind kind = Kind::Disjoint;
    std::optional<Point> witness;  // a common point when Overlap
};
std::string relation_text(Relation::Kind k);

// Relation of z1 to z2 ("Subset" means z1 is strictly inside z2).
Relation cylinder_relation(const Cylinder& z1, const Cylinder& z2, const BlurFamily& f);

Cylinder separating_cylinder(const Cylinder& z, const Point& x, const BlurFamily& f);
std::pair<Cylinder, Cylinder> hausdorff_separation(const Point& x, const Point& y, const BlurFamily& f);

struct RegularSeparation {
    Cylinder around_point;             // A, contains y
    std::vector<Cylinder> around_set;  // B, covers the closed set
};
RegularSeparation regular_separation(const std::vector<Cylinder>& closed, const Point& y, const BlurFamily& f);

// Smallest cylinder of the basis inside every given cylinder; all must contain y.
Cylinder intersect_around(const std::vector<Cylinder>& zs, const Point& y, const BlurFamily& f);

// Text forms: "0.1 (1.2 2.0)*", "0.1 1.2 | ~H", "Z[0.1 ~H minus {1.0}]", "0.1 ~H".
std::string point_text(const Point& x, const BlurFamily& f);
std::string prefix_text(const Prefix& p, const BlurFamily& f);
std::string cylinder_text(const Cylinder& z, const BlurFamily& f);
Point parse_point(const std::string& text, const BlurFamily& f);
Prefix parse_prefix(const std::string& text, const BlurFamily& f);
Cylinder parse_cylinder(const std::string& text, const BlurFamily& f);

}  // namespace blurshift
