#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blurshift/point.hpp"
#include "blurshift/shift.hpp"

namespace blurshift {

// Prefix indices grow like 2^weight; 512 bits cover every weight the tables hold.
using Index = boost::multiprecision::uint512_t;
inline const Index kIndexMax = ~Index(0);

std::string index_text(Index v);
Index parse_index(const std::string& text);

// 0 or 2^-exponent, exact.
struct Dyadic {
    std::optional<Index> exponent;  // nullopt encodes 0

    static Dyadic zero() { return {}; }
    static Dyadic pow2(Index e) { return Dyadic{e}; }
    bool is_zero() const { return !exponent; }
    std::string text() const;  // "0" or "2^-i"
    bool operator==(const Dyadic&) const = default;
};
bool operator<(const Dyadic& a, const Dyadic& b);  // by value
bool operator<=(const Dyadic& a, const Dyadic& b);
Dyadic parse_dyadic(const std::string& text);  // "1", "0", "2^-5"

// The prefix set ordered by weight, then words before blur words, then
// lexicographically by codes, then by blurcode. Indices start at 1.
class PrefixEnumeration {
public:
    static constexpr uint64_t kMaxWeight = 240;

    explicit PrefixEnumeration(const BlurFamily& f, Index cap = kIndexMax);

    const BlurFamily& family() const { return f_; }
    Index cap() const { return cap_; }

    uint64_t weight(const Prefix& p) const;
    Index index_of(const Prefix& p) const;  // CapExceeded beyond the cap
    Prefix prefix_at(Index i) const;

private:
    bool valid_code(uint64_t c) const;
    bool valid_blurcode(uint64_t b) const;
    Index words(uint64_t w) const;
    Index before(uint64_t w) const;  // prefixes of weight < w

    BlurFamily f_;  // copied, so temporaries are safe
    Index cap_;
    std::vector<bool> code_ok_, blur_ok_;
    std::vector<Index> seq_, blurseq_, cum_;
};

Dyadic distance(const PrefixEnumeration& e, const Point& x, const Point& y);
bool ball_member(const PrefixEnumeration& e, const Point& center, const Dyadic& eps, const Point& y);
// Radius of a ball around x inside z (x must lie in z).
Dyadic ball_in_cylinder(const PrefixEnumeration& e, const Point& x, const Cylinder& z);
// A cylinder around x inside the ball of radius eps.
Cylinder cylinder_in_ball(const PrefixEnumeration& e, const Point& x, const Dyadic& eps);

struct SequenceFamily {
    enum class Kind { BlurApproach, Nested, ExplicitList };
    Kind kind = Kind::ExplicitList;
    Word alpha;           // BlurApproach
    BlurId blur;          // BlurApproach
    Point point;          // Nested
    Affine depth{1, 0};   // Nested: member n agrees with point on depth(n) coordinates
    std::vector<Point> list;
};
// "approach 0.5 ~H1", "nested 0.1 (1.2)* f=n", "list 0.1 (1.2)* ; | ~H".
SequenceFamily parse_sequence_family(const std::string& text, const BlurFamily& f);
std::vector<Point> family_members(const Presentation& p, const SequenceFamily& s, size_t n);
bool converges(const Presentation& p, const SequenceFamily& s, const Point& limit);

SymbolSet blur_symbols(BlurId h, const BlurFamily& f);

}  // namespace blurshift
