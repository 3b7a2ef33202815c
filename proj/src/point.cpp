#include "blurshift/point.hpp"

#include <algorithm>
#include <set>

#include "blurshift/lexer.hpp"

namespace blurshift {

namespace {

void sort_symbols(std::vector<Symbol>& v) {
    std::sort(v.begin(), v.end(), code_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Word prefix_of(const Point& x, size_t n) {
    Word w;
    for (size_t k = 0; k < n; ++k) w.push_back(x.at(k).sym);
    return w;
}

std::string word_text(const Word& w) {
    std::string out;
    for (size_t k = 0; k < w.size(); ++k) out += (k ? " " : "") + to_string(w[k]);
    return out;
}

BlurId parse_blur_label(TokenStream& ts, const BlurFamily& f) {
    ts.expect("~");
    std::string label = ts.expect_ident();
    if (ts.accept("(")) {
        label += "(" + std::to_string(ts.expect_uint()) + ")";
        ts.expect(")");
    }
    auto h = f.try_resolve(label);
    if (!h) throw Error("UnknownBlurLabel", "no blur named " + label);
    return *h;
}

std::vector<Symbol> blur_only(std::vector<Symbol> v, BlurId h, const BlurFamily& f) {
    std::vector<Symbol> out;
    for (auto s : v)
        if (f.contains(h, s)) out.push_back(s);
    sort_symbols(out);
    return out;
}

}  // namespace

std::string glyph_text(const Glyph& g, const BlurFamily& f) {
    return g.is_blur ? "~" + f.label(g.blur) : to_string(g.sym);
}

Point Point::periodic(Word head, Word cycle) {
    if (cycle.empty()) throw Error("MalformedPoint", "periodic part must be nonempty");
    size_t n = cycle.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (size_t j = d; j < n && ok; ++j) ok = cycle[j] == cycle[j - d];
        if (ok) {
            cycle.resize(d);
            break;
        }
    }
    while (!head.empty() && head.back() == cycle.back()) {
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
        head.pop_back();
    }
    Point p;
    p.kind_ = Kind::Periodic;
    p.head_ = std::move(head);
    p.cycle_ = std::move(cycle);
    return p;
}

Point Point::blur_tail(Word head, BlurId h) {
    Point p;
    p.kind_ = Kind::BlurTail;
    p.head_ = std::move(head);
    p.blur_ = h;
    return p;
}

Glyph Point::at(size_t k) const {
    if (k < head_.size()) return Glyph::of(head_[k]);
    if (kind_ == Kind::BlurTail) return Glyph::of(blur_);
    return Glyph::of(cycle_[(k - head_.size()) % cycle_.size()]);
}

std::optional<size_t> Point::stratum() const {
    if (kind_ == Kind::BlurTail) return head_.size();
    return std::nullopt;
}

Word Point::symbols(size_t n) const {
    Word w;
    for (size_t k = 0; k < n; ++k) {
        Glyph g = at(k);
        if (g.is_blur) break;
        w.push_back(g.sym);
    }
    return w;
}

Point shift_apply(const Point& x) {
    if (x.is_blur()) {
        if (x.head().empty()) return x;
        return Point::blur_tail(Word(x.head().begin() + 1, x.head().end()), x.blur());
    }
    if (!x.head().empty()) return Point::periodic(Word(x.head().begin() + 1, x.head().end()), x.cycle());
    Word c = x.cycle();
    std::rotate(c.begin(), c.begin() + 1, c.end());
    return Point::periodic({}, c);
}

Point shift_apply(const Point& x, size_t times) {
    Point y = x;
    for (size_t k = 0; k < times; ++k) y = shift_apply(y);
    return y;
}

std::optional<size_t> first_difference(const Point& x, const Point& y) {
    size_t px = x.is_blur() ? 1 : x.cycle().size();
    size_t py = y.is_blur() ? 1 : y.cycle().size();
    size_t bound = std::max(x.head().size(), y.head().size()) + px * py + 1;
    for (size_t k = 0; k < bound; ++k)
        if (x.at(k) != y.at(k)) return k;
    return std::nullopt;
}

Cylinder Cylinder::blurred(Word w, BlurId h, std::vector<Symbol> excluded) {
    sort_symbols(excluded);
    return Cylinder{std::move(w), h, std::move(excluded)};
}

bool glyph_in_closure(const Glyph& g, BlurId h, const BlurFamily& f) {
    return g.is_blur ? g.blur == h : f.contains(h, g.sym);
}

bool is_prefix(const Prefix& p, const Point& x, const BlurFamily& f) {
    for (size_t k = 0; k < p.word.size(); ++k) {
        Glyph g = x.at(k);
        if (g.is_blur || g.sym != p.word[k]) return false;
    }
    return !p.blur || glyph_in_closure(x.at(p.word.size()), *p.blur, f);
}

bool cylinder_member(const Cylinder& z, const Point& x, const BlurFamily& f) {
    if (!is_prefix(Prefix{z.word, z.blur}, x, f)) return false;
    if (!z.blur) return true;
    Glyph g = x.at(z.word.size());
    return g.is_blur || !std::binary_search(z.excluded.begin(), z.excluded.end(), g.sym, code_less);
}

std::string relation_text(Relation::Kind k) {
    switch (k) {
        case Relation::Kind::Disjoint: return "disjoint";
        case Relation::Kind::Subset: return "subset";
        case Relation::Kind::Superset: return "superset";
        case Relation::Kind::Equal: return "equal";
        case Relation::Kind::Overlap: return "overlap";
    }
    return "";
}

namespace {

Relation::Kind flip(Relation::Kind k) {
    if (k == Relation::Kind::Subset) return Relation::Kind::Superset;
    if (k == Relation::Kind::Superset) return Relation::Kind::Subset;
    return k;
}

bool excluded_has(const Cylinder& z, Symbol s) {
    return std::binary_search(z.excluded.begin(), z.excluded.end(), s, code_less);
}

// z1 has the shorter (or equal) word and the words are compatible.
Relation relate_ordered(const Cylinder& z1, const Cylinder& z2, const BlurFamily& f) {
    using K = Relation::Kind;
    size_t n1 = z1.word.size(), n2 = z2.word.size();
    if (n1 < n2) {
        if (!z1.blur) return {K::Superset, {}};
        Symbol b = z2.word[n1];
        bool inside = f.contains(*z1.blur, b) && !excluded_has(z1, b);
        return {inside ? K::Superset : K::Disjoint, {}};
    }
    // same word
    if (!z1.blur && !z2.blur) return {K::Equal, {}};
    if (!z1.blur) return {K::Superset, {}};
    if (!z2.blur) return {K::Subset, {}};
    if (*z1.blur == *z2.blur) {
        const auto& a = z1.excluded;
        const auto& b = z2.excluded;
        bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end(), code_less);
        bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end(), code_less);
        if (a_in_b && b_in_a) return {K::Equal, {}};
        if (a_in_b) return {K::Superset, {}};
        if (b_in_a) return {K::Subset, {}};
        return {K::Overlap, Point::blur_tail(z1.word, *z1.blur)};
    }
    for (Symbol g : f.intersection(*z1.blur, *z2.blur)) {
        if (excluded_has(z1, g) || excluded_has(z2, g)) continue;
        Word head = z1.word;
        head.push_back(g);
        return {K::Overlap, Point::periodic(head, {g})};
    }
    return {K::Disjoint, {}};
}

}  // namespace

Relation cylinder_relation(const Cylinder& z1, const Cylinder& z2, const BlurFamily& f) {
    size_t n = std::min(z1.word.size(), z2.word.size());
    for (size_t k = 0; k < n; ++k)
        if (z1.word[k] != z2.word[k]) return {Relation::Kind::Disjoint, {}};
    if (z1.word.size() <= z2.word.size()) return relate_ordered(z1, z2, f);
    Relation r = relate_ordered(z2, z1, f);
    r.kind = flip(r.kind);
    return r;
}

Cylinder separating_cylinder(const Cylinder& z, const Point& x, const BlurFamily& f) {
    if (cylinder_member(z, x, f)) throw Error("PointInSet", "point lies in the cylinder");
    for (size_t j = 0; j < z.word.size(); ++j) {
        Glyph g = x.at(j);
        if (!g.is_blur && g.sym == z.word[j]) continue;
        if (!g.is_blur) return Cylinder::plain(prefix_of(x, j + 1));
        return Cylinder::blurred(prefix_of(x, j), g.blur, blur_only({z.word[j]}, g.blur, f));
    }
    // x agrees with the word, so z is a blur cylinder and x escapes at |alpha|
    size_t n = z.word.size();
    Glyph g = x.at(n);
    if (!g.is_blur) return Cylinder::plain(prefix_of(x, n + 1));
    return Cylinder::blurred(z.word, g.blur, f.intersection(g.blur, *z.blur));
}

std::pair<Cylinder, Cylinder> hausdorff_separation(const Point& x, const Point& y, const BlurFamily& f) {
    auto k = first_difference(x, y);
    if (!k) throw Error("EqualPoints", "points coincide");
    Glyph a = x.at(*k), b = y.at(*k);
    Word common = prefix_of(x, *k);
    if (!a.is_blur && !b.is_blur) return {Cylinder::plain(prefix_of(x, *k + 1)), Cylinder::plain(prefix_of(y, *k + 1))};
    if (!a.is_blur)
        return {Cylinder::plain(prefix_of(x, *k + 1)), Cylinder::blurred(common, b.blur, blur_only({a.sym}, b.blur, f))};
    if (!b.is_blur)
        return {Cylinder::blurred(common, a.blur, blur_only({b.sym}, a.blur, f)), Cylinder::plain(prefix_of(y, *k + 1))};
    return {Cylinder::blurred(common, a.blur), Cylinder::blurred(common, b.blur, f.intersection(a.blur, b.blur))};
}

Cylinder intersect_around(const std::vector<Cylinder>& zs, const Point& y, const BlurFamily& f) {
    for (const auto& z : zs)
        if (!cylinder_member(z, y, f)) throw Error("PointNotInSet", "every cylinder must contain the point");
    if (zs.empty()) return Cylinder::plain({});
    size_t depth = 0;  // coordinates fixed by the deepest constraint
    for (const auto& z : zs) depth = std::max(depth, z.word.size() + (z.blur ? 1 : 0));
    std::set<BlurId> deep_blurs;
    bool deep_plain = false;
    for (const auto& z : zs) {
        if (z.blur && z.word.size() + 1 == depth) deep_blurs.insert(*z.blur);
        if (!z.blur && z.word.size() == depth) deep_plain = true;
    }
    if (deep_blurs.size() == 1 && !deep_plain) {
        BlurId h = *deep_blurs.begin();
        std::vector<Symbol> ex;
        for (const auto& z : zs)
            if (z.blur && *z.blur == h && z.word.size() + 1 == depth) ex.insert(ex.end(), z.excluded.begin(), z.excluded.end());
        return Cylinder::blurred(prefix_of(y, depth - 1), h, ex);
    }
    // y is a full-shift point here: a blur tail y meets blur cylinders only at its own blur
    return Cylinder::plain(prefix_of(y, depth));
}

RegularSeparation regular_separation(const std::vector<Cylinder>& closed, const Point& y, const BlurFamily& f) {
    std::vector<Cylinder> around;
    for (const auto& z : closed) around.push_back(separating_cylinder(z, y, f));
    RegularSeparation r;
    r.around_point = intersect_around(around, y, f);
    r.around_set = closed;
    for (const auto& z : closed)
        if (cylinder_relation(r.around_point, z, f).kind != Relation::Kind::Disjoint)
            throw Error("InternalError", "regular separation produced overlapping sets");
    return r;
}

std::string point_text(const Point& x, const BlurFamily& f) {
    std::string h = word_text(x.head());
    if (x.is_blur()) return (h.empty() ? "" : h + " ") + "| ~" + f.label(x.blur());
    return (h.empty() ? "" : h + " ") + "(" + word_text(x.cycle()) + ")*";
}

std::string prefix_text(const Prefix& p, const BlurFamily& f) {
    std::string w = word_text(p.word);
    if (!p.blur) return w.empty() ? "()" : w;
    return (w.empty() ? "" : w + " ") + "~" + f.label(*p.blur);
}

std::string cylinder_text(const Cylinder& z, const BlurFamily& f) {
    std::string out = "Z[" + word_text(z.word);
    if (z.blur) {
        out += (z.word.empty() ? "" : " ") + std::string("~") + f.label(*z.blur);
        if (!z.excluded.empty()) {
            out += " minus {";
            for (size_t k = 0; k < z.excluded.size(); ++k) out += (k ? ", " : "") + to_string(z.excluded[k]);
            out += "}";
        }
    }
    return out + "]";
}

namespace {

Word parse_word(TokenStream& ts) {
    Word w;
    while (ts.peek().kind == Token::Kind::Sym) w.push_back(ts.expect_symbol());
    return w;
}

}  // namespace

Point parse_point(const std::string& text, const BlurFamily& f) {
    TokenStream ts(text);
    Word head = parse_word(ts);
    Point p;
    if (ts.accept("|")) {
        p = Point::blur_tail(head, parse_blur_label(ts, f));
    } else if (ts.accept("(")) {
        Word cycle = parse_word(ts);
        ts.expect(")");
        ts.expect("*");
        if (cycle.empty()) ts.fail("periodic part must be nonempty");
        p = Point::periodic(head, cycle);
    } else {
        ts.fail("expected '|' or '(' after the head");
    }
    ts.expect_end();
    for (Symbol s : p.head())
        if (!f.alphabet.has(s.col)) throw Error("NotInAlphabet", to_string(s) + " is outside the alphabet");
    for (Symbol s : p.cycle())
        if (!f.alphabet.has(s.col)) throw Error("NotInAlphabet", to_string(s) + " is outside the alphabet");
    return p;
}

Prefix parse_prefix(const std::string& text, const BlurFamily& f) {
    TokenStream ts(text);
    Prefix p;
    p.word = parse_word(ts);
    if (ts.is("~")) p.blur = parse_blur_label(ts, f);
    ts.expect_end();
    return p;
}

Cylinder parse_cylinder(const std::string& text, const BlurFamily& f) {
    TokenStream ts(text);
    ts.expect("Z");
    ts.expect("[");
    Cylinder z;
    z.word = parse_word(ts);
    if (ts.is("~")) {
        z.blur = parse_blur_label(ts, f);
        if (ts.accept("minus")) {
            ts.expect("{");
            if (!ts.accept("}")) {
                do z.excluded.push_back(ts.expect_symbol());
                while (ts.accept(","));
                ts.expect("}");
            }
            sort_symbols(z.excluded);
            for (Symbol s : z.excluded)
                if (!f.contains(*z.blur, s))
                    throw Error("ExcludedOutsideBlur", to_string(s) + " is not in " + f.label(*z.blur));
        }
    }
    ts.expect("]");
    ts.expect_end();
    return z;
}

}  // namespace blurshift
