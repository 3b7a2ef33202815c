#include "blurshift/family.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "blurshift/lexer.hpp"

namespace blurshift {

namespace {

constexpr size_t kMaxPatch = 100000;

IndexSet column_points(const std::vector<Symbol>& pts, uint64_t col) {
    std::vector<uint64_t> idx;
    for (const auto& s : pts)
        if (s.col == col) idx.push_back(s.idx);
    return IndexSet::of(idx);
}

// Index range of a parametric patch at parameter t, or none if it is empty or
// lands in a negative column.
std::optional<std::pair<uint64_t, IndexSet>> patch_at(const PatchRange& p, uint64_t t) {
    int64_t c = p.col.at(static_cast<int64_t>(t));
    if (c < 0) return std::nullopt;
    int64_t lo = std::max<int64_t>(0, p.lo.at(static_cast<int64_t>(t)));
    int64_t hi = p.hi.at(static_cast<int64_t>(t));
    if (hi < lo) return std::nullopt;
    return std::make_pair(static_cast<uint64_t>(c), IndexSet::range(static_cast<uint64_t>(lo), static_cast<uint64_t>(hi)));
}

std::string symbols_text(const std::vector<Symbol>& v) {
    std::string out = "{";
    for (size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + to_string(v[k]);
    return out + "}";
}

std::string patch_text(const PatchRange& p) {
    std::string out = colexpr_text(p.col) + ":" + affine_text(p.lo, "t");
    if (p.hi != p.lo) out += ".." + affine_text(p.hi, "t");
    return out;
}

void sort_symbols(std::vector<Symbol>& v) {
    std::sort(v.begin(), v.end(), code_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Symbol> parse_patch_set(TokenStream& ts) {
    std::vector<Symbol> out;
    ts.expect("{");
    if (ts.accept("}")) return out;
    do {
        if (ts.peek().kind == Token::Kind::Sym) {
            out.push_back(ts.expect_symbol());
        } else {
            uint64_t c = ts.expect_uint();
            ts.expect(":");
            uint64_t lo = ts.expect_uint();
            uint64_t hi = lo;
            if (ts.accept("..")) hi = ts.expect_uint();
            if (hi < lo || hi - lo > kMaxPatch) ts.fail("bad patch range");
            for (uint64_t i = lo; i <= hi; ++i) out.push_back(Symbol{c, i});
        }
    } while (ts.accept(","));
    ts.expect("}");
    sort_symbols(out);
    return out;
}

std::vector<PatchRange> parse_param_patches(TokenStream& ts) {
    std::vector<PatchRange> out;
    ts.expect("{");
    if (ts.accept("}")) return out;
    do {
        PatchRange p;
        if (ts.peek().kind == Token::Kind::Sym) {
            Symbol s = ts.expect_symbol();
            p.col.off = static_cast<int64_t>(s.col);
            p.lo.b = p.hi.b = static_cast<int64_t>(s.idx);
        } else {
            p.col = ts.parse_colexpr();
            ts.expect(":");
            p.lo = ts.parse_affine("t");
            p.hi = p.lo;
            if (ts.accept("..")) p.hi = ts.parse_affine("t");
        }
        out.push_back(p);
    } while (ts.accept(","));
    ts.expect("}");
    return out;
}

}  // namespace

std::string Alphabet::text() const { return columns ? "columns " + std::to_string(*columns) : "columns all"; }

Scope make_scope(const Alphabet& a, uint64_t bound) {
    Scope s;
    if (a.columns) {
        for (uint64_t c = 0; c < *a.columns; ++c) s.cols.push_back(c);
    } else {
        for (uint64_t c = 0; c < bound; ++c) s.cols.push_back(c);
        s.rep = bound;
    }
    return s;
}

std::vector<BlurId> BlurFamily::named_ids() const {
    std::vector<BlurId> out;
    for (size_t j = 0; j < named.size(); ++j) out.push_back(BlurId{static_cast<int32_t>(j), 0});
    return out;
}

IndexSet BlurFamily::slice(BlurId h, uint64_t col) const {
    if (!alphabet.has(col)) return IndexSet::none();
    if (h.param()) {
        if (!param) throw Error("UnknownBlurLabel", "no parametric family");
        IndexSet s;
        if (col == h.t && h.t >= param->t0) {
            s = IndexSet::all();
            for (const auto& p : param->removed) {
                auto r = patch_at(p, h.t);
                if (r && r->first == col) s = s - r->second;
            }
        }
        for (const auto& p : param->added) {
            auto r = patch_at(p, h.t);
            if (r && r->first == col) s = s | r->second;
        }
        return s;
    }
    const BlurPresentation& b = named.at(static_cast<size_t>(h.named));
    IndexSet s;
    switch (b.kind) {
        case BlurKind::ColumnCofinite:
            if (col == b.column) s = IndexSet::all();
            break;
        case BlurKind::Residue:
            if (col == b.column) s = IndexSet::residue(b.modulus, b.remainder);
            break;
        case BlurKind::Diagonal:
            if (col >= b.start) {
                int64_t v = static_cast<int64_t>(b.slope * col) + b.offset;
                if (v >= 0) s = IndexSet::point(static_cast<uint64_t>(v));
            }
            break;
    }
    s = s - column_points(b.removed, col);
    return s | column_points(b.added, col);
}

bool BlurFamily::contains(BlurId h, Symbol s) const { return slice(h, s.col).contains(s.idx); }

std::string BlurFamily::label(BlurId h) const {
    if (h.param()) return param->label + "(" + std::to_string(h.t) + ")";
    return named.at(static_cast<size_t>(h.named)).label;
}

std::optional<BlurId> BlurFamily::try_resolve(const std::string& text) const {
    auto lp = text.find('(');
    if (lp != std::string::npos) {
        if (!param || text.substr(0, lp) != param->label || text.back() != ')') return std::nullopt;
        std::string num = text.substr(lp + 1, text.size() - lp - 2);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        uint64_t t = std::stoull(num);
        if (t < param->t0) return std::nullopt;
        return BlurId{-1, t};
    }
    for (size_t j = 0; j < named.size(); ++j)
        if (named[j].label == text) return BlurId{static_cast<int32_t>(j), 0};
    return std::nullopt;
}

BlurId BlurFamily::resolve(const std::string& text) const {
    auto r = try_resolve(text);
    if (!r) throw Error("UnknownBlurLabel", "no blur named '" + text + "'");
    return *r;
}

bool BlurFamily::diagonal(BlurId h) const {
    return !h.param() && named.at(static_cast<size_t>(h.named)).kind == BlurKind::Diagonal;
}

std::optional<uint64_t> BlurFamily::base_column(BlurId h) const {
    if (h.param()) return h.t;
    const auto& b = named.at(static_cast<size_t>(h.named));
    if (b.kind == BlurKind::Diagonal) return std::nullopt;
    return b.column;
}

std::vector<Symbol> BlurFamily::explicit_points(BlurId h) const {
    if (!h.param()) return named.at(static_cast<size_t>(h.named)).added;
    std::vector<Symbol> out;
    for (const auto& p : param->added) {
        auto r = patch_at(p, h.t);
        if (!r) continue;
        for (uint64_t i : r->second.elements(kMaxPatch)) out.push_back(Symbol{r->first, i});
    }
    return out;
}

uint64_t BlurFamily::blurcode(BlurId h) const {
    if (h.param()) return cantor_pair(1, h.t - param->t0);
    return cantor_pair(0, static_cast<uint64_t>(h.named));
}

std::optional<BlurId> BlurFamily::from_blurcode(uint64_t c) const {
    uint64_t x, y;
    cantor_unpair(c, x, y);
    if (x == 0 && y < named.size()) return BlurId{static_cast<int32_t>(y), 0};
    if (x == 1 && param) return BlurId{-1, param->t0 + y};
    return std::nullopt;
}

uint64_t BlurFamily::constant_bound() const {
    uint64_t m = 0;
    auto see = [&m](int64_t v) { m = std::max<uint64_t>(m, static_cast<uint64_t>(v < 0 ? -v : v)); };
    for (const auto& b : named) {
        see(static_cast<int64_t>(b.column));
        see(static_cast<int64_t>(b.slope));
        see(b.offset);
        see(static_cast<int64_t>(b.start));
        for (auto& s : b.removed) see(static_cast<int64_t>(s.col));
        for (auto& s : b.added) see(static_cast<int64_t>(s.col));
    }
    if (param) {
        see(static_cast<int64_t>(param->t0));
        for (auto* v : {&param->removed, &param->added})
            for (auto& p : *v) {
                see(p.col.off);
                see(p.lo.a);
                see(p.hi.a);
            }
    }
    return m;
}

std::vector<Symbol> BlurFamily::intersection(BlurId a, BlurId b) const {
    uint64_t bound = constant_bound();
    if (a.param()) bound = std::max(bound, a.t);
    if (b.param()) bound = std::max(bound, b.t);
    Scope sc = make_scope(alphabet, 2 * bound + 2);
    std::vector<Symbol> out;
    for (uint64_t c : sc.cols) {
        IndexSet s = slice(a, c) & slice(b, c);
        if (s.infinite()) throw Error("InfiniteOverlap", label(a) + " and " + label(b) + " share infinitely many symbols");
        for (uint64_t i : s.elements(kMaxPatch)) out.push_back(Symbol{c, i});
    }
    if (sc.rep && !(slice(a, *sc.rep) & slice(b, *sc.rep)).empty())
        throw Error("InfiniteOverlap", label(a) + " and " + label(b) + " share infinitely many symbols");
    sort_symbols(out);
    return out;
}

std::string BlurFamily::definition_text(size_t j) const {
    const auto& b = named.at(j);
    std::string out;
    switch (b.kind) {
        case BlurKind::ColumnCofinite:
            out = "col " + std::to_string(b.column);
            break;
        case BlurKind::Residue:
            out = "residue " + std::to_string(b.column) + " mod " + std::to_string(b.modulus) + " rem " +
                  std::to_string(b.remainder);
            break;
        case BlurKind::Diagonal:
            out = "diagonal slope " + std::to_string(b.slope) + " offset " + std::to_string(b.offset) + " from " +
                  std::to_string(b.start);
            break;
    }
    if (!b.removed.empty()) out += " minus " + symbols_text(b.removed);
    if (!b.added.empty()) out += " plus " + symbols_text(b.added);
    return out;
}

std::string BlurFamily::param_text() const {
    if (!param) return "";
    std::string out = "col t";
    auto list = [](const std::vector<PatchRange>& v) {
        std::string s = "{";
        for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + patch_text(v[k]);
        return s + "}";
    };
    if (!param->removed.empty()) out += " minus " + list(param->removed);
    if (!param->added.empty()) out += " plus " + list(param->added);
    return out;
}

BlurPresentation parse_blur_definition(const std::string& label, TokenStream& ts) {
    BlurPresentation b;
    b.label = label;
    if (ts.accept("col")) {
        b.kind = BlurKind::ColumnCofinite;
        b.column = ts.expect_uint();
    } else if (ts.accept("residue")) {
        b.kind = BlurKind::Residue;
        b.column = ts.expect_uint();
        ts.expect("mod");
        b.modulus = ts.expect_uint();
        ts.expect("rem");
        b.remainder = ts.expect_uint();
    } else if (ts.accept("diagonal")) {
        b.kind = BlurKind::Diagonal;
        ts.expect("slope");
        b.slope = ts.expect_uint();
        ts.expect("offset");
        b.offset = ts.expect_int();
        ts.expect("from");
        b.start = ts.expect_uint();
    } else {
        ts.fail("expected col, residue or diagonal");
    }
    if (ts.accept("minus")) b.removed = parse_patch_set(ts);
    if (ts.accept("plus")) b.added = parse_patch_set(ts);
    return b;
}

ParametricFamily parse_blurfam_definition(const std::string& label, uint64_t t0, TokenStream& ts) {
    ParametricFamily p;
    p.label = label;
    p.t0 = t0;
    ts.expect("col");
    ts.expect("t");
    if (ts.accept("minus")) p.removed = parse_param_patches(ts);
    if (ts.accept("plus")) p.added = parse_param_patches(ts);
    return p;
}

namespace {

IndexSet base_slice(const BlurPresentation& b, uint64_t col) {
    switch (b.kind) {
        case BlurKind::ColumnCofinite:
            return col == b.column ? IndexSet::all() : IndexSet::none();
        case BlurKind::Residue:
            return col == b.column ? IndexSet::residue(b.modulus, b.remainder) : IndexSet::none();
        case BlurKind::Diagonal:
            if (col >= b.start) {
                int64_t v = static_cast<int64_t>(b.slope * col) + b.offset;
                if (v >= 0) return IndexSet::point(static_cast<uint64_t>(v));
            }
            return IndexSet::none();
    }
    return IndexSet::none();
}

bool base_contains(const BlurPresentation& b, Symbol s) { return base_slice(b, s.col).contains(s.idx); }

}  // namespace

ValidationReport validate_family(const BlurFamily& f) {
    ValidationReport rep;
    auto err = [&rep](const std::string& code, const std::string& msg) { rep.errors.push_back({code, msg}); };
    std::set<std::string> labels;
    for (const auto& b : f.named)
        if (!labels.insert(b.label).second) err("DuplicateLabel", "blur '" + b.label + "' declared twice");
    if (f.param && labels.count(f.param->label)) err("DuplicateLabel", "blur '" + f.param->label + "' declared twice");

    for (const auto& b : f.named) {
        if (b.kind == BlurKind::Residue && (b.modulus == 0 || b.remainder >= b.modulus)) {
            err("BadResidue", b.label + ": need modulus >= 1 and remainder < modulus");
            continue;
        }
        bool infinite = false;
        if (b.kind == BlurKind::Diagonal) infinite = !f.alphabet.finite();
        else infinite = f.alphabet.has(b.column);
        if (!infinite) err("NotInfinite", b.label + " has finitely many symbols in the alphabet");
        for (const auto& s : b.removed)
            if (!base_contains(b, s)) err("BadPatch", b.label + ": removed symbol " + to_string(s) + " is not in the base set");
        for (const auto& s : b.added) {
            if (base_contains(b, s)) err("BadPatch", b.label + ": added symbol " + to_string(s) + " is already in the base set");
            if (!f.alphabet.has(s.col)) err("BadPatch", b.label + ": added symbol " + to_string(s) + " is outside the alphabet");
        }
    }
    if (f.param) {
        const auto& p = *f.param;
        if (f.alphabet.finite()) err("NotInfinite", p.label + ": a parametric family needs every column");
        for (const auto& r : p.removed)
            if (!(r.col.var && r.col.off == 0))
                err("BadPatch", p.label + ": removed patches must lie in column t");
        for (const auto& r : p.added) {
            if (r.col.var && r.col.off == 0) err("BadPatch", p.label + ": added patches must avoid column t");
            if (!r.col.var && r.col.off >= static_cast<int64_t>(p.t0)) {
                auto at = patch_at(r, static_cast<uint64_t>(r.col.off));
                if (at && !at->second.empty())
                    err("BadPatch", p.label + "(" + std::to_string(r.col.off) + "): added patch overlaps its own column");
            }
        }
    }
    if (!rep.ok()) return rep;

    // pairwise finiteness among named blurs
    for (size_t x = 0; x < f.named.size(); ++x) {
        for (size_t y = x + 1; y < f.named.size(); ++y) {
            const auto& a = f.named[x];
            const auto& b = f.named[y];
            if (a.kind == BlurKind::Diagonal && b.kind == BlurKind::Diagonal) {
                if (a.slope == b.slope && a.offset == b.offset)
                    err("InfiniteOverlap", a.label + " and " + b.label + " lie on the same diagonal line");
                continue;
            }
            if (a.kind == BlurKind::Diagonal || b.kind == BlurKind::Diagonal) continue;  // meet in at most one base point
            if (a.column != b.column) continue;
            IndexSet common = base_slice(a, a.column) & base_slice(b, b.column);
            if (common.infinite())
                err("InfiniteOverlap", a.label + " and " + b.label + " share " + common.describe() + " in col " +
                                           std::to_string(a.column));
        }
    }
    if (f.param) {
        for (const auto& b : f.named) {
            if (b.kind == BlurKind::Diagonal) continue;
            if (b.column >= f.param->t0)
                err("InfiniteOverlap", b.label + " and " + f.param->label + "(" + std::to_string(b.column) +
                                           ") share " + base_slice(b, b.column).describe() + " in col " +
                                           std::to_string(b.column));
        }
    }
    return rep;
}

}  // namespace blurshift
