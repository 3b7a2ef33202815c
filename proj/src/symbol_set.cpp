#include "blurshift/symbol_set.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "blurshift/lexer.hpp"

namespace blurshift {

namespace {

constexpr size_t kMaxExplicit = 100000;
constexpr uint64_t kMaxDiagonal = 20000000;

void sort_symbols(std::vector<Symbol>& v) {
    std::sort(v.begin(), v.end(), code_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string symbols_text(const std::vector<Symbol>& v) {
    std::string out = "{";
    for (size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + to_string(v[k]);
    return out + "}";
}

std::vector<Symbol> parse_symbol_list(TokenStream& ts) {
    std::vector<Symbol> out;
    ts.expect("{");
    if (ts.accept("}")) return out;
    do out.push_back(ts.expect_symbol());
    while (ts.accept(","));
    ts.expect("}");
    sort_symbols(out);
    return out;
}

BlurRef parse_blur_ref(TokenStream& ts) {
    ts.expect("~");
    BlurRef r;
    r.name = ts.expect_ident();
    if (ts.accept("(")) {
        r.arg = ts.parse_colexpr();
        ts.expect(")");
    }
    return r;
}

IndexSet column_points(const std::vector<Symbol>& pts, uint64_t col) {
    std::vector<uint64_t> idx;
    for (const auto& s : pts)
        if (s.col == col) idx.push_back(s.idx);
    return IndexSet::of(idx);
}

ColExpr closed_col(const ColExpr& c, Symbol input, bool& negative) {
    int64_t v = c.at(static_cast<int64_t>(input.col));
    negative = v < 0;
    return ColExpr{false, v};
}

IndexSet label_slice(const Label& l, uint64_t col, const BlurFamily& f) {
    if (l.is_blur) return f.slice(resolve_ref(l.blur, f), col);
    return (l.col.off == static_cast<int64_t>(col) && f.alphabet.has(col)) ? IndexSet::all() : IndexSet::none();
}

IndexSet term_slice(const Term& t, uint64_t col, const BlurFamily& f) {
    if (!f.alphabet.has(col)) return IndexSet::none();
    switch (t.kind) {
        case Term::Kind::Finite:
            return column_points(t.syms, col);
        case Term::Kind::Blur:
            return f.slice(resolve_ref(t.blur, f), col) - column_points(t.syms, col);
        case Term::Kind::Column:
            if (t.col.off != static_cast<int64_t>(col)) return IndexSet::none();
            return IndexSet::all() - column_points(t.syms, col);
        case Term::Kind::Tail:
            if (t.col.off != static_cast<int64_t>(col)) return IndexSet::none();
            return IndexSet::from(static_cast<uint64_t>(std::max<int64_t>(0, t.from.b))) - column_points(t.syms, col);
        case Term::Kind::All: {
            IndexSet s = IndexSet::all() - column_points(t.syms, col);
            for (const auto& l : t.labels) s = s - label_slice(l, col, f);
            return s;
        }
    }
    return IndexSet::none();
}

bool is_blur_diag(const Term& t, const BlurFamily& f, BlurPresentation& out) {
    if (t.kind != Term::Kind::Blur) return false;
    BlurId h = resolve_ref(t.blur, f);
    if (!f.diagonal(h)) return false;
    out = f.named.at(static_cast<size_t>(h.named));
    return true;
}

}  // namespace

std::string BlurRef::text() const {
    std::string out = "~" + name;
    if (arg) out += "(" + colexpr_text(*arg) + ")";
    return out;
}

std::string Term::text() const {
    switch (kind) {
        case Kind::Finite:
            return symbols_text(syms);
        case Kind::Blur:
            return blur.text() + (syms.empty() ? "" : " minus " + symbols_text(syms));
        case Kind::Column:
            return "col " + colexpr_text(col) + (syms.empty() ? "" : " minus " + symbols_text(syms));
        case Kind::Tail:
            return "coltail " + colexpr_text(col) + " from " + affine_text(from, "i") +
                   (syms.empty() ? "" : " minus " + symbols_text(syms));
        case Kind::All: {
            std::string out = "all";
            if (labels.empty() && syms.empty()) return out;
            out += " minus";
            for (const auto& l : labels) out += " " + (l.is_blur ? l.blur.text() : "col " + colexpr_text(l.col));
            if (!syms.empty()) out += " " + symbols_text(syms);
            return out;
        }
    }
    return "";
}

SymbolSet SymbolSet::parse(const std::string& text) {
    TokenStream ts(text);
    SymbolSet s = parse(ts);
    ts.expect_end();
    return s;
}

SymbolSet SymbolSet::parse(TokenStream& ts) {
    SymbolSet s;
    do {
        Term t;
        if (ts.is("{")) {
            t.kind = Term::Kind::Finite;
            t.syms = parse_symbol_list(ts);
        } else if (ts.is("~")) {
            t.kind = Term::Kind::Blur;
            t.blur = parse_blur_ref(ts);
            if (ts.accept("minus")) t.syms = parse_symbol_list(ts);
        } else if (ts.accept("col")) {
            t.kind = Term::Kind::Column;
            t.col = ts.parse_colexpr();
            if (ts.accept("minus")) t.syms = parse_symbol_list(ts);
        } else if (ts.accept("coltail")) {
            t.kind = Term::Kind::Tail;
            t.col = ts.parse_colexpr();
            ts.expect("from");
            t.from = ts.parse_affine("i");
            if (t.from.a < 0) ts.fail("tail start must be non-decreasing in i");
            if (ts.accept("minus")) t.syms = parse_symbol_list(ts);
        } else if (ts.accept("all")) {
            t.kind = Term::Kind::All;
            if (ts.accept("minus")) {
                bool any = false;
                while (true) {
                    if (ts.is("~")) {
                        Label l;
                        l.blur = parse_blur_ref(ts);
                        t.labels.push_back(l);
                    } else if (ts.is("col")) {
                        ts.next();
                        Label l;
                        l.is_blur = false;
                        l.col = ts.parse_colexpr();
                        t.labels.push_back(l);
                    } else if (ts.is("{")) {
                        auto more = parse_symbol_list(ts);
                        t.syms.insert(t.syms.end(), more.begin(), more.end());
                        sort_symbols(t.syms);
                    } else {
                        break;
                    }
                    any = true;
                }
                if (!any) ts.fail("expected labels after 'minus'");
            }
        } else {
            ts.fail("expected a symbol-set term");
        }
        s.terms.push_back(std::move(t));
    } while (ts.accept("+"));
    return s;
}

SymbolSet SymbolSet::finite(std::vector<Symbol> syms) {
    sort_symbols(syms);
    Term t;
    t.syms = std::move(syms);
    return SymbolSet{{t}};
}

SymbolSet SymbolSet::column(uint64_t c) {
    Term t;
    t.kind = Term::Kind::Column;
    t.col.off = static_cast<int64_t>(c);
    return SymbolSet{{t}};
}

SymbolSet SymbolSet::all() {
    Term t;
    t.kind = Term::Kind::All;
    return SymbolSet{{t}};
}

std::string SymbolSet::text() const {
    if (terms.empty()) return "{}";
    std::string out;
    for (size_t k = 0; k < terms.size(); ++k) out += (k ? " + " : "") + terms[k].text();
    return out;
}

bool SymbolSet::is_template() const {
    auto open_ref = [](const BlurRef& r) { return r.arg && r.arg->var; };
    for (const auto& t : terms) {
        switch (t.kind) {
            case Term::Kind::Finite:
                break;
            case Term::Kind::Blur:
                if (open_ref(t.blur)) return true;
                break;
            case Term::Kind::Column:
                if (t.col.var) return true;
                break;
            case Term::Kind::Tail:
                if (t.col.var || t.from.a != 0) return true;
                break;
            case Term::Kind::All:
                for (const auto& l : t.labels)
                    if (l.is_blur ? open_ref(l.blur) : l.col.var) return true;
                break;
        }
    }
    return false;
}

SymbolSet SymbolSet::instantiate(Symbol input) const {
    SymbolSet out;
    auto close_ref = [&](BlurRef r, bool& neg) {
        neg = false;
        if (r.arg) r.arg = closed_col(*r.arg, input, neg);
        return r;
    };
    for (const auto& t : terms) {
        Term n = t;
        bool neg = false;
        switch (t.kind) {
            case Term::Kind::Finite:
                break;
            case Term::Kind::Blur:
                n.blur = close_ref(t.blur, neg);
                break;
            case Term::Kind::Column:
                n.col = closed_col(t.col, input, neg);
                break;
            case Term::Kind::Tail:
                n.col = closed_col(t.col, input, neg);
                n.from = Affine{0, std::max<int64_t>(0, t.from.at(static_cast<int64_t>(input.idx)))};
                break;
            case Term::Kind::All: {
                n.labels.clear();
                for (const auto& l : t.labels) {
                    Label m = l;
                    bool lneg = false;
                    if (l.is_blur) m.blur = close_ref(l.blur, lneg);
                    else m.col = closed_col(l.col, input, lneg);
                    if (!lneg) n.labels.push_back(m);
                }
                break;
            }
        }
        if (!neg) out.terms.push_back(std::move(n));
    }
    if (out.terms.empty()) out = finite({});
    return out;
}

uint64_t SymbolSet::constant_bound() const {
    uint64_t m = 0;
    auto see = [&m](int64_t v) { m = std::max<uint64_t>(m, static_cast<uint64_t>(v < 0 ? -v : v)); };
    auto see_ref = [&](const BlurRef& r) {
        if (r.arg) see(r.arg->off);
    };
    for (const auto& t : terms) {
        for (const auto& s : t.syms) see(static_cast<int64_t>(s.col));
        switch (t.kind) {
            case Term::Kind::Blur:
                see_ref(t.blur);
                break;
            case Term::Kind::Column:
            case Term::Kind::Tail:
                see(t.col.off);
                break;
            case Term::Kind::All:
                for (const auto& l : t.labels) {
                    if (l.is_blur) see_ref(l.blur);
                    else see(l.col.off);
                }
                break;
            default:
                break;
        }
    }
    return m;
}

BlurId resolve_ref(const BlurRef& r, const BlurFamily& f) {
    if (r.arg && r.arg->var) throw Error("OpenTemplate", "blur reference " + r.text() + " needs an input symbol");
    std::string label = r.name;
    if (r.arg) label += "(" + std::to_string(r.arg->off) + ")";
    return f.resolve(label);
}

bool member(Symbol s, const SymbolSet& e, const BlurFamily& f) {
    if (!f.alphabet.has(s.col)) return false;
    for (const auto& t : e.terms)
        if (term_slice(t, s.col, f).contains(s.idx)) return true;
    return false;
}

IndexSet slice(const SymbolSet& e, uint64_t col, const BlurFamily& f) {
    IndexSet s;
    for (const auto& t : e.terms) s = s | term_slice(t, col, f);
    return s;
}

Scope scope_for(const BlurFamily& f, std::initializer_list<const SymbolSet*> sets, std::initializer_list<uint64_t> extra) {
    uint64_t m = f.constant_bound();
    for (const auto* s : sets) m = std::max(m, s->constant_bound());
    for (uint64_t v : extra) m = std::max(m, v);
    return make_scope(f.alphabet, 2 * m + 2);
}

bool slices_infinite(const Scope& s, const SliceFn& fn) {
    for (uint64_t c : s.cols)
        if (fn(c).infinite()) return true;
    return s.rep && !fn(*s.rep).empty();
}

bool slices_empty(const Scope& s, const SliceFn& fn) {
    for (uint64_t c : s.cols)
        if (!fn(c).empty()) return false;
    return !s.rep || fn(*s.rep).empty();
}

std::vector<Symbol> slices_elements(const Scope& s, const SliceFn& fn) {
    std::vector<Symbol> out;
    for (uint64_t c : s.cols) {
        IndexSet x = fn(c);
        if (x.infinite()) throw Error("InfiniteSet", "set is infinite in col " + std::to_string(c));
        for (uint64_t i : x.elements(kMaxExplicit)) out.push_back(Symbol{c, i});
    }
    if (s.rep && !fn(*s.rep).empty()) throw Error("InfiniteSet", "set meets infinitely many columns");
    sort_symbols(out);
    return out;
}

std::string slices_witness(const Scope& s, const SliceFn& fn) {
    for (uint64_t c : s.cols) {
        IndexSet x = fn(c);
        if (x.infinite()) return "col " + std::to_string(c) + (x.cofinite() ? "" : " " + x.describe());
    }
    if (s.rep && !fn(*s.rep).empty()) return "infinitely many columns, e.g. col " + std::to_string(*s.rep);
    return "";
}

bool is_infinite(const SymbolSet& e, const BlurFamily& f) {
    Scope sc = scope_for(f, {&e});
    return slices_infinite(sc, [&](uint64_t c) { return slice(e, c, f); });
}

bool is_empty(const SymbolSet& e, const BlurFamily& f) {
    Scope sc = scope_for(f, {&e});
    return slices_empty(sc, [&](uint64_t c) { return slice(e, c, f); });
}

bool blur_intersection_infinite(const SymbolSet& e, BlurId h, const BlurFamily& f) {
    Scope sc = scope_for(f, {&e}, {h.param() ? h.t : 0});
    return slices_infinite(sc, [&](uint64_t c) { return slice(e, c, f) & f.slice(h, c); });
}

bool blur_intersection_infinite(const SymbolSet& e, const std::string& label, const BlurFamily& f) {
    return blur_intersection_infinite(e, f.resolve(label), f);
}

Residual coverage_residual(const SymbolSet& e, const std::vector<BlurId>& blurs, const BlurFamily& f) {
    uint64_t m = 0;
    for (auto b : blurs)
        if (b.param()) m = std::max(m, b.t);
    Scope sc = scope_for(f, {&e}, {m});
    SliceFn fn = [&](uint64_t c) {
        IndexSet s = slice(e, c, f);
        for (auto b : blurs) s = s - f.slice(b, c);
        return s;
    };
    Residual r;
    if (slices_infinite(sc, fn)) {
        r.finite = false;
        r.witness = slices_witness(sc, fn);
        return r;
    }
    r.symbols = slices_elements(sc, fn);
    return r;
}

namespace {

std::vector<Symbol> enumerate_impl(const SymbolSet& e, size_t n, uint64_t code_limit, const BlurFamily& f) {
    std::vector<Symbol> out;
    if (n == 0) return out;
    if (!is_infinite(e, f)) {
        Scope sc = scope_for(f, {&e});
        auto all = slices_elements(sc, [&](uint64_t c) { return slice(e, c, f); });
        for (const auto& s : all) {
            if (out.size() >= n || code(s) >= code_limit) break;
            out.push_back(s);
        }
        return out;
    }
    std::set<uint64_t> cols;
    bool has_all = false;
    std::vector<BlurPresentation> diags;
    std::map<uint64_t, std::vector<Symbol>> explicit_by_diag;
    auto note_explicit = [&](const std::vector<Symbol>& v) {
        for (const auto& s : v) explicit_by_diag[s.col + s.idx].push_back(s);
    };
    for (const auto& t : e.terms) {
        switch (t.kind) {
            case Term::Kind::Finite:
                note_explicit(t.syms);
                break;
            case Term::Kind::Column:
            case Term::Kind::Tail:
                cols.insert(static_cast<uint64_t>(t.col.off));
                break;
            case Term::Kind::Blur: {
                BlurId h = resolve_ref(t.blur, f);
                BlurPresentation d;
                if (is_blur_diag(t, f, d)) diags.push_back(d);
                else cols.insert(*f.base_column(h));
                note_explicit(f.explicit_points(h));
                break;
            }
            case Term::Kind::All:
                has_all = true;
                break;
        }
    }
    for (uint64_t d = 0; out.size() < n; ++d) {
        if (d > kMaxDiagonal) throw CapExceeded("enumeration ran past diagonal " + std::to_string(kMaxDiagonal));
        unsigned __int128 first_code = static_cast<unsigned __int128>(d) * (d + 1) / 2;
        if (first_code >= code_limit) break;
        std::vector<Symbol> cand;
        if (has_all) {
            for (uint64_t c = 0; c <= d; ++c)
                if (f.alphabet.has(c)) cand.push_back(Symbol{c, d - c});
        } else {
            for (uint64_t c : cols) {
                if (c > d) break;
                cand.push_back(Symbol{c, d - c});
            }
            for (const auto& b : diags) {
                // k + slope*k + offset = d
                int64_t num = static_cast<int64_t>(d) - b.offset;
                int64_t den = static_cast<int64_t>(b.slope) + 1;
                if (num < 0 || num % den) continue;
                uint64_t k = static_cast<uint64_t>(num / den);
                if (k >= b.start) cand.push_back(Symbol{k, d - k});
            }
        }
        auto it = explicit_by_diag.find(d);
        if (it != explicit_by_diag.end()) cand.insert(cand.end(), it->second.begin(), it->second.end());
        std::sort(cand.begin(), cand.end(), [](Symbol a, Symbol b) { return a.idx < b.idx; });
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (const auto& s : cand) {
            if (out.size() >= n || code(s) >= code_limit) break;
            if (member(s, e, f)) out.push_back(s);
        }
    }
    return out;
}

}  // namespace

std::vector<Symbol> enumerate(const SymbolSet& e, size_t n, const BlurFamily& f) {
    return enumerate_impl(e, n, UINT64_MAX, f);
}

std::vector<Symbol> enumerate_below(const SymbolSet& e, uint64_t code_limit, const BlurFamily& f) {
    return enumerate_impl(e, SIZE_MAX, code_limit, f);
}

SymbolSet complement(const SymbolSet& e, const BlurFamily& f) {
    Scope sc = scope_for(f, {&e});
    std::vector<Symbol> extra;
    SymbolSet out;
    const Term* all_term = nullptr;
    for (const auto& t : e.terms)
        if (t.kind == Term::Kind::All) {
            all_term = &t;
            break;
        }
    if (!all_term) {
        Term a;
        a.kind = Term::Kind::All;
        std::vector<Symbol> candidates;
        for (const auto& t : e.terms) {
            switch (t.kind) {
                case Term::Kind::Finite:
                    for (const auto& s : t.syms)
                        if (f.alphabet.has(s.col)) a.syms.push_back(s);
                    break;
                case Term::Kind::Blur: {
                    Label l;
                    l.blur = t.blur;
                    if (std::find(a.labels.begin(), a.labels.end(), l) == a.labels.end()) a.labels.push_back(l);
                    candidates.insert(candidates.end(), t.syms.begin(), t.syms.end());
                    break;
                }
                case Term::Kind::Column:
                case Term::Kind::Tail: {
                    Label l;
                    l.is_blur = false;
                    l.col = t.col;
                    if (std::find(a.labels.begin(), a.labels.end(), l) == a.labels.end()) a.labels.push_back(l);
                    candidates.insert(candidates.end(), t.syms.begin(), t.syms.end());
                    if (t.kind == Term::Kind::Tail) {
                        if (static_cast<uint64_t>(t.from.b) > kMaxExplicit)
                            throw Error("NotRepresentable", "tail start too large to complement");
                        for (int64_t i = 0; i < t.from.b; ++i)
                            candidates.push_back(Symbol{static_cast<uint64_t>(t.col.off), static_cast<uint64_t>(i)});
                    }
                    break;
                }
                case Term::Kind::All:
                    break;
            }
        }
        sort_symbols(a.syms);
        out.terms.push_back(a);
        for (const auto& s : candidates)
            if (f.alphabet.has(s.col) && !member(s, e, f)) extra.push_back(s);
    } else {
        for (const auto& s : all_term->syms)
            if (!member(s, e, f)) extra.push_back(s);
        for (const auto& l : all_term->labels) {
            SliceFn outside = [&](uint64_t c) { return label_slice(l, c, f) - slice(e, c, f); };
            SliceFn inside = [&](uint64_t c) { return label_slice(l, c, f) & slice(e, c, f); };
            if (!slices_infinite(sc, outside)) {
                auto v = slices_elements(sc, outside);
                extra.insert(extra.end(), v.begin(), v.end());
            } else if (!slices_infinite(sc, inside)) {
                Term t;
                if (l.is_blur) {
                    t.kind = Term::Kind::Blur;
                    t.blur = l.blur;
                } else {
                    t.kind = Term::Kind::Column;
                    t.col = l.col;
                }
                t.syms = slices_elements(sc, inside);
                out.terms.push_back(t);
            } else {
                throw Error("NotRepresentable", "complement splits a label infinitely both ways");
            }
        }
    }
    sort_symbols(extra);
    if (!extra.empty() || out.terms.empty()) {
        Term t;
        t.syms = extra;
        out.terms.push_back(t);
    }
    return out;
}

}  // namespace blurshift
