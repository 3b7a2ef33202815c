#include "blurshift/code.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "blurshift/lexer.hpp"
#include "blurshift/metric.hpp"
#include "blurshift/sampling.hpp"
#include "blurshift/shift.hpp"

namespace blurshift {

namespace {

constexpr size_t kMaxClauses = 4096;
constexpr size_t kProbeSkip = 50;
constexpr size_t kProbeTake = 20;
constexpr size_t kHorizonM = 10;

BlurId read_blur(TokenStream& ts, const BlurFamily& f) {
    ts.expect("~");
    std::string label = ts.expect_ident();
    if (ts.accept("(")) {
        label += "(" + std::to_string(ts.expect_uint()) + ")";
        ts.expect(")");
    }
    return f.resolve(label);
}

std::string blur_list_text(const std::vector<BlurId>& ids, const BlurFamily& f) {
    std::string out;
    for (BlurId h : ids) out += " ~" + f.label(h);
    return out;
}

bool same_slot(const Atom& a, const Atom& b) { return a.pos == b.pos && a.absolute == b.absolute; }

// Clause with an obviously unsatisfiable pair (a symbol and a blur demanded at
// the same coordinate).
bool contradictory(const Clause& c) {
    for (size_t j = 0; j < c.size(); ++j)
        for (size_t k = j + 1; k < c.size(); ++k)
            if (same_slot(c[j], c[k]) && c[j].is_blur != c[k].is_blur) return true;
    return false;
}

Glyph coordinate(const Point& x, const Atom& a, size_t shift) { return x.at(a.absolute ? a.pos : shift + a.pos); }

}  // namespace

bool BlurSet::contains(BlurId h) const {
    bool listed = std::binary_search(ids.begin(), ids.end(), h);
    switch (kind) {
        case Kind::Any: return true;
        case Kind::Only: return listed;
        case Kind::Except: return !listed;
    }
    return false;
}

BlurSet BlurSet::complement() const {
    switch (kind) {
        case Kind::Any: return BlurSet{Kind::Only, {}};
        case Kind::Only: return BlurSet{ids.empty() ? Kind::Any : Kind::Except, ids};
        case Kind::Except: return BlurSet{Kind::Only, ids};
    }
    return {};
}

size_t FiniteSet::max_position() const {
    size_t m = 0;
    for (const Clause& c : clauses)
        for (const Atom& a : c) m = std::max(m, a.pos);
    return m;
}

bool FiniteSet::has_absolute() const {
    for (const Clause& c : clauses)
        for (const Atom& a : c)
            if (a.absolute) return true;
    return false;
}

bool atom_holds(const Atom& a, const Glyph& g, const BlurFamily& f) {
    if (a.is_blur) return g.is_blur && a.blurs.contains(g.blur);
    return !g.is_blur && member(g.sym, a.syms, f);
}

bool fds_member(const FiniteSet& s, const Point& x, const BlurFamily& f, size_t shift) {
    for (const Clause& c : s.clauses) {
        bool all = std::all_of(c.begin(), c.end(), [&](const Atom& a) { return atom_holds(a, coordinate(x, a, shift), f); });
        if (all) return true;
    }
    return false;
}

FiniteSet fds_union(const FiniteSet& a, const FiniteSet& b) {
    FiniteSet out = a;
    out.clauses.insert(out.clauses.end(), b.clauses.begin(), b.clauses.end());
    return out;
}

FiniteSet fds_complement(const FiniteSet& s, const BlurFamily& f) {
    // Not(C1 or C2 ...) = Not C1 and Not C2 ..., each Not Ci a disjunction of
    // negated atoms; multiplied out back into clauses.
    std::vector<Clause> acc{Clause{}};
    for (const Clause& c : s.clauses) {
        std::vector<Atom> alts;
        for (const Atom& a : c) {
            if (a.is_blur) {
                BlurSet nb = a.blurs.complement();
                if (!nb.empty()) alts.push_back(Atom{a.pos, a.absolute, true, {}, nb});
                alts.push_back(Atom{a.pos, a.absolute, false, SymbolSet::all(), {}});
            } else {
                SymbolSet ns = complement(a.syms, f);
                if (!is_empty(ns, f)) alts.push_back(Atom{a.pos, a.absolute, false, ns, {}});
                alts.push_back(Atom{a.pos, a.absolute, true, {}, BlurSet{}});
            }
        }
        std::vector<Clause> next;
        for (const Clause& base : acc) {
            for (const Atom& alt : alts) {
                Clause cl = base;
                if (std::find(cl.begin(), cl.end(), alt) == cl.end()) cl.push_back(alt);
                if (contradictory(cl)) continue;
                next.push_back(std::move(cl));
                if (next.size() > kMaxClauses) throw CapExceeded("complement needs more than 4096 clauses");
            }
        }
        acc = std::move(next);
    }
    return FiniteSet{acc};
}

FiniteSet pseudo_cylinder(size_t k, const std::vector<Glyph>& w) {
    Clause c;
    for (size_t j = 0; j < w.size(); ++j) {
        Atom a;
        a.pos = k + j;
        if (w[j].is_blur) {
            a.is_blur = true;
            a.blurs = BlurSet{BlurSet::Kind::Only, {w[j].blur}};
        } else {
            a.syms = SymbolSet::finite({w[j].sym});
        }
        c.push_back(std::move(a));
    }
    return FiniteSet{{c}};
}

FiniteSet cylinder_set(const Cylinder& z, const BlurFamily& f) {
    std::vector<Glyph> head;
    for (Symbol s : z.word) head.push_back(Glyph::of(s));
    if (!z.blur) return pseudo_cylinder(0, head);
    head.push_back(Glyph::of(*z.blur));
    FiniteSet out = pseudo_cylinder(0, head);
    Clause rest = out.clauses[0];
    Atom& last = rest.back();
    last.is_blur = false;
    last.blurs = {};
    last.syms = blur_symbols(*z.blur, f);
    last.syms.terms[0].syms = z.excluded;
    out.clauses.push_back(rest);
    return out;
}

std::string atom_text(const Atom& a, const BlurFamily& f) {
    std::string out = (a.absolute ? "a" : "x") + std::to_string(a.pos);
    if (a.is_blur) {
        switch (a.blurs.kind) {
            case BlurSet::Kind::Any: return out + " is blur";
            case BlurSet::Kind::Only:
                if (a.blurs.ids.size() == 1) return out + " is ~" + f.label(a.blurs.ids[0]);
                return out + " is blur only" + blur_list_text(a.blurs.ids, f);
            case BlurSet::Kind::Except: return out + " is blur except" + blur_list_text(a.blurs.ids, f);
        }
    }
    const auto& t = a.syms.terms;
    if (t.size() == 1 && t[0].kind == Term::Kind::Finite && t[0].syms.size() == 1) return out + " = " + to_string(t[0].syms[0]);
    return out + " in " + a.syms.text();
}

std::string fds_text(const FiniteSet& s, const BlurFamily& f) {
    if (s.clauses.empty()) return "false";
    std::string out;
    for (size_t k = 0; k < s.clauses.size(); ++k) {
        if (k) out += " or ";
        if (s.clauses[k].empty()) out += "true";
        for (size_t j = 0; j < s.clauses[k].size(); ++j) out += (j ? " and " : "") + atom_text(s.clauses[k][j], f);
    }
    return out;
}

namespace {

Atom parse_atom(TokenStream& ts, const BlurFamily& f) {
    Token t = ts.next();
    const std::string& id = t.text;
    if (t.kind != Token::Kind::Ident || id.size() < 2 || (id[0] != 'x' && id[0] != 'a') ||
        id.find_first_not_of("0123456789", 1) != std::string::npos)
        throw ParseError("expected a coordinate like x0 or a1, got '" + id + "'", t.line, t.col);
    Atom a;
    a.absolute = id[0] == 'a';
    a.pos = std::stoull(id.substr(1));
    if (ts.accept("=")) {
        a.syms = SymbolSet::finite({ts.expect_symbol()});
    } else if (ts.accept("in")) {
        a.syms = SymbolSet::parse(ts);
        if (a.syms.is_template()) ts.fail("code conditions cannot mention t or i");
    } else if (ts.accept("is")) {
        a.is_blur = true;
        if (ts.is("~")) {
            a.blurs = BlurSet{BlurSet::Kind::Only, {read_blur(ts, f)}};
        } else {
            ts.expect("blur");
            BlurSet::Kind k = BlurSet::Kind::Any;
            if (ts.accept("except")) k = BlurSet::Kind::Except;
            else if (ts.accept("only")) k = BlurSet::Kind::Only;
            a.blurs.kind = k;
            if (k != BlurSet::Kind::Any) {
                while (ts.is("~")) a.blurs.ids.push_back(read_blur(ts, f));
                std::sort(a.blurs.ids.begin(), a.blurs.ids.end());
                a.blurs.ids.erase(std::unique(a.blurs.ids.begin(), a.blurs.ids.end()), a.blurs.ids.end());
                if (a.blurs.ids.empty()) ts.fail("expected blur labels");
            }
        }
    } else {
        ts.fail("expected '=', 'in' or 'is'");
    }
    return a;
}

FiniteSet parse_condition(TokenStream& ts, const BlurFamily& f) {
    FiniteSet s;
    do {
        Clause c;
        do c.push_back(parse_atom(ts, f));
        while (ts.accept("and"));
        s.clauses.push_back(std::move(c));
    } while (ts.accept("or"));
    return s;
}

Action parse_action(TokenStream& ts, const BlurFamily& codomain) {
    ts.expect("emit");
    Action a;
    if (ts.is("~")) {
        a.kind = Action::Kind::EmitBlur;
        a.blur = read_blur(ts, codomain);
    } else if (ts.accept("transform")) {
        a.kind = Action::Kind::Transform;
        ts.expect("col");
        a.col = ts.parse_colexpr();
        ts.expect("idx");
        if (ts.accept("code")) a.by_code = true;
        else a.idx = ts.parse_affine("i");
    } else {
        a.kind = Action::Kind::EmitSymbol;
        a.sym = ts.expect_symbol();
        if (!codomain.alphabet.has(a.sym.col)) ts.fail(to_string(a.sym) + " is outside the codomain alphabet");
    }
    return a;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

FiniteSet parse_condition(const std::string& text, const BlurFamily& f) {
    TokenStream ts(text);
    FiniteSet s = parse_condition(ts, f);
    ts.expect_end();
    return s;
}

Code Code::parse(const std::string& text, const std::string& base_dir) {
    Code c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        if (!have_header) {
            // code <name> : <domain file> -> <codomain file>
            if (body.rfind("code ", 0) != 0) throw ParseError("expected 'code <name> : <domain> -> <codomain>'", lineno, 1);
            size_t colon = body.find(':'), arrow = body.find("->");
            if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
                throw ParseError("malformed code header", lineno, 1);
            c.name = trim(body.substr(5, colon - 5));
            c.domain_path = trim(body.substr(colon + 1, arrow - colon - 1));
            c.codomain_path = trim(body.substr(arrow + 2));
            namespace fs = std::filesystem;
            c.domain = Presentation::load((fs::path(base_dir) / c.domain_path).string());
            c.codomain = Presentation::load((fs::path(base_dir) / c.codomain_path).string());
            have_header = true;
            continue;
        }
        TokenStream ts(body, lineno);
        CodeRule r;
        r.line = lineno;
        if (!c.rules.empty() && c.rules.back().is_default) throw ParseError("rule after the default rule", lineno, 1);
        if (ts.accept("default")) {
            r.is_default = true;
            r.when = FiniteSet::everything();
        } else {
            ts.expect("when");
            r.when = parse_condition(ts, c.domain.family);
        }
        r.action = parse_action(ts, c.codomain.family);
        ts.expect_end();
        c.rules.push_back(std::move(r));
    }
    if (!have_header) throw Error("MissingHeader", "code file has no header");
    if (c.rules.empty() || !c.rules.back().is_default) throw Error("MissingDefault", "a code needs a default rule");
    return c;
}

Code Code::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), std::filesystem::path(path).parent_path().string());
}

size_t Code::window() const {
    size_t m = 0;
    for (const CodeRule& r : rules) m = std::max(m, r.when.max_position());
    return m + 1;
}

bool Code::has_absolute() const {
    return std::any_of(rules.begin(), rules.end(), [](const CodeRule& r) { return r.when.has_absolute(); });
}

std::string Code::action_text(const Action& a) const {
    switch (a.kind) {
        case Action::Kind::EmitSymbol: return "emit " + to_string(a.sym);
        case Action::Kind::EmitBlur: return "emit ~" + codomain.family.label(a.blur);
        case Action::Kind::Transform:
            return "emit transform col " + colexpr_text(a.col) + " idx " + (a.by_code ? "code" : affine_text(a.idx, "i"));
    }
    return "";
}

size_t Code::rule_at(const Point& x, size_t n) const {
    for (size_t r = 0; r < rules.size(); ++r)
        if (fds_member(rules[r].when, x, domain.family, n)) return r;
    return rules.size() - 1;
}

Symbol Code::transform_symbol(const Action& a, Symbol s) const {
    int64_t col = a.col.at(static_cast<int64_t>(s.col));
    int64_t idx = a.by_code ? static_cast<int64_t>(code(s)) : a.idx.at(static_cast<int64_t>(s.idx));
    if (col < 0 || idx < 0 || !codomain.family.alphabet.has(static_cast<uint64_t>(col)))
        throw Error("OutputNotInCodomain", "transform sends " + to_string(s) + " outside the codomain alphabet");
    return Symbol{static_cast<uint64_t>(col), static_cast<uint64_t>(idx)};
}

namespace {

uint64_t code_bound(const Code& c) {
    uint64_t b = std::max(c.domain.constant_bound(), c.codomain.constant_bound());
    for (const CodeRule& r : c.rules) {
        for (const Clause& cl : r.when.clauses)
            for (const Atom& a : cl) {
                if (!a.is_blur) b = std::max(b, a.syms.constant_bound());
                for (BlurId h : a.blurs.ids)
                    if (h.param()) b = std::max(b, h.t);
            }
        const Action& a = r.action;
        b = std::max<uint64_t>(b, static_cast<uint64_t>(std::abs(a.col.off)));
        b = std::max<uint64_t>(b, static_cast<uint64_t>(std::abs(a.idx.b)));
        if (a.kind == Action::Kind::EmitSymbol) b = std::max({b, a.sym.col, a.sym.idx});
        if (a.kind == Action::Kind::EmitBlur && a.blur.param()) b = std::max(b, a.blur.t);
    }
    return b;
}

Scope code_scope(const Code& c) { return make_scope(c.domain.family.alphabet, 2 * code_bound(c) + 2); }

// Column c of T^-1(G), for a transform T.
IndexSet transform_preimage(const Code& c, const Action& a, BlurId g, uint64_t col) {
    int64_t out = a.col.at(static_cast<int64_t>(col));
    if (out < 0) return IndexSet::none();
    IndexSet target = c.codomain.family.slice(g, static_cast<uint64_t>(out));
    return a.by_code ? target.preimage_code(col) : target.preimage_affine(a.idx.a, a.idx.b);
}

}  // namespace

BlurId Code::transform_blur(const Action& a, BlurId h) const {
    const BlurFamily& df = domain.family;
    const BlurFamily& cf = codomain.family;
    Scope sc = code_scope(*this);
    std::vector<BlurId> cand = cf.named_ids();
    if (cf.param) {
        std::set<uint64_t> ts;
        std::vector<uint64_t> cols = sc.cols;
        if (sc.rep) cols.push_back(*sc.rep);
        for (uint64_t col : cols) {
            if (!df.slice(h, col).infinite()) continue;
            int64_t t = a.col.at(static_cast<int64_t>(col));
            if (t >= static_cast<int64_t>(cf.param->t0) && cf.alphabet.has(static_cast<uint64_t>(t)))
                ts.insert(static_cast<uint64_t>(t));
        }
        for (uint64_t t : ts) cand.push_back(BlurId{-1, t});
    }
    for (BlurId g : cand) {
        auto rest = [&](uint64_t col) { return df.slice(h, col) - transform_preimage(*this, a, g, col); };
        if (!slices_infinite(sc, rest)) return g;
    }
    throw Error("TransformBlurUndefined", "no codomain blur contains the image of ~" + df.label(h) + " up to finitely many symbols");
}

Glyph Code::act(const Action& a, const Glyph& g) const {
    switch (a.kind) {
        case Action::Kind::EmitSymbol: return Glyph::of(a.sym);
        case Action::Kind::EmitBlur: return Glyph::of(a.blur);
        case Action::Kind::Transform: return g.is_blur ? Glyph::of(transform_blur(a, g.blur)) : Glyph::of(transform_symbol(a, g.sym));
    }
    return g;
}

namespace {

Glyph output_at(const Code& c, const Point& x, size_t n) { return c.act(c.rules[c.rule_at(x, n)].action, x.at(n)); }

}  // namespace

CodeOutput apply_code(const Code& c, const Point& x, size_t horizon) {
    Membership m = sigma_member(c.domain, x);
    if (!m.member) throw Error("PointNotInDomain", point_text(x, c.domain.family) + ": " + m.reason);
    CodeOutput out;
    for (size_t n = 0; n < horizon; ++n) out.coords.push_back(output_at(c, x, n));
    const BlurFamily& cf = c.codomain.family;
    if (c.has_absolute()) {
        Word w;
        for (const Glyph& g : out.coords) {
            if (g.is_blur) break;
            w.push_back(g.sym);
        }
        if (!in_language(c.codomain, w))
            throw Error("OutputNotInCodomain", "output word " + to_string(w) + " is not in the codomain language");
        return out;
    }
    // sigma^n x repeats with period p from n = L on, and so does the output.
    size_t L = x.head().size();
    size_t p = x.is_blur() ? 1 : x.cycle().size();
    std::vector<Glyph> y;
    for (size_t n = 0; n < L + p; ++n) y.push_back(n < out.coords.size() ? out.coords[n] : output_at(c, x, n));
    auto first_blur = std::find_if(y.begin(), y.end(), [](const Glyph& g) { return g.is_blur; });
    Point img;
    if (first_blur == y.end()) {
        Word head, cycle;
        for (size_t n = 0; n < L; ++n) head.push_back(y[n].sym);
        for (size_t n = L; n < L + p; ++n) cycle.push_back(y[n].sym);
        img = Point::periodic(head, cycle);
    } else {
        size_t b = static_cast<size_t>(first_blur - y.begin());
        for (size_t n = b; n < y.size(); ++n)
            if (y[n] != y[b])
                throw Error("OutputNotInCodomain", "coordinate " + std::to_string(n) + " follows the blur " +
                                                       glyph_text(y[b], cf) + " with " + glyph_text(y[n], cf));
        Word head;
        for (size_t n = 0; n < b; ++n) head.push_back(y[n].sym);
        img = Point::blur_tail(head, y[b].blur);
    }
    Membership mo = sigma_member(c.codomain, img);
    if (!mo.member) throw Error("OutputNotInCodomain", point_text(img, cf) + ": " + mo.reason);
    out.point = img;
    return out;
}

CheckResult commute_check(const Code& c, const std::vector<Point>& samples, size_t horizon) {
    const BlurFamily& df = c.domain.family;
    const BlurFamily& cf = c.codomain.family;
    for (const Point& x : samples) {
        std::vector<Glyph> a, b;
        try {
            a = apply_code(c, x, horizon + 1).coords;
            b = apply_code(c, shift_apply(x), horizon).coords;
        } catch (const Error& e) {
            return CheckResult{false, "x = " + point_text(x, df) + ": " + e.what()};
        }
        for (size_t k = 0; k < horizon; ++k)
            if (a[k + 1] != b[k])
                return CheckResult{false, "x = " + point_text(x, df) + ": Phi(sigma x)_" + std::to_string(k) + " = " +
                                              glyph_text(b[k], cf) + " but (sigma Phi x)_" + std::to_string(k) + " = " +
                                              glyph_text(a[k + 1], cf)};
    }
    return {};
}

CheckResult period_check(const Code& c, const std::vector<Point>& samples) {
    const BlurFamily& df = c.domain.family;
    for (const Point& x0 : samples) {
        Point x = shift_apply(x0, x0.head().size());  // purely periodic part
        size_t p = x.is_blur() ? 1 : x.cycle().size();
        CodeOutput o = apply_code(c, x, 1);
        if (!o.point) return CheckResult{false, "no closed form for " + point_text(x, df)};
        if (shift_apply(*o.point, p) != *o.point)
            return CheckResult{false, "x = " + point_text(x, df) + " has period " + std::to_string(p) + " but Phi(x) = " +
                                          point_text(*o.point, c.codomain.family)};
    }
    return {};
}

std::string tri_text(Tri t) {
    switch (t) {
        case Tri::Holds: return "holds";
        case Tri::Fails: return "fails";
        case Tri::Unknown: return "unknown";
    }
    return "";
}

namespace {

// Blur fixed points of the domain shift. Parametric members past every
// constant of the code behave alike, so a few of them stand for the rest.
std::vector<BlurId> stratum_zero_blurs(const Code& c) {
    ActiveBlurs a = active_blurs(c.domain);
    std::vector<BlurId> out = a.listed;
    if (a.param_from) {
        uint64_t hi = std::max<uint64_t>(*a.param_from, 2 * code_bound(c) + 2) + 2;
        for (uint64_t t = *a.param_from; t <= hi; ++t) out.push_back(BlurId{-1, t});
    }
    return out;
}

bool clause_needs_blur_at_zero(const Clause& cl) {
    return std::any_of(cl.begin(), cl.end(), [](const Atom& a) { return a.pos == 0 && a.is_blur; });
}
bool clause_needs_symbol_at_zero(const Clause& cl) {
    return std::any_of(cl.begin(), cl.end(), [](const Atom& a) { return a.pos == 0 && !a.is_blur; });
}

// Symbols h of H, with h in F(alpha), past the first kProbeSkip of them.
std::vector<Symbol> tail_probes(const Presentation& p, const Word& alpha, BlurId h) {
    SymbolSet fol = follower_of_word(p, alpha);
    std::vector<Symbol> out;
    size_t want = 256, seen = 0;
    while (true) {
        out.clear();
        seen = 0;
        auto cand = enumerate(blur_symbols(h, p.family), want, p.family);
        for (Symbol s : cand) {
            if (!member(s, fol, p.family)) continue;
            if (seen++ >= kProbeSkip) out.push_back(s);
            if (out.size() == kProbeTake) return out;
        }
        if (cand.size() < want || want >= (1u << 16)) return out;
        want *= 4;
    }
}

// Column slice of the symbols on which rule r fires at coordinate 0 (only
// meaningful when every atom sits at position 0).
IndexSet rule_region(const Code& c, size_t r, uint64_t col) {
    IndexSet out = IndexSet::none();
    for (const Clause& cl : c.rules[r].when.clauses) {
        if (clause_needs_blur_at_zero(cl)) continue;
        IndexSet part = IndexSet::all();
        for (const Atom& a : cl) part = part & slice(a.syms, col, c.domain.family);
        out = out | part;
    }
    return out;
}

}  // namespace

LengthPreserving length_preserving_check(const Code& c, uint64_t seed) {
    const BlurFamily& df = c.domain.family;
    const BlurFamily& cf = c.codomain.family;
    LengthPreserving res;
    for (BlurId h : stratum_zero_blurs(c)) {
        Point x = Point::blur_tail({}, h);
        Glyph g = output_at(c, x, 0);
        if (!g.is_blur) {
            res.verdict = Tri::Fails;
            res.witness = point_text(x, df) + " lies in L_0 but maps to " + glyph_text(g, cf) + " ...";
            return res;
        }
    }
    if (c.has_absolute()) {
        // Coordinate n is not decided by sigma^n x alone, so compare whole strata.
        Sampler s(c.domain, seed);
        for (int k = 0; k < 400; ++k) {
            Point x = s.random_point();
            size_t horizon = x.head().size() + x.cycle().size() + c.window() + 2;
            std::vector<Glyph> out;
            try {
                out = apply_code(c, x, horizon).coords;
            } catch (const Error&) {
                continue;
            }
            std::optional<size_t> first;
            for (size_t n = 0; n < out.size() && !first; ++n)
                if (out[n].is_blur) first = n;
            if (first != x.stratum()) {
                res.verdict = Tri::Fails;
                res.witness = point_text(x, df) + " maps to " + glyph_text(out[0], cf) + " ... with the first blur at " +
                              (first ? std::to_string(*first) : std::string("no coordinate"));
                return res;
            }
        }
        res.verdict = Tri::Unknown;
        res.witness = "the code reads fixed coordinates; no witness found";
        return res;
    }
    // Points outside L_0 start with a symbol; only an emitted blur can move them into L_0.
    bool structural = true;
    for (const CodeRule& r : c.rules)
        if (r.action.kind == Action::Kind::EmitBlur)
            for (const Clause& cl : r.when.clauses)
                if (!clause_needs_blur_at_zero(cl)) structural = false;
    if (structural) {
        res.verdict = Tri::Holds;
        return res;
    }
    Sampler s(c.domain, seed);
    for (int k = 0; k < 400; ++k) {
        Point x = k % 2 ? s.random_periodic() : s.random_point();
        if (x.at(0).is_blur) continue;
        Glyph g = output_at(c, x, 0);
        if (g.is_blur) {
            res.verdict = Tri::Fails;
            res.witness = point_text(x, df) + " lies outside L_0 but maps to " + glyph_text(g, cf) + " ...";
            return res;
        }
    }
    res.verdict = Tri::Unknown;
    res.witness = "a blur-emitting rule may fire on a symbol at coordinate 0; no witness found";
    return res;
}

std::vector<ConditionVerdict> chl_condition_report(const Code& c) {
    const Presentation& d = c.domain;
    const BlurFamily& df = d.family;
    const BlurFamily& cf = c.codomain.family;
    size_t m = c.window() - 1;
    std::vector<ConditionVerdict> out;

    // i: C_a open for symbols a. Trouble can only come from points with a blur
    // among the inspected coordinates: every neighbourhood of alpha.~H~H...
    // contains alpha.h... for all but finitely many h in H.
    {
        ConditionVerdict v{"i", Tri::Unknown, ""};
        std::vector<Word> heads{{}};
        for (size_t len = 1; len <= m; ++len) {
            std::vector<Word> more;
            for (const Word& w : heads) {
                if (w.size() != len - 1) continue;
                for (Symbol s : enumerate(follower_of_word(d, w), 4, df)) {
                    Word nw = w;
                    nw.push_back(s);
                    more.push_back(nw);
                }
            }
            heads.insert(heads.end(), more.begin(), more.end());
        }
        for (const Word& alpha : heads) {
            if (v.verdict == Tri::Fails) break;
            ActiveBlurs act = blurs_meeting(follower_of_word(d, alpha), df);
            std::vector<BlurId> hs = act.listed;
            if (act.param_from) hs.push_back(BlurId{-1, *act.param_from});
            for (BlurId h : hs) {
                Point x = Point::blur_tail(alpha, h);
                Glyph a = output_at(c, x, 0);
                if (a.is_blur) continue;
                auto probes = tail_probes(d, alpha, h);
                size_t miss = 0;
                std::string example;
                for (Symbol s : probes) {
                    Word w = alpha;
                    w.push_back(s);
                    Point y = extend_to_point(d, w);
                    Glyph b = output_at(c, y, 0);
                    if (b != a) {
                        if (example.empty()) example = point_text(y, df) + " maps to " + glyph_text(b, cf);
                        ++miss;
                    }
                }
                if (!probes.empty() && miss == probes.size()) {
                    v.verdict = Tri::Fails;
                    v.detail = point_text(x, df) + " is in C_" + glyph_text(a, cf) +
                               " but no neighbourhood of it is; e.g. " + example;
                    break;
                }
            }
        }
        if (v.verdict != Tri::Fails) {
            bool shallow = m == 0;
            for (const CodeRule& r : c.rules)
                if (r.action.kind == Action::Kind::EmitSymbol)
                    for (const Clause& cl : r.when.clauses)
                        if (!clause_needs_symbol_at_zero(cl)) shallow = false;
            if (shallow) {
                v.verdict = Tri::Holds;
                v.detail = "every symbol output depends on a symbol at coordinate 0 only";
            } else {
                v.detail = "no probe left a symbol class; openness not proven";
            }
        }
        out.push_back(v);
    }

    // ii: blur fixed points sent to blur fixed points.
    {
        ConditionVerdict va{"ii.a", Tri::Holds, ""}, vb{"ii.b", Tri::Holds, ""};
        std::vector<std::pair<BlurId, BlurId>> pairs;
        for (BlurId h : stratum_zero_blurs(c)) {
            Glyph g = output_at(c, Point::blur_tail({}, h), 0);
            if (g.is_blur) pairs.emplace_back(h, g.blur);
        }
        if (pairs.empty()) {
            va.detail = vb.detail = "vacuous: no blur fixed point maps to a blur fixed point";
        } else if (m > 0) {
            va.verdict = vb.verdict = Tri::Unknown;
            va.detail = vb.detail = "rules inspect coordinates beyond 0";
        } else {
            Scope sc = code_scope(c);
            std::vector<std::string> fs;
            for (auto [h, g] : pairs) {
                std::string hg = "~" + df.label(h) + " -> ~" + cf.label(g);
                // bad(col): symbols of H in col that do not land in G-bar.
                auto region = [&](size_t r, uint64_t col) {
                    IndexSet before = IndexSet::none();
                    for (size_t q = 0; q < r; ++q) before = before | rule_region(c, q, col);
                    return (rule_region(c, r, col) - before) & df.slice(h, col) & slice(d.letters, col, df);
                };
                auto bad = [&](uint64_t col) {
                    IndexSet acc = IndexSet::none();
                    for (size_t r = 0; r < c.rules.size(); ++r) {
                        const Action& a = c.rules[r].action;
                        IndexSet reg = region(r, col);
                        switch (a.kind) {
                            case Action::Kind::EmitSymbol:
                                if (!cf.contains(g, a.sym)) acc = acc | reg;
                                break;
                            case Action::Kind::EmitBlur:
                                if (a.blur != g) acc = acc | reg;
                                break;
                            case Action::Kind::Transform:
                                acc = acc | (reg - transform_preimage(c, a, g, col));
                                break;
                        }
                    }
                    return acc;
                };
                if (slices_infinite(sc, bad)) {
                    va.verdict = Tri::Fails;
                    va.detail = hg + ": infinitely many h leave G-bar (" + slices_witness(sc, bad) + ")";
                } else if (va.verdict == Tri::Holds) {
                    auto f = slices_elements(sc, bad);
                    std::string ft = "∅";
                    if (!f.empty()) {
                        ft = "{";
                        for (size_t k = 0; k < f.size(); ++k) ft += (k ? ", " : "") + to_string(f[k]);
                        ft += "}";
                    }
                    fs.push_back(hg + " with F = " + ft);
                }
                for (size_t r = 0; r < c.rules.size() && vb.verdict == Tri::Holds; ++r) {
                    const Action& a = c.rules[r].action;
                    bool collapse = (a.kind == Action::Kind::EmitSymbol && cf.contains(g, a.sym)) ||
                                    (a.kind == Action::Kind::Transform && !a.by_code && a.idx.a == 0);
                    if (!collapse) continue;
                    auto hit = [&](uint64_t col) {
                        IndexSet reg = region(r, col);
                        return a.kind == Action::Kind::Transform ? reg & transform_preimage(c, a, g, col) : reg;
                    };
                    if (slices_infinite(sc, hit)) {
                        vb.verdict = Tri::Fails;
                        vb.detail = hg + ": rule on line " + std::to_string(c.rules[r].line) +
                                    " sends infinitely many h to one symbol of G (" + slices_witness(sc, hit) + ")";
                    }
                }
            }
            if (va.verdict == Tri::Holds) {
                for (size_t k = 0; k < fs.size(); ++k) va.detail += (k ? "; " : "") + fs[k];
            }
            if (vb.verdict == Tri::Holds) vb.detail = "every symbol of G has finitely many preimages in H";
        }
        out.push_back(va);
        out.push_back(vb);
    }

    // iii: blur fixed points sent into the full shift.
    {
        ConditionVerdict v{"iii", Tri::Holds, "vacuous: no blur fixed point maps to a symbol sequence"};
        bool any = false, undecided = false;
        for (BlurId h : stratum_zero_blurs(c)) {
            Glyph dglyph = output_at(c, Point::blur_tail({}, h), 0);
            if (dglyph.is_blur) continue;
            any = true;
            auto probes = tail_probes(d, {}, h);
            size_t miss = 0;
            std::string example;
            for (Symbol s : probes) {
                Point y = extend_to_point(d, Word{s});
                for (size_t i = 0; i <= kHorizonM; ++i) {
                    Glyph b = output_at(c, y, i);
                    if (b != dglyph) {
                        if (example.empty())
                            example = "sigma^" + std::to_string(i) + "(" + point_text(y, df) + ") is not in C_" +
                                      glyph_text(dglyph, cf);
                        ++miss;
                        break;
                    }
                }
            }
            if (!probes.empty() && miss == probes.size()) {
                v.verdict = Tri::Fails;
                v.detail = "~" + df.label(h) + " maps to " + glyph_text(dglyph, cf) + "^ω but with M = " +
                           std::to_string(kHorizonM) + ": " + example;
                break;
            }
            undecided = true;
        }
        if (v.verdict != Tri::Fails && any && undecided) {
            v.verdict = Tri::Unknown;
            v.detail = "no counterexample among probed neighbourhoods";
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace blurshift
