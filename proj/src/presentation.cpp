#include "blurshift/presentation.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "blurshift/lexer.hpp"

namespace blurshift {

bool RulePattern::matches(Symbol s) const { return slice(s.col).contains(s.idx); }

IndexSet RulePattern::slice(uint64_t c) const {
    auto col_ok = [&] { return col.var || col.off == static_cast<int64_t>(c); };
    int64_t k = bound.at(static_cast<int64_t>(c));
    switch (kind) {
        case Kind::Exact:
            return sym.col == c ? IndexSet::point(sym.idx) : IndexSet::none();
        case Kind::Column:
            return col_ok() ? IndexSet::all() : IndexSet::none();
        case Kind::IndexAtMost:
            if (!col_ok() || k < 0) return IndexSet::none();
            return IndexSet::range(0, static_cast<uint64_t>(k));
        case Kind::IndexAbove:
            if (!col_ok()) return IndexSet::none();
            return IndexSet::from(k < 0 ? 0 : static_cast<uint64_t>(k) + 1);
        case Kind::Default:
            return IndexSet::all();
    }
    return IndexSet::none();
}

std::string RulePattern::text() const {
    switch (kind) {
        case Kind::Exact: return to_string(sym);
        case Kind::Column: return "col " + colexpr_text(col);
        case Kind::IndexAtMost: return "col " + colexpr_text(col) + " idx <= " + colexpr_text(bound);
        case Kind::IndexAbove: return "col " + colexpr_text(col) + " idx > " + colexpr_text(bound);
        case Kind::Default: return "default";
    }
    return "";
}

uint64_t RulePattern::constant_bound() const {
    auto mag = [](int64_t v) { return static_cast<uint64_t>(v < 0 ? -v : v); };
    switch (kind) {
        case Kind::Exact: return sym.col;
        case Kind::Default: return 0;
        default: return std::max(mag(col.off), mag(bound.off));
    }
}

namespace {

RulePattern parse_pattern(TokenStream& ts) {
    RulePattern p;
    if (ts.accept("default")) {
        p.kind = RulePattern::Kind::Default;
    } else if (ts.peek().kind == Token::Kind::Sym) {
        p.kind = RulePattern::Kind::Exact;
        p.sym = ts.expect_symbol();
    } else if (ts.accept("col")) {
        p.kind = RulePattern::Kind::Column;
        p.col = ts.parse_colexpr();
        if (ts.accept("idx")) {
            if (ts.accept("<=")) p.kind = RulePattern::Kind::IndexAtMost;
            else if (ts.accept(">")) p.kind = RulePattern::Kind::IndexAbove;
            else ts.fail("expected '<=' or '>'");
            p.bound = ts.parse_colexpr();
            if (p.bound.var && !p.col.var) ts.fail("index bound may mention t only when the column is t");
        }
    } else {
        ts.fail("expected a rule pattern (symbol, col, or default)");
    }
    return p;
}

}  // namespace

Presentation Presentation::parse(const std::string& text) {
    Presentation p;
    bool have_letters = false, have_alphabet = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        TokenStream ts(line, lineno);
        if (ts.at_end()) continue;
        std::string kw = ts.expect_ident();
        if (kw == "alphabet") {
            if (have_alphabet) ts.fail("alphabet declared twice");
            ts.expect("=");
            ts.expect("columns");
            if (ts.accept("all")) p.family.alphabet.columns.reset();
            else p.family.alphabet.columns = ts.expect_uint();
            if (p.family.alphabet.columns && *p.family.alphabet.columns == 0) ts.fail("alphabet needs a column");
            have_alphabet = true;
        } else if (kw == "blur") {
            std::string label = ts.expect_ident();
            ts.expect("=");
            p.family.named.push_back(parse_blur_definition(label, ts));
        } else if (kw == "blurfam") {
            if (p.family.param) ts.fail("only one parametric family is supported");
            std::string label = ts.expect_ident();
            ts.expect("(");
            ts.expect("t");
            ts.expect(">=");
            uint64_t t0 = ts.expect_uint();
            ts.expect(")");
            ts.expect("=");
            p.family.param = parse_blurfam_definition(label, t0, ts);
        } else if (kw == "letters") {
            if (have_letters) ts.fail("letters declared twice");
            ts.expect("=");
            p.letters = SymbolSet::parse(ts);
            have_letters = true;
        } else if (kw == "rule") {
            Rule r;
            r.line = lineno;
            r.pattern = parse_pattern(ts);
            ts.expect("->");
            r.follower = SymbolSet::parse(ts);
            p.rules.push_back(std::move(r));
        } else {
            throw ParseError("unknown statement '" + kw + "'", lineno, 1);
        }
        ts.expect_end();
    }
    if (!have_letters) throw Error("MissingLetters", "presentation has no 'letters =' line");
    if (p.rules.empty()) throw Error("MissingRules", "presentation has no rules");
    return p;
}

Presentation Presentation::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Presentation::text() const {
    std::string out = "alphabet = " + family.alphabet.text() + "\n";
    for (size_t j = 0; j < family.named.size(); ++j)
        out += "blur " + family.named[j].label + " = " + family.definition_text(j) + "\n";
    if (family.param)
        out += "blurfam " + family.param->label + "(t>=" + std::to_string(family.param->t0) + ") = " + family.param_text() + "\n";
    out += "letters = " + letters.text() + "\n";
    for (const auto& r : rules) out += "rule " + r.pattern.text() + " -> " + r.follower.text() + "\n";
    return out;
}

uint64_t Presentation::constant_bound() const {
    uint64_t m = std::max(family.constant_bound(), letters.constant_bound());
    for (const auto& r : rules) m = std::max({m, r.pattern.constant_bound(), r.follower.constant_bound()});
    return m;
}

Scope Presentation::scope() const { return make_scope(family.alphabet, 2 * constant_bound() + 2); }

std::vector<uint64_t> Presentation::input_columns() const {
    Scope sc = scope();
    std::vector<uint64_t> out = sc.cols;
    if (sc.rep)
        for (uint64_t c = *sc.rep; c <= *sc.rep + constant_bound() + 1; ++c) out.push_back(c);
    return out;
}

bool Presentation::is_letter(Symbol s) const { return member(s, letters, family); }

std::optional<size_t> Presentation::rule_for(Symbol s) const {
    for (size_t r = 0; r < rules.size(); ++r)
        if (rules[r].pattern.matches(s)) return r;
    return std::nullopt;
}

IndexSet Presentation::domain(size_t r, uint64_t c) const {
    IndexSet d = rules[r].pattern.slice(c);
    for (size_t j = 0; j < r && !d.empty(); ++j) d = d - rules[j].pattern.slice(c);
    return d & slice(letters, c, family);
}

SymbolSet Presentation::follower(Symbol s) const {
    auto r = rule_for(s);
    if (!r) throw Error("NoRule", "no rule matches " + to_string(s));
    return rules[*r].follower.instantiate(s);
}

bool subset_of(const SymbolSet& a, const SymbolSet& b, const BlurFamily& f) {
    Scope sc = scope_for(f, {&a, &b});
    return slices_empty(sc, [&](uint64_t c) { return slice(a, c, f) - slice(b, c, f); });
}

namespace {

std::string rule_name(const Presentation& p, size_t r) {
    return "rule " + std::to_string(r + 1) + " (line " + std::to_string(p.rules[r].line) + ", " +
           p.rules[r].pattern.text() + ")";
}

}  // namespace

RuleGraph rule_graph(const Presentation& p) {
    size_t n = p.rules.size();
    RuleGraph g;
    g.live.assign(n, false);
    g.succ.assign(n, {});
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    uint64_t bound = p.constant_bound();
    for (uint64_t c : p.input_columns()) {
        for (size_t r = 0; r < n; ++r) {
            IndexSet dom = p.domain(r, c);
            auto i = dom.next(0);
            if (!i) continue;
            g.live[r] = true;
            SymbolSet inst = p.rules[r].follower.instantiate(Symbol{c, *i});
            Scope sc = scope_for(p.family, {&inst}, {bound, c});
            for (size_t q = 0; q < n; ++q) {
                if (edge[r][q]) continue;
                bool meets = !slices_empty(sc, [&](uint64_t col) { return slice(inst, col, p.family) & p.domain(q, col); });
                if (meets) edge[r][q] = true;
            }
        }
    }
    for (size_t r = 0; r < n; ++r)
        for (size_t q = 0; q < n; ++q)
            if (edge[r][q]) g.succ[r].push_back(q);
    return g;
}

std::vector<bool> RuleGraph::recurrent_reach() const {
    size_t n = succ.size();
    auto reach_from = [&](size_t s) {
        std::vector<bool> seen(n, false);
        std::vector<size_t> stack(succ[s].begin(), succ[s].end());
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            if (seen[v]) continue;
            seen[v] = true;
            for (size_t w : succ[v]) stack.push_back(w);
        }
        return seen;
    };
    std::vector<bool> out(n, false);
    for (size_t r = 0; r < n; ++r) {
        auto seen = reach_from(r);
        if (!seen[r]) continue;  // r is not on a cycle
        for (size_t q = 0; q < n; ++q)
            if (seen[q]) out[q] = true;
    }
    return out;
}

ValidationReport validate_presentation(const Presentation& p) {
    ValidationReport rep = validate_family(p.family);
    if (!rep.ok()) return rep;
    if (p.letters.is_template()) {
        rep.errors.push_back({"TemplateLetters", "letters may not mention t or i"});
        return rep;
    }
    try {
        Scope sc = p.scope();
        std::vector<uint64_t> cols = sc.cols;
        if (sc.rep) cols.push_back(*sc.rep);
        for (uint64_t c : cols) {
            IndexSet left = slice(p.letters, c, p.family);
            for (const auto& r : p.rules) left = left - r.pattern.slice(c);
            if (auto i = left.next(0))
                rep.errors.push_back({"UncoveredLetter", "no rule matches letter " + to_string(Symbol{c, *i})});
        }
        if (is_empty(p.letters, p.family)) rep.errors.push_back({"EmptyLetters", "the letter set is empty"});

        std::vector<bool> fires(p.rules.size(), false);
        std::vector<bool> reported(p.rules.size(), false);
        std::vector<uint64_t> inputs = p.input_columns();
        uint64_t bound = p.constant_bound();
        std::vector<SymbolSet> reached;
        for (uint64_t c : inputs) {
            for (size_t r = 0; r < p.rules.size(); ++r) {
                auto i = p.domain(r, c).next(0);
                if (!i) continue;
                fires[r] = true;
                Symbol s{c, *i};
                SymbolSet inst = p.rules[r].follower.instantiate(s);
                reached.push_back(inst);
                if (reported[r]) continue;
                if (is_empty(inst, p.family)) {
                    rep.errors.push_back({"SinkRule", rule_name(p, r) + " gives letter " + to_string(s) + " no follower"});
                    reported[r] = true;
                    continue;
                }
                Scope isc = scope_for(p.family, {&inst, &p.letters}, {bound, c});
                SliceFn outside = [&](uint64_t col) { return slice(inst, col, p.family) - slice(p.letters, col, p.family); };
                if (!slices_empty(isc, outside)) {
                    std::string w;
                    for (uint64_t col : isc.cols)
                        if (auto j = outside(col).next(0)) {
                            w = to_string(Symbol{col, *j});
                            break;
                        }
                    if (w.empty() && isc.rep) w = "column " + std::to_string(*isc.rep) + " and beyond";
                    rep.errors.push_back({"FollowerOutsideLetters",
                                          rule_name(p, r) + " allows " + w + " after " + to_string(s) + ", which is not a letter"});
                    reported[r] = true;
                }
            }
        }
        for (size_t r = 0; r < p.rules.size(); ++r)
            if (!fires[r]) rep.warnings.push_back({"UnusedRule", rule_name(p, r) + " never applies to a letter"});

        std::vector<std::string> orphans;
        for (uint64_t c : cols) {
            IndexSet left = slice(p.letters, c, p.family);
            for (const auto& s : reached) {
                if (left.empty()) break;
                left = left - slice(s, c, p.family);
            }
            if (left.infinite()) orphans.push_back("col " + std::to_string(c));
            else
                for (uint64_t i : left.elements(8)) orphans.push_back(to_string(Symbol{c, i}));
        }
        if (!orphans.empty()) {
            std::string msg = "letters that follow no letter:";
            for (size_t k = 0; k < orphans.size() && k < 8; ++k) msg += " " + orphans[k];
            if (orphans.size() > 8) msg += " ...";
            rep.warnings.push_back({"OrphanLetters", msg});
        }
    } catch (const Error& e) {
        rep.errors.push_back({e.code(), e.what()});
    }
    return rep;
}

}  // namespace blurshift
