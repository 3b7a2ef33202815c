#include "blurshift/shift.hpp"

#include <algorithm>

namespace blurshift {

namespace {

std::string bracket(const Word& w) { return "[" + to_string(w) + "]"; }

std::vector<BlurId> all_listed(const ActiveBlurs& a) { return a.listed; }

}  // namespace

bool in_language(const Presentation& p, const Word& w) {
    for (size_t k = 0; k < w.size(); ++k) {
        if (!p.is_letter(w[k])) return false;
        if (k + 1 < w.size()) {
            if (!p.rule_for(w[k])) return false;
            if (!member(w[k + 1], p.follower(w[k]), p.family)) return false;
        }
    }
    return true;
}

SymbolSet follower_of_word(const Presentation& p, const Word& w) {
    if (w.empty()) return p.letters;
    if (!in_language(p, w)) throw Error("NotInLanguage", bracket(w) + " is not in the language");
    return p.follower(w.back());
}

Membership sigma_member(const Presentation& p, const Point& x) {
    Membership m;
    if (!x.is_blur()) {
        Word w = x.head();
        w.insert(w.end(), x.cycle().begin(), x.cycle().end());
        w.push_back(x.cycle().front());
        m.member = in_language(p, w);
        if (!m.member) m.reason = "some consecutive pair is not allowed";
        return m;
    }
    m.stratum = x.head().size();
    if (!in_language(p, x.head())) {
        m.reason = bracket(x.head()) + " is not in the language";
        return m;
    }
    SymbolSet fol = follower_of_word(p, x.head());
    m.member = blur_intersection_infinite(fol, x.blur(), p.family);
    if (!m.member)
        m.reason = "infinite-extension fails: |F(" + bracket(x.head()) + ")∩" + p.family.label(x.blur()) + "| < ∞";
    return m;
}

std::string ActiveBlurs::text(const BlurFamily& f) const {
    std::string out;
    for (size_t k = 0; k < listed.size(); ++k) out += (k ? ", " : "") + f.label(listed[k]);
    if (param_from) out += (out.empty() ? "" : ", ") + f.param->label + "(t) for t>=" + std::to_string(*param_from);
    return out.empty() ? "none" : out;
}

ActiveBlurs blurs_meeting(const SymbolSet& e, const BlurFamily& f, uint64_t extra_bound) {
    ActiveBlurs a;
    for (BlurId h : f.named_ids())
        if (blur_intersection_infinite(e, h, f)) a.listed.push_back(h);
    if (!f.param) return a;
    Scope sc = scope_for(f, {&e}, {extra_bound});
    uint64_t t0 = f.param->t0;
    uint64_t limit = sc.rep ? std::max(*sc.rep, t0) : (f.alphabet.columns ? *f.alphabet.columns : t0);
    for (uint64_t t = t0; t < limit; ++t)
        if (f.alphabet.has(t) && blur_intersection_infinite(e, BlurId{-1, t}, f)) a.listed.push_back(BlurId{-1, t});
    if (sc.rep && blur_intersection_infinite(e, BlurId{-1, limit}, f)) {
        a.param_from = limit;
        while (!a.listed.empty() && a.listed.back().param() && a.listed.back().t + 1 == *a.param_from) {
            a.param_from = a.listed.back().t;
            a.listed.pop_back();
        }
    }
    return a;
}

ActiveBlurs active_blurs(const Presentation& p) { return blurs_meeting(p.letters, p.family, p.constant_bound()); }

Compactness is_compact(const Presentation& p) {
    Compactness c;
    c.active = active_blurs(p);
    if (c.active.infinite()) {
        c.compact = false;
        c.residual.finite = false;
        c.detail = "not compact (V_Λ is infinite: " + c.active.text(p.family) + ")";
        return c;
    }
    c.residual = coverage_residual(p.letters, all_listed(c.active), p.family);
    size_t nv = c.active.listed.size();
    std::string vtext = "V_Λ = " + std::to_string(nv) + (nv == 1 ? " blur" : " blurs");
    if (!c.residual.finite) {
        c.compact = false;
        c.detail = "not compact (" + vtext + ", uncovered letters: " + c.residual.witness + ")";
        return c;
    }
    c.compact = true;
    std::string res = "∅";
    if (!c.residual.symbols.empty()) {
        res = "{";
        for (size_t k = 0; k < c.residual.symbols.size(); ++k) res += (k ? ", " : "") + to_string(c.residual.symbols[k]);
        res += "}";
    }
    c.detail = "compact (" + vtext + ", residual = " + res + ")";
    return c;
}

std::optional<WitnessFamily> non_compactness_witness(const Presentation& p) {
    Compactness c = is_compact(p);
    if (c.compact) return std::nullopt;
    WitnessFamily w;
    if (c.active.infinite()) {
        w.kind = WitnessFamily::Kind::DistinctBlurs;
        w.description = "x^l = (" + p.family.param->label + "(" + std::to_string(*c.active.param_from) +
                        "+l) repeated), l = 0, 1, 2, ...";
    } else {
        w.kind = WitnessFamily::Kind::UncoveredLetters;
        w.description = "x^l = (w_l ...), w_l the l-th letter outside every active blur (" + c.residual.witness +
                        "), extended by least followers";
    }
    return w;
}

std::vector<Point> witness_members(const Presentation& p, const WitnessFamily& w, size_t n) {
    std::vector<Point> out;
    ActiveBlurs a = active_blurs(p);
    if (w.kind == WitnessFamily::Kind::DistinctBlurs) {
        for (size_t l = 0; l < n; ++l) out.push_back(Point::blur_tail({}, BlurId{-1, *a.param_from + l}));
        return out;
    }
    size_t want = n;
    while (out.size() < n) {
        out.clear();
        for (Symbol s : enumerate(p.letters, want, p.family)) {
            bool covered = false;
            for (BlurId h : a.listed) covered = covered || p.family.contains(h, s);
            if (!covered) out.push_back(extend_to_point(p, {s}));
            if (out.size() == n) break;
        }
        want *= 2;
        if (want > (1u << 22)) throw CapExceeded("could not find enough uncovered letters");
    }
    return out;
}

std::string verdict_text(LocalCompactness::Verdict v) {
    switch (v) {
        case LocalCompactness::Verdict::YesCovered: return "yes (finite cover check)";
        case LocalCompactness::Verdict::YesSufficient: return "yes (sufficient check)";
        case LocalCompactness::Verdict::Unknown: return "unknown";
    }
    return "";
}

LocalCompactness is_locally_compact(const Presentation& p) {
    LocalCompactness lc;
    uint64_t bound = p.constant_bound();
    std::vector<std::string> why(p.rules.size());
    for (uint64_t c : p.input_columns()) {
        for (size_t r = 0; r < p.rules.size(); ++r) {
            if (!why[r].empty()) continue;
            auto i = p.domain(r, c).next(0);
            if (!i) continue;
            Symbol s{c, *i};
            SymbolSet inst = p.rules[r].follower.instantiate(s);
            ActiveBlurs cand = blurs_meeting(inst, p.family, std::max(bound, c));
            if (cand.infinite()) {
                why[r] = "follower of " + to_string(s) + " meets infinitely many blurs";
                continue;
            }
            Residual res = coverage_residual(inst, cand.listed, p.family);
            if (!res.finite) why[r] = "follower of " + to_string(s) + " leaves " + res.witness + " uncovered";
        }
    }
    for (size_t r = 0; r < p.rules.size(); ++r)
        if (!why[r].empty()) lc.bad_rules.push_back(r);
    if (lc.bad_rules.empty()) {
        lc.verdict = LocalCompactness::Verdict::YesCovered;
        lc.detail = "every follower is covered by finitely many blurs up to finitely many letters";
        if (is_compact(p).compact) lc.detail += "; the letters are too, so the shift is compact";
        return lc;
    }
    RuleGraph g = rule_graph(p);
    std::vector<bool> recurrent = g.recurrent_reach();
    for (size_t r : lc.bad_rules) {
        if (recurrent[r]) {
            lc.verdict = LocalCompactness::Verdict::Unknown;
            lc.detail = "rule " + std::to_string(r + 1) + " (" + p.rules[r].pattern.text() + ") is reachable from a cycle: " + why[r];
            return lc;
        }
    }
    lc.verdict = LocalCompactness::Verdict::YesSufficient;
    lc.detail = "uncovered followers occur only on transient rules";
    return lc;
}

CountabilityReport countability_metrizability_report(const Presentation& p) {
    CountabilityReport r;
    r.compact = is_compact(p).compact;
    r.note = "countable alphabet and countably many blurs";
    if (r.compact) r.note += "; compact, so the five equivalent conditions hold together";
    return r;
}

std::string verdict_text(BlurContinuity::Verdict v) {
    switch (v) {
        case BlurContinuity::Verdict::Yes: return "yes";
        case BlurContinuity::Verdict::No: return "no";
        case BlurContinuity::Verdict::Unknown: return "unknown";
    }
    return "";
}

BlurContinuity shift_continuity_at(const Presentation& p, BlurId h) {
    const BlurFamily& f = p.family;
    BlurContinuity out;
    out.blur = f.label(h);
    if (!blur_intersection_infinite(p.letters, h, f))
        throw Error("BlurPointNotInShift", "the fixed point of " + out.blur + " is not in the blur shift");
    auto c0 = f.base_column(h);
    if (!c0) {
        out.detail = "diagonal blurs are not analysed";
        return out;
    }
    // Cofinitely many letters of H sit in its base column and share one rule.
    std::optional<size_t> eventual;
    for (size_t r = 0; r < p.rules.size(); ++r)
        if ((p.domain(r, *c0) & f.slice(h, *c0)).infinite()) {
            eventual = r;
            break;
        }
    if (!eventual) throw Error("InternalError", "no eventual rule on column " + std::to_string(*c0));
    const SymbolSet& tmpl = p.rules[*eventual].follower;
    SymbolSet fixed, moving;  // index-independent part, tails that move with i
    for (const auto& t : tmpl.terms) (t.kind == Term::Kind::Tail && t.from.a > 0 ? moving : fixed).terms.push_back(t);
    Symbol probe{*c0, 0};
    uint64_t bound = std::max(p.constant_bound(), *c0);
    std::string rule_txt = "rule " + std::to_string(*eventual + 1) + " (" + p.rules[*eventual].pattern.text() + ")";
    if (!fixed.terms.empty()) {
        SymbolSet inst = fixed.instantiate(probe);
        Scope sc = scope_for(f, {&inst}, {bound});
        SliceFn escape = [&](uint64_t c) { return slice(inst, c, f) - f.slice(h, c); };
        if (!slices_empty(sc, escape)) {
            out.verdict = BlurContinuity::Verdict::No;
            std::string w = slices_witness(sc, escape);
            if (w.empty())
                for (Symbol s : slices_elements(sc, escape)) {
                    w = to_string(s);
                    break;
                }
            out.detail = "F(" + out.blur + "∖F) ⊄ " + out.blur + " for every finite F: " + rule_txt + " allows " + w;
            return out;
        }
    }
    for (const auto& t : moving.terms) {
        int64_t col = t.col.at(static_cast<int64_t>(*c0));
        if (col < 0 || !f.alphabet.has(static_cast<uint64_t>(col))) continue;
        IndexSet missing = IndexSet::all() - f.slice(h, static_cast<uint64_t>(col));
        if (missing.infinite()) {
            out.verdict = BlurContinuity::Verdict::No;
            out.detail = "F(" + out.blur + "∖F) ⊄ " + out.blur + " for every finite F: " + rule_txt +
                         " allows tails of col " + std::to_string(col) + " outside the blur";
            return out;
        }
    }
    if (!fixed.terms.empty()) {
        SymbolSet inst = fixed.instantiate(probe);
        Scope sc = scope_for(f, {&inst}, {bound});
        SliceFn common = [&](uint64_t c) { return slice(inst, c, f) & f.slice(h, c); };
        if (!slices_empty(sc, common)) {
            std::string g;
            for (uint64_t c : sc.cols)
                if (auto i = common(c).next(0)) {
                    g = to_string(Symbol{c, *i});
                    break;
                }
            if (g.empty() && sc.rep) g = "col " + std::to_string(*sc.rep);
            out.verdict = BlurContinuity::Verdict::No;
            out.detail = out.blur + "∩P(" + g + ") is infinite: " + rule_txt + " allows " + g + " after every large letter of " + out.blur;
            return out;
        }
    }
    out.verdict = BlurContinuity::Verdict::Yes;
    out.detail = "F(" + out.blur + "∖F) ⊆ " + out.blur + " for a finite F, and every g has finitely many predecessors in " + out.blur;
    return out;
}

ContinuityReport shift_continuity_report(const Presentation& p) {
    ContinuityReport rep;
    ActiveBlurs a = active_blurs(p);
    for (BlurId h : a.listed) rep.at_blurs.push_back(shift_continuity_at(p, h));
    if (a.param_from) {
        BlurContinuity v = shift_continuity_at(p, BlurId{-1, *a.param_from});
        std::string lbl = p.family.param->label + "(t) for t>=" + std::to_string(*a.param_from);
        std::string probe = p.family.label(BlurId{-1, *a.param_from});
        size_t pos;
        while ((pos = v.detail.find(probe)) != std::string::npos) v.detail.replace(pos, probe.size(), "H(t)");
        v.blur = lbl;
        rep.at_blurs.push_back(v);
    }
    return rep;
}

Point extend_to_point(const Presentation& p, const Word& alpha) {
    Word w = alpha;
    size_t start = alpha.empty() ? 0 : alpha.size() - 1;
    if (w.empty()) {
        auto first = enumerate(p.letters, 1, p.family);
        if (first.empty()) throw Error("EmptyLetters", "no letters");
        w.push_back(first[0]);
    }
    for (int step = 0; step < 256; ++step) {
        auto nxt = enumerate(p.follower(w.back()), 1, p.family);
        if (nxt.empty()) break;
        for (size_t j = start; j < w.size(); ++j)
            if (w[j] == nxt[0]) return Point::periodic(Word(w.begin(), w.begin() + j), Word(w.begin() + j, w.end()));
        w.push_back(nxt[0]);
    }
    SymbolSet fol = follower_of_word(p, alpha);
    ActiveBlurs cand = blurs_meeting(fol, p.family, p.constant_bound());
    if (!cand.listed.empty()) return Point::blur_tail(alpha, cand.listed.front());
    if (cand.param_from) return Point::blur_tail(alpha, BlurId{-1, *cand.param_from});
    throw Error("NoExtension", bracket(alpha) + " has no representable extension");
}

}  // namespace blurshift
