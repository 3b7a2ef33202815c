#include "blurshift/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "blurshift/shift.hpp"

namespace blurshift {

namespace {

constexpr uint64_t kSampleIndices = 10;

bool has_tail(const SymbolSet& s) {
    return std::any_of(s.terms.begin(), s.terms.end(), [](const Term& t) { return t.kind == Term::Kind::Tail; });
}

std::vector<uint64_t> scope_columns(const Scope& s) {
    std::vector<uint64_t> cols = s.cols;
    if (s.rep) cols.push_back(*s.rep);
    return cols;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

bool LabeledGraph::carries(const EdgeSchema& e, const Glyph& g) const {
    if (e.is_blur) return g.is_blur && g.blur == e.blur;
    if (g.is_blur) return false;
    const GraphVertex& src = vertices[e.from];
    if (src.is_blur) return false;
    if (e.column && g.sym.col != *e.column) return false;
    if (!source.is_letter(g.sym) || !member(g.sym, src.set, source.family)) return false;
    return source.rule_for(g.sym) == e.rule;
}

LabeledGraph build_blur_graph(const Presentation& p) {
    LabeledGraph g;
    g.source = p;
    const BlurFamily& f = p.family;
    Scope sc = p.scope();
    std::vector<uint64_t> cols = scope_columns(sc);

    // Instantiated followers, per rule and (for templates) per input column.
    struct Target {
        size_t rule;
        std::optional<uint64_t> column;
        size_t vertex;
    };
    std::vector<Target> targets;
    std::map<std::string, size_t> by_text;
    for (size_t r = 0; r < p.rules.size(); ++r) {
        const Rule& rule = p.rules[r];
        if (has_tail(rule.follower))
            throw Error("ParametricFollowerUnsupported", "rule " + rule.pattern.text() + " has an index-dependent follower");
        bool tmpl = rule.follower.is_template();
        if (tmpl && !f.alphabet.finite())
            throw Error("ParametricFollowerUnsupported",
                        "rule " + rule.pattern.text() + " has a column template over an infinite alphabet");
        auto add = [&](std::optional<uint64_t> column, SymbolSet set) {
            std::string text = set.text();
            auto it = by_text.find(text);
            size_t v;
            if (it == by_text.end()) {
                v = g.vertices.size();
                by_text.emplace(text, v);
                g.vertices.push_back(GraphVertex{false, std::move(set), {}, text});
            } else {
                v = it->second;
            }
            targets.push_back(Target{r, column, v});
        };
        if (tmpl) {
            for (uint64_t c : cols) {
                IndexSet d = p.domain(r, c);
                if (d.empty()) continue;
                add(c, rule.follower.instantiate(Symbol{c, *d.next(0)}));
            }
        } else {
            bool used = std::any_of(cols.begin(), cols.end(), [&](uint64_t c) { return !p.domain(r, c).empty(); });
            if (used) add(std::nullopt, rule.follower);
        }
    }

    ActiveBlurs active = active_blurs(p);
    if (active.infinite())
        throw Error("InfiniteGraph", "infinitely many blurs meet the letters: " + active.text(f));
    size_t first_blur = g.vertices.size();
    for (BlurId h : active.listed) g.vertices.push_back(GraphVertex{true, {}, h, "~" + f.label(h)});

    for (size_t v = 0; v < first_blur; ++v) {
        const SymbolSet& s = g.vertices[v].set;
        for (const Target& t : targets) {
            auto hit = [&](uint64_t c) {
                if (t.column && c != *t.column) return IndexSet::none();
                return slice(s, c, f) & p.domain(t.rule, c);
            };
            if (slices_empty(sc, hit)) continue;
            auto rest = [&](uint64_t c) {
                IndexSet mine = slice(s, c, f) & slice(p.letters, c, f);
                return mine - hit(c);
            };
            std::string label = s.text();
            if (!slices_empty(sc, rest)) {
                if (t.column)
                    label += " & col " + std::to_string(*t.column);
                else
                    label += " & " + p.rules[t.rule].pattern.text();
            }
            g.edges.push_back(EdgeSchema{v, t.vertex, false, {}, t.rule, t.column, label});
        }
        for (size_t b = first_blur; b < g.vertices.size(); ++b) {
            BlurId h = g.vertices[b].blur;
            if (blur_intersection_infinite(s, h, f))
                g.edges.push_back(EdgeSchema{v, b, true, h, 0, std::nullopt, g.vertices[b].label});
        }
    }
    for (size_t b = first_blur; b < g.vertices.size(); ++b)
        g.edges.push_back(EdgeSchema{b, b, true, g.vertices[b].blur, 0, std::nullopt, g.vertices[b].label});
    return g;
}

uint64_t glyph_key(const Glyph& g, const BlurFamily& f) {
    return g.is_blur ? 2 * f.blurcode(g.blur) + 1 : 2 * code(g.sym);
}

std::vector<Glyph> sample_alphabet(const Presentation& p) {
    const BlurFamily& f = p.family;
    std::vector<Glyph> out;
    std::vector<uint64_t> cols = scope_columns(p.scope());
    for (uint64_t c : cols)
        for (uint64_t i = 0; i < kSampleIndices; ++i) out.push_back(Glyph::of(Symbol{c, i}));
    for (BlurId h : f.named_ids()) out.push_back(Glyph::of(h));
    if (f.param)
        for (uint64_t c : cols)
            if (c >= f.param->t0) out.push_back(Glyph::of(BlurId{-1, c}));
    std::sort(out.begin(), out.end(),
              [&](const Glyph& a, const Glyph& b) { return glyph_key(a, f) < glyph_key(b, f); });
    return out;
}

namespace {

// Depth-first search over the sample alphabet; `step` maps a state and a glyph
// to the next state, or nullopt when the extended word is rejected.
template <class State>
std::vector<GlyphWord> sampled_words(const std::vector<Glyph>& alphabet, size_t n, size_t k, State start,
                                     const std::function<std::optional<State>(const State&, const GlyphWord&,
                                                                              const Glyph&)>& step) {
    std::vector<GlyphWord> out;
    GlyphWord w;
    std::function<void(const State&)> go = [&](const State& s) {
        if (out.size() >= k) return;
        if (w.size() == n) {
            out.push_back(w);
            return;
        }
        for (const Glyph& a : alphabet) {
            auto next = step(s, w, a);
            if (!next) continue;
            w.push_back(a);
            go(*next);
            w.pop_back();
            if (out.size() >= k) return;
        }
    };
    go(start);
    return out;
}

}  // namespace

std::vector<GlyphWord> graph_language(const LabeledGraph& g, size_t n, size_t k) {
    using State = std::vector<size_t>;  // vertices where some walk reading w can stand
    State start;
    for (size_t v = 0; v < g.vertices.size(); ++v) start.push_back(v);
    auto step = [&](const State& s, const GlyphWord&, const Glyph& a) -> std::optional<State> {
        std::set<size_t> next;
        for (const EdgeSchema& e : g.edges)
            if (std::binary_search(s.begin(), s.end(), e.from) && g.carries(e, a)) next.insert(e.to);
        if (next.empty()) return std::nullopt;
        return State(next.begin(), next.end());
    };
    return sampled_words<State>(sample_alphabet(g.source), n, k, start, step);
}

std::vector<GlyphWord> shift_language(const Presentation& p, size_t n, size_t k) {
    // Windows of points of the blur shift: a symbol word of the language, or
    // alpha followed by copies of ~H where alpha.~H~H... is a point of it.
    auto step = [&](const int&, const GlyphWord& w, const Glyph& a) -> std::optional<int> {
        bool blurred = !w.empty() && w.back().is_blur;
        if (blurred) return a == w.back() ? std::optional<int>(0) : std::nullopt;
        Word alpha;
        for (const Glyph& x : w) alpha.push_back(x.sym);
        if (a.is_blur) {
            if (!sigma_member(p, Point::blur_tail(alpha, a.blur)).member) return std::nullopt;
            return 0;
        }
        alpha.push_back(a.sym);
        return in_language(p, alpha) ? std::optional<int>(0) : std::nullopt;
    };
    return sampled_words<int>(sample_alphabet(p), n, k, 0, step);
}

std::string glyph_word_text(const GlyphWord& w, const BlurFamily& f) {
    if (w.empty()) return "ε";
    std::string out;
    for (size_t j = 0; j < w.size(); ++j) {
        if (j) out += ' ';
        out += glyph_text(w[j], f);
    }
    return out;
}

std::string dot_export(const LabeledGraph& g) {
    auto id = [&](size_t v) {
        size_t plain = 0, blurs = 0;
        for (size_t u = 0; u < v; ++u) (g.vertices[u].is_blur ? blurs : plain)++;
        return g.vertices[v].is_blur ? "b" + std::to_string(blurs) : "v" + std::to_string(plain);
    };
    std::string out = "digraph blurshift {\n";
    if (!g.vertices.empty()) out += "  rankdir=LR;\n";
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        const GraphVertex& x = g.vertices[v];
        out += "  " + id(v) + " [label=\"" + dot_escape(x.label) + "\", ";
        out += x.is_blur ? "shape=doublecircle, style=filled, fillcolor=lightgray];\n" : "shape=box];\n";
    }
    for (const EdgeSchema& e : g.edges) {
        out += "  " + id(e.from) + " -> " + id(e.to) + " [label=\"" + dot_escape(e.label) + "\"";
        if (e.is_blur) out += ", style=dashed";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace blurshift
