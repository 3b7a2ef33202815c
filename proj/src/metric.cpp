#include "blurshift/metric.hpp"

#include <algorithm>

#include "blurshift/lexer.hpp"

namespace blurshift {

namespace {

Index sat_add(Index a, Index b) { return a > kIndexMax - b ? kIndexMax : a + b; }

Word prefix_word(const Point& x, size_t n) {
    Word w;
    for (size_t k = 0; k < n; ++k) w.push_back(x.at(k).sym);
    return w;
}

uint64_t sat_weight(Index w) { return w > UINT64_MAX ? UINT64_MAX : w.convert_to<uint64_t>(); }

}  // namespace

std::string index_text(Index v) { return v.str(); }

Index parse_index(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw Error("ParseError", "expected a non-negative integer, got '" + text + "'");
    Index v = 0;
    for (char c : text) {
        Index d = static_cast<unsigned>(c - '0');
        if (v > (kIndexMax - d) / 10) throw Error("ParseError", "integer too large: " + text);
        v = v * 10 + d;
    }
    return v;
}

std::string Dyadic::text() const { return exponent ? "2^-" + index_text(*exponent) : "0"; }

bool operator<(const Dyadic& a, const Dyadic& b) {
    if (!b.exponent) return false;
    if (!a.exponent) return true;
    return *a.exponent > *b.exponent;
}

bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }

Dyadic parse_dyadic(const std::string& text) {
    if (text == "0") return Dyadic::zero();
    if (text == "1") return Dyadic::pow2(0);
    if (text.rfind("2^-", 0) == 0) return Dyadic::pow2(parse_index(text.substr(3)));
    throw Error("ParseError", "expected 0, 1 or 2^-i, got '" + text + "'");
}

PrefixEnumeration::PrefixEnumeration(const BlurFamily& f, Index cap) : f_(f), cap_(cap) {
    const uint64_t n = kMaxWeight + 2;
    code_ok_.resize(n);
    blur_ok_.resize(n);
    for (uint64_t c = 0; c < n; ++c) {
        code_ok_[c] = f.alphabet.has(symbol_from_code(c).col);
        auto h = f.from_blurcode(c);
        blur_ok_[c] = h && (!h->param() || f.alphabet.has(h->t));
    }
    // seq_[r]: symbol sequences (empty included) with |s| + sum of codes = r.
    // blurseq_[r]: blur words of weight r.
    seq_.assign(n, 0);
    blurseq_.assign(n, 0);
    seq_[0] = 1;
    for (uint64_t r = 1; r < n; ++r) {
        Index s = 0, b = blur_ok_[r - 1] ? 1 : 0;
        for (uint64_t c = 0; c + 1 <= r; ++c) {
            if (!code_ok_[c]) continue;
            s = sat_add(s, seq_[r - 1 - c]);
            b = sat_add(b, blurseq_[r - 1 - c]);
        }
        seq_[r] = s;
        blurseq_[r] = b;
    }
    cum_.assign(n + 1, 0);
    for (uint64_t w = 0; w < n; ++w) cum_[w + 1] = sat_add(cum_[w], sat_add(words(w), blurseq_[w]));
}

bool PrefixEnumeration::valid_code(uint64_t c) const { return c < code_ok_.size() && code_ok_[c]; }
bool PrefixEnumeration::valid_blurcode(uint64_t b) const { return b < blur_ok_.size() && blur_ok_[b]; }
Index PrefixEnumeration::words(uint64_t w) const { return w == 0 ? 0 : seq_[w]; }
Index PrefixEnumeration::before(uint64_t w) const { return cum_[w]; }

uint64_t PrefixEnumeration::weight(const Prefix& p) const {
    Index w = p.word.size();
    for (Symbol s : p.word) w += code(s);
    if (p.blur) w += 1 + f_.blurcode(*p.blur);
    return sat_weight(w);
}

Index PrefixEnumeration::index_of(const Prefix& p) const {
    if (p.word.empty() && !p.blur) throw Error("NotAPrefix", "the empty word is not in the prefix set");
    for (Symbol s : p.word)
        if (!f_.alphabet.has(s.col)) throw Error("NotInAlphabet", to_string(s) + " is outside the alphabet");
    uint64_t w = weight(p);
    if (w > kMaxWeight) throw CapExceeded("prefix weight " + std::to_string(w) + " is beyond the enumeration table");
    Index rank = before(w);
    uint64_t rem = w;
    if (!p.blur) {
        for (Symbol s : p.word) {
            uint64_t a = code(s);
            for (uint64_t c = 0; c < a && c + 1 <= rem; ++c)
                if (code_ok_[c]) rank = sat_add(rank, seq_[rem - 1 - c]);
            rem -= 1 + a;
        }
    } else {
        rank = sat_add(rank, words(w));
        for (Symbol s : p.word) {
            uint64_t a = code(s);
            if (valid_blurcode(rem - 1)) rank = sat_add(rank, 1);
            for (uint64_t c = 0; c < a && c + 1 <= rem; ++c)
                if (code_ok_[c]) rank = sat_add(rank, blurseq_[rem - 1 - c]);
            rem -= 1 + a;
        }
    }
    rank = sat_add(rank, 1);
    if (rank == kIndexMax) throw CapExceeded("prefix index overflows 128 bits");
    if (rank > cap_) throw CapExceeded("prefix index " + index_text(rank) + " exceeds the cap " + index_text(cap_));
    return rank;
}

Prefix PrefixEnumeration::prefix_at(Index i) const {
    if (i == 0) throw Error("BadIndex", "prefix indices start at 1");
    if (i > cap_) throw CapExceeded("index exceeds the cap");
    uint64_t w = 0;
    while (w + 1 < cum_.size() && cum_[w + 1] < i) ++w;
    if (w + 1 >= cum_.size() || cum_[w + 1] == kIndexMax) throw CapExceeded("index beyond the enumeration table");
    Index j = i - cum_[w];
    Prefix p;
    uint64_t rem = w;
    if (j <= words(w)) {
        while (rem > 0) {
            for (uint64_t c = 0;; ++c) {
                if (!code_ok_[c]) continue;
                Index cnt = seq_[rem - 1 - c];
                if (j <= cnt) {
                    p.word.push_back(symbol_from_code(c));
                    rem -= 1 + c;
                    break;
                }
                j -= cnt;
            }
        }
        return p;
    }
    j -= words(w);
    while (true) {
        if (valid_blurcode(rem - 1)) {
            if (j == 1) {
                p.blur = f_.from_blurcode(rem - 1);
                return p;
            }
            j -= 1;
        }
        for (uint64_t c = 0;; ++c) {
            if (!code_ok_[c]) continue;
            Index cnt = blurseq_[rem - 1 - c];
            if (j <= cnt) {
                p.word.push_back(symbol_from_code(c));
                rem -= 1 + c;
                break;
            }
            j -= cnt;
        }
    }
}

Dyadic distance(const PrefixEnumeration& e, const Point& x, const Point& y) {
    auto k = first_difference(x, y);
    if (!k) return Dyadic::zero();
    const BlurFamily& f = e.family();
    Glyph a = x.at(*k), b = y.at(*k);
    Word common = prefix_word(x, *k);
    std::optional<Index> best;
    auto offer = [&](const Prefix& p) {
        Index i = e.index_of(p);
        if (!best || i < *best) best = i;
    };
    uint64_t word_weight = UINT64_MAX;
    for (const Glyph& g : {a, b}) {
        if (g.is_blur) continue;
        Prefix p{common, std::nullopt};
        p.word.push_back(g.sym);
        word_weight = std::min(word_weight, e.weight(p));
        offer(p);
    }
    // The blur word at k with the least blurcode telling the coordinates apart.
    uint64_t base = e.weight(Prefix{common, std::nullopt});
    if (a.is_blur && b.is_blur) {
        BlurId h = f.blurcode(a.blur) < f.blurcode(b.blur) ? a.blur : b.blur;
        offer(Prefix{common, h});
    } else {
        for (uint64_t bc = 0; base + 1 + bc <= std::min<uint64_t>(word_weight, PrefixEnumeration::kMaxWeight); ++bc) {
            auto h = f.from_blurcode(bc);
            if (!h || (h->param() && !f.alphabet.has(h->t))) continue;
            if (glyph_in_closure(a, *h, f) != glyph_in_closure(b, *h, f)) {
                offer(Prefix{common, *h});
                break;
            }
        }
    }
    if (!best) throw CapExceeded("no distinguishing prefix within the enumeration table");
    return Dyadic::pow2(*best);
}

bool ball_member(const PrefixEnumeration& e, const Point& center, const Dyadic& eps, const Point& y) {
    if (eps.is_zero()) throw Error("BadRadius", "radius must be positive");
    return distance(e, center, y) < eps;
}

Dyadic ball_in_cylinder(const PrefixEnumeration& e, const Point& x, const Cylinder& z) {
    const BlurFamily& f = e.family();
    if (!cylinder_member(z, x, f)) throw Error("PointNotInSet", "point is not in the cylinder");
    if (!z.blur) {
        if (z.word.empty()) return Dyadic::pow2(0);
        return Dyadic::pow2(e.index_of(Prefix{z.word, std::nullopt}));
    }
    Index k = e.index_of(Prefix{z.word, z.blur});
    for (Symbol h : z.excluded) {
        Prefix p{z.word, std::nullopt};
        p.word.push_back(h);
        k = std::max(k, e.index_of(p));
    }
    return Dyadic::pow2(k);
}

Cylinder cylinder_in_ball(const PrefixEnumeration& e, const Point& x, const Dyadic& eps) {
    if (eps.is_zero()) throw Error("BadRadius", "radius must be positive");
    const BlurFamily& f = e.family();
    Index ex = *eps.exponent;
    uint64_t wmax = ex == 0 ? 0 : e.weight(e.prefix_at(ex));
    if (!x.is_blur()) {
        size_t n = std::max<uint64_t>(wmax, 1);
        return Cylinder::plain(prefix_word(x, n));
    }
    const Word& alpha = x.head();
    BlurId h = x.blur();
    uint64_t base = e.weight(Prefix{alpha, std::nullopt}) + 1;  // weight of alpha.h minus code(h)
    std::vector<Symbol> excluded;
    if (wmax >= base) {
        for (Symbol s : enumerate_below(blur_symbols(h, f), wmax - base + 1, f)) {
            Prefix p{alpha, std::nullopt};
            p.word.push_back(s);
            if (e.index_of(p) <= ex) excluded.push_back(s);
        }
        for (uint64_t bc = 0; base + bc <= wmax; ++bc) {
            auto g = f.from_blurcode(bc);
            if (!g || *g == h || (g->param() && !f.alphabet.has(g->t))) continue;
            if (e.index_of(Prefix{alpha, *g}) > ex) continue;
            for (Symbol s : f.intersection(h, *g)) excluded.push_back(s);
        }
    }
    return Cylinder::blurred(alpha, h, excluded);
}

SymbolSet blur_symbols(BlurId h, const BlurFamily& f) {
    Term t;
    t.kind = Term::Kind::Blur;
    if (h.param()) {
        t.blur.name = f.param->label;
        t.blur.arg = ColExpr{false, static_cast<int64_t>(h.t)};
    } else {
        t.blur.name = f.label(h);
    }
    return SymbolSet{{t}};
}

SequenceFamily parse_sequence_family(const std::string& text, const BlurFamily& f) {
    TokenStream ts(text);
    SequenceFamily s;
    std::string kw = ts.expect_ident();
    if (kw == "approach") {
        s.kind = SequenceFamily::Kind::BlurApproach;
        while (ts.peek().kind == Token::Kind::Sym) s.alpha.push_back(ts.expect_symbol());
        ts.expect("~");
        std::string label = ts.expect_ident();
        if (ts.accept("(")) {
            label += "(" + std::to_string(ts.expect_uint()) + ")";
            ts.expect(")");
        }
        s.blur = f.resolve(label);
        ts.expect_end();
        return s;
    }
    auto pos_after_kw = text.find(kw) + kw.size();
    std::string body = text.substr(pos_after_kw);
    if (kw == "nested") {
        s.kind = SequenceFamily::Kind::Nested;
        auto fpos = body.rfind("f=");
        if (fpos == std::string::npos) throw Error("MalformedFamily", "nested family needs f=<depth in n>");
        s.point = parse_point(body.substr(0, fpos), f);
        TokenStream dts(body.substr(fpos + 2));
        s.depth = dts.parse_affine("n");
        dts.expect_end();
        if (s.depth.a < 1) throw Error("MalformedFamily", "depth must grow with n");
        return s;
    }
    if (kw == "list") {
        s.kind = SequenceFamily::Kind::ExplicitList;
        size_t start = 0;
        while (start <= body.size()) {
            size_t end = body.find(';', start);
            std::string piece = body.substr(start, end == std::string::npos ? std::string::npos : end - start);
            s.list.push_back(parse_point(piece, f));
            if (end == std::string::npos) break;
            start = end + 1;
        }
        if (s.list.empty()) throw Error("MalformedFamily", "empty list");
        return s;
    }
    throw Error("MalformedFamily", "expected approach, nested or list");
}

namespace {

// Letters of F(alpha) ∩ H in code order, at least n of them when available.
std::vector<Symbol> approach_symbols(const Presentation& p, const Word& alpha, BlurId h, size_t n) {
    SymbolSet fol = follower_of_word(p, alpha);
    SymbolSet hs = blur_symbols(h, p.family);
    std::vector<Symbol> out;
    bool finite = !blur_intersection_infinite(fol, h, p.family);
    size_t want = std::max<size_t>(n, 16);
    while (true) {
        out.clear();
        auto cand = enumerate(hs, want, p.family);
        for (Symbol s : cand)
            if (member(s, fol, p.family)) out.push_back(s);
        if (out.size() >= n || cand.size() < want) break;
        if (finite && want > 4096) break;
        want *= 2;
        if (want > (1u << 22)) throw CapExceeded("too few symbols found for the approach family");
    }
    if (out.size() > n) out.resize(n);
    return out;
}

Symbol other_than(Symbol s) { return s == Symbol{0, 0} ? Symbol{0, 1} : Symbol{0, 0}; }

}  // namespace

std::vector<Point> family_members(const Presentation& p, const SequenceFamily& s, size_t n) {
    std::vector<Point> out;
    switch (s.kind) {
        case SequenceFamily::Kind::ExplicitList:
            for (size_t k = 0; k < n; ++k) out.push_back(s.list[std::min(k, s.list.size() - 1)]);
            break;
        case SequenceFamily::Kind::Nested:
            for (size_t k = 0; k < n; ++k) {
                int64_t d = s.depth.at(static_cast<int64_t>(k));
                size_t depth = d < 0 ? 0 : static_cast<size_t>(d);
                auto strat = s.point.stratum();
                if (strat && depth > *strat) {
                    out.push_back(s.point);
                    continue;
                }
                Word head = prefix_word(s.point, depth);
                Glyph next = s.point.at(depth);
                Symbol fill = next.is_blur ? Symbol{0, 0} : other_than(next.sym);
                out.push_back(Point::periodic(head, {fill}));
            }
            break;
        case SequenceFamily::Kind::BlurApproach:
            for (Symbol h : approach_symbols(p, s.alpha, s.blur, n)) {
                Word w = s.alpha;
                w.push_back(h);
                out.push_back(extend_to_point(p, w));
            }
            break;
    }
    return out;
}

bool converges(const Presentation& p, const SequenceFamily& s, const Point& limit) {
    switch (s.kind) {
        case SequenceFamily::Kind::ExplicitList:
            return s.list.back() == limit;
        case SequenceFamily::Kind::Nested:
            return s.point == limit;
        case SequenceFamily::Kind::BlurApproach: {
            if (!in_language(p, s.alpha)) throw Error("MalformedFamily", "the approach word is not in the language");
            // Finitely many h_n: the family is not an infinite sequence of distinct points.
            if (!blur_intersection_infinite(follower_of_word(p, s.alpha), s.blur, p.family)) return false;
            // x^n_{|alpha|} = h_n runs through H: it enters every H-bar minus F and leaves
            // every other blur, whose overlap with H is finite.
            return limit == Point::blur_tail(s.alpha, s.blur);
        }
    }
    return false;
}

}  // namespace blurshift
