#pragma once

// Brute-force reference implementations. They only use symbol-level queries
// (family membership, single-letter followers) and never the deciders they
// are compared against.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "blurshift/metric.hpp"
#include "blurshift/point.hpp"
#include "blurshift/presentation.hpp"

namespace oracle {

using namespace blurshift;

inline std::string data_path(const std::string& rel) { return std::string(BLURSHIFT_DATA_DIR) + "/" + rel; }

inline bool word_in_language(const Presentation& p, const Word& w) {
    for (size_t k = 0; k < w.size(); ++k) {
        if (!p.family.alphabet.has(w[k].col)) return false;
        if (k == 0 ? !member(w[0], p.letters, p.family) : !member(w[k], p.follower(w[k - 1]), p.family)) return false;
    }
    return true;
}

// Counts symbols of H that may follow alpha among the first `depth` codes;
// `threshold` hits are read as infinitely many.
inline bool infinite_extension(const Presentation& p, const Word& alpha, BlurId h, uint64_t depth = 10000,
                               size_t threshold = 50) {
    if (!word_in_language(p, alpha)) return false;
    SymbolSet next = alpha.empty() ? p.letters : p.follower(alpha.back());
    size_t hits = 0;
    for (uint64_t c = 0; c < depth && hits < threshold; ++c) {
        Symbol s = symbol_from_code(c);
        if (!p.family.alphabet.has(s.col)) continue;
        if (p.family.contains(h, s) && member(s, next, p.family)) ++hits;
    }
    return hits >= threshold;
}

inline bool closure_has(const Glyph& g, BlurId h, const BlurFamily& f) {
    return g.is_blur ? g.blur == h : f.contains(h, g.sym);
}

inline bool prefix_of(const Prefix& p, const Point& x, const BlurFamily& f) {
    for (size_t k = 0; k < p.word.size(); ++k) {
        Glyph g = x.at(k);
        if (g.is_blur || g.sym != p.word[k]) return false;
    }
    return !p.blur || closure_has(x.at(p.word.size()), *p.blur, f);
}

// Every prefix of weight <= max_weight, sorted by the enumeration order.
struct BruteEnumeration {
    std::vector<Prefix> list;
    uint64_t max_weight = 0;

    BruteEnumeration(const BlurFamily& f, uint64_t max_weight_) : max_weight(max_weight_) {
        struct Entry {
            uint64_t weight;
            bool blur;
            std::vector<uint64_t> codes;
            uint64_t blurcode;
            Prefix p;
        };
        std::vector<Entry> entries;
        std::vector<uint64_t> codes;
        Word w;
        auto visit = [&](auto&& self, uint64_t weight) -> void {
            if (!w.empty()) entries.push_back({weight, false, codes, 0, Prefix{w, std::nullopt}});
            for (uint64_t bc = 0; weight + 1 + bc <= max_weight; ++bc)
                if (auto h = f.from_blurcode(bc)) entries.push_back({weight + 1 + bc, true, codes, bc, Prefix{w, *h}});
            for (uint64_t c = 0; weight + 1 + c <= max_weight; ++c) {
                Symbol s = symbol_from_code(c);
                if (!f.alphabet.has(s.col)) continue;
                w.push_back(s);
                codes.push_back(c);
                self(self, weight + 1 + c);
                w.pop_back();
                codes.pop_back();
            }
        };
        visit(visit, 0);
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.weight, a.blur, a.codes, a.blurcode) < std::tie(b.weight, b.blur, b.codes, b.blurcode);
        });
        for (auto& e : entries) list.push_back(e.p);
    }

    // 1-based index of the first prefix of exactly one of x, y; nullopt when
    // no prefix up to max_weight separates them.
    std::optional<uint64_t> distance_index(const Point& x, const Point& y, const BlurFamily& f) const {
        for (size_t i = 0; i < list.size(); ++i)
            if (prefix_of(list[i], x, f) != prefix_of(list[i], y, f)) return i + 1;
        return std::nullopt;
    }
};

// 2^-a <= 2^-b + 2^-c, exactly.
inline bool triangle_ok(const Dyadic& a, const Dyadic& b, const Dyadic& c) {
    if (!a.exponent) return true;
    if (!b.exponent || !c.exponent) {
        const Dyadic& o = b.exponent ? b : c;
        return o.exponent && !(o < a);
    }
    Index m = std::min(*b.exponent, *c.exponent);
    if (*a.exponent >= m) return true;
    return *a.exponent + 1 == m && *b.exponent == *c.exponent;
}

}  // namespace oracle
