#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/point.hpp"
#include "blurshift/presentation.hpp"

namespace blurshift {

struct GraphVertex {
    bool is_blur = false;
    SymbolSet set;  // follower class
    BlurId blur;    // blur vertex
    std::string label;
};

// An edge schema stands for every edge from `from` labelled by a letter of the
// source class handled by `rule` (and lying in `column`, when set). Blur edges
// carry the single label ~H.
struct EdgeSchema {
    size_t from = 0, to = 0;
    bool is_blur = false;
    BlurId blur;
    size_t rule = 0;
    std::optional<uint64_t> column;
    std::string label;
};

struct LabeledGraph {
    Presentation source;
    std::vector<GraphVertex> vertices;
    std::vector<EdgeSchema> edges;

    bool carries(const EdgeSchema& e, const Glyph& g) const;
};

// Follower classes of the rules plus one vertex per blur H whose constant point
// lies in the shift. Throws ParametricFollowerUnsupported for followers with
// index-dependent tails or column templates over an infinite alphabet, and
// InfiniteGraph when infinitely many blurs are active.
LabeledGraph build_blur_graph(const Presentation& p);

using GlyphWord = std::vector<Glyph>;

// Alphabet used for sampled languages: the first 10 indices of every sampled
// column, then the blurs, ordered by glyph key.
std::vector<Glyph> sample_alphabet(const Presentation& p);
uint64_t glyph_key(const Glyph& g, const BlurFamily& f);  // 2*code or 2*blurcode+1

// First k label words of length n of walks in g, over the sample alphabet,
// in lexicographic glyph-key order.
std::vector<GlyphWord> graph_language(const LabeledGraph& g, size_t n, size_t k);
// The same words computed from the presentation directly.
std::vector<GlyphWord> shift_language(const Presentation& p, size_t n, size_t k);

std::string glyph_word_text(const GlyphWord& w, const BlurFamily& f);

std::string dot_export(const LabeledGraph& g);

}  // namespace blurshift
