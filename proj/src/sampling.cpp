#include "blurshift/sampling.hpp"

#include "blurshift/shift.hpp"

namespace blurshift {

Sampler::Sampler(const Presentation& p, uint64_t seed, size_t choices) : p_(&p), rng_(seed), choices_(choices) {}

Symbol Sampler::pick(const SymbolSet& s) {
    auto opts = enumerate(s, choices_, p_->family);
    if (opts.empty()) throw Error("EmptyFollower", "no symbol to continue with");
    std::uniform_int_distribution<size_t> d(0, opts.size() - 1);
    return opts[d(rng_)];
}

Word Sampler::random_word(size_t n) {
    Word w;
    while (w.size() < n) w.push_back(pick(follower_of_word(*p_, w)));
    return w;
}

Point Sampler::random_periodic(size_t max_walk) {
    Word w = random_word(max_walk);
    for (size_t k = 1; k < w.size(); ++k)
        for (size_t j = 0; j < k; ++j)
            if (w[j] == w[k]) return Point::periodic(Word(w.begin(), w.begin() + j), Word(w.begin() + j, w.begin() + k));
    Point x = extend_to_point(*p_, w);
    if (!x.is_blur()) return x;
    // The least-code chain ran into a blur; fall back to the shortest cycle through it.
    return extend_to_point(*p_, Word(w.begin(), w.begin() + 1));
}

std::optional<Point> Sampler::random_blur_point(size_t max_head) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::uniform_int_distribution<size_t> len(0, max_head);
        Word alpha = random_word(len(rng_));
        ActiveBlurs cand = blurs_meeting(follower_of_word(*p_, alpha), p_->family);
        std::vector<BlurId> ids = cand.listed;
        if (cand.param_from)
            for (uint64_t t = *cand.param_from; t < *cand.param_from + 3; ++t) ids.push_back(BlurId{-1, t});
        if (ids.empty()) continue;
        std::uniform_int_distribution<size_t> d(0, ids.size() - 1);
        return Point::blur_tail(alpha, ids[d(rng_)]);
    }
    return std::nullopt;
}

Point Sampler::random_point() {
    std::bernoulli_distribution coin(0.5);
    if (coin(rng_))
        if (auto b = random_blur_point()) return *b;
    return random_periodic();
}

}  // namespace blurshift
