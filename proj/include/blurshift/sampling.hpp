#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "blurshift/point.hpp"
#include "blurshift/presentation.hpp"

namespace blurshift {

// Seeded random points of a blur shift. Every choice is made among the first
// few members of a follower set, so codes (and metric indices) stay small.
class Sampler {
public:
    Sampler(const Presentation& p, uint64_t seed, size_t choices = 10);

    Word random_word(size_t n);
    // Eventually periodic point of the shift, from a walk closed at a repeat.
    Point random_periodic(size_t max_walk = 12);
    // alpha.~H~H... with |alpha| <= max_head; nullopt when no blur is reachable.
    std::optional<Point> random_blur_point(size_t max_head = 3);
    // Periodic or blur point, roughly half each.
    Point random_point();

    std::mt19937_64& rng() { return rng_; }

private:
    Symbol pick(const SymbolSet& s);

    const Presentation* p_;
    std::mt19937_64 rng_;
    size_t choices_;
};

}  // namespace blurshift
