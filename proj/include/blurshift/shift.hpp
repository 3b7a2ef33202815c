#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/point.hpp"
#include "blurshift/presentation.hpp"

namespace blurshift {

bool in_language(const Presentation& p, const Word& w);
// Letters for the empty word, the last letter's follower otherwise.
SymbolSet follower_of_word(const Presentation& p, const Word& w);

struct Membership {
    bool member = false;
    std::optional<size_t> stratum;  // nullopt means the point lies in the shift itself
    std::string reason;             // why not, when member is false
};
Membership sigma_member(const Presentation& p, const Point& x);

// Blurs meeting the letters infinitely. Parametric members H(t) are listed one
// by one below param_from; from there on every member is active.
struct ActiveBlurs {
    std::vector<BlurId> listed;
    std::optional<uint64_t> param_from;
    bool infinite() const { return param_from.has_value(); }
    std::string text(const BlurFamily& f) const;
};
ActiveBlurs active_blurs(const Presentation& p);
// Blurs H with |e ∩ H| infinite, in the same shape.
ActiveBlurs blurs_meeting(const SymbolSet& e, const BlurFamily& f, uint64_t extra_bound = 0);

struct Compactness {
    bool compact = false;
    ActiveBlurs active;
    Residual residual;   // letters outside the active blurs (when V is finite)
    std::string detail;  // one-line verdict
};
Compactness is_compact(const Presentation& p);

// A sequence with no convergent subsequence, witnessing non-compactness.
struct WitnessFamily {
    enum class Kind { DistinctBlurs, UncoveredLetters };
    Kind kind = Kind::DistinctBlurs;
    std::string description;
};
std::optional<WitnessFamily> non_compactness_witness(const Presentation& p);
std::vector<Point> witness_members(const Presentation& p, const WitnessFamily& w, size_t n);

struct LocalCompactness {
    enum class Verdict { YesCovered, YesSufficient, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<size_t> bad_rules;  // rules whose followers no finite blur family covers
    std::string detail;
};
std::string verdict_text(LocalCompactness::Verdict v);
LocalCompactness is_locally_compact(const Presentation& p);

struct CountabilityReport {
    bool separable = true;
    bool first_countable = true;
    bool second_countable = true;
    bool metrizable = true;
    bool compact = false;
    std::string note;
};
CountabilityReport countability_metrizability_report(const Presentation& p);

struct BlurContinuity {
    std::string blur;  // "H1", or "H(t) for t>=6" for a parametric tail
    enum class Verdict { Yes, No, Unknown } verdict = Verdict::Unknown;
    std::string detail;
};
std::string verdict_text(BlurContinuity::Verdict v);
struct ContinuityReport {
    std::vector<BlurContinuity> at_blurs;
};
ContinuityReport shift_continuity_report(const Presentation& p);
// Verdict at the fixed point of a single blur; throws BlurPointNotInShift.
BlurContinuity shift_continuity_at(const Presentation& p, BlurId h);

// Extends a word of the language to a point: follows least-code followers until
// a letter repeats, falling back to a blur tail.
Point extend_to_point(const Presentation& p, const Word& alpha);

}  // namespace blurshift
