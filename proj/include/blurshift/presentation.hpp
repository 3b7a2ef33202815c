#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blurshift/family.hpp"
#include "blurshift/symbol_set.hpp"

namespace blurshift {

// Left-hand side of a rule. "col t" matches every column and binds t.
struct RulePattern {
    enum class Kind { Exact, Column, IndexAtMost, IndexAbove, Default };
    Kind kind = Kind::Default;
    Symbol sym;     // Exact
    ColExpr col;    // Column / IndexAtMost / IndexAbove
    ColExpr bound;  // IndexAtMost / IndexAbove, may mention t

    bool matches(Symbol s) const;
    IndexSet slice(uint64_t c) const;
    std::string text() const;
    uint64_t constant_bound() const;
    bool operator==(const RulePattern&) const = default;
};

struct Rule {
    RulePattern pattern;
    SymbolSet follower;  // template in t (input column) and i (input index)
    int line = 0;
};

// A Markov presentation: letters, an ordered rule list (first match wins) and
// the blur family.
class Presentation {
public:
    BlurFamily family;
    SymbolSet letters;
    std::vector<Rule> rules;

    static Presentation parse(const std::string& text);
    static Presentation load(const std::string& path);
    std::string text() const;

    uint64_t constant_bound() const;
    Scope scope() const;

    bool is_letter(Symbol s) const;
    std::optional<size_t> rule_for(Symbol s) const;
    // Letters of column c handled by rule r under first-match semantics.
    IndexSet domain(size_t r, uint64_t c) const;
    // Follower of a single letter; throws NoRule when nothing matches.
    SymbolSet follower(Symbol s) const;
    // Input columns that exhibit every distinct rule behaviour.
    std::vector<uint64_t> input_columns() const;
};

bool subset_of(const SymbolSet& a, const SymbolSet& b, const BlurFamily& f);

// Rules as nodes; r -> r' when some follower of a letter handled by r contains
// a letter handled by r'. Over-approximates per-letter edges only through the
// index-dependence of tails.
struct RuleGraph {
    std::vector<bool> live;
    std::vector<std::vector<size_t>> succ;
    // Rules lying on a cycle, or reachable from one.
    std::vector<bool> recurrent_reach() const;
};
RuleGraph rule_graph(const Presentation& p);

ValidationReport validate_presentation(const Presentation& p);

}  // namespace blurshift
