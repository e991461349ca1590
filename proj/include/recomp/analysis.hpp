#ifndef RECOMP_ANALYSIS_HPP
#define RECOMP_ANALYSIS_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "recomp/instance.hpp"

namespace recomp {

using LetterPair = std::pair<LetterId, LetterId>;

struct OuterReport {
    std::set<LetterId> left_outer;   // first letters of nonempty evals
    std::set<LetterId> right_outer;  // last letters of nonempty evals

    bool is_outer(LetterId a) const {
        return left_outer.count(a) || right_outer.count(a);
    }
};

OuterReport outer_letters(const Grammar& g);

/// All ordered adjacent letter pairs occurring in eval(X_1)..eval(X_n),
/// equal-letter pairs included. Requires the grammar not to be succinct.
std::set<LetterPair> pairs_in_evals(const Grammar& g);

/// Same, restricted to the nonterminals reachable from X_n — the pairs that
/// occur in eval(X_n) itself.
std::set<LetterPair> pairs_in_root(const Grammar& g);

// ── Pair classification ─────────────────────────────────────────────────────

struct PairWitness {
    enum class Kind { Rule, Automaton };
    Kind kind = Kind::Rule;
    // Rule: the pair straddles the boundary after symbol `offset` of X_index.
    std::uint32_t index = 0;
    std::uint32_t offset = 0;
    // Automaton: consecutive transitions from `from` through `mid` to `to`.
    StateId from = 0, mid = 0, to = 0;
};

struct PairClass {
    LetterPair pair{kNoLetter, kNoLetter};
    bool crossing = false;
    bool excluded_from_compression = false;  // contains $ or #
    std::vector<PairWitness> witnesses;
};

/// Classifies every two-distinct-letter pair of pairs_in_evals as crossing or
/// non-crossing, with the witnesses that make it crossing. Ordered by pair.
std::vector<PairClass> classify_pairs(const Instance& inst);

/// Crossing status of a single pair; cheaper than a full classification.
bool pair_is_crossing(const Instance& inst, LetterId a, LetterId b);

/// The set of lengths of maximal runs x a^l y (x != a != y) in the evals.
/// `a` must be inner; the grammar may be a-succinct. Every such run is an
/// explicit substring of some right-hand side, so a scan of the stored
/// symbols is exhaustive.
std::set<BigInt> nonextendible_lengths(const Grammar& g, LetterId a);

}  // namespace recomp

#endif  // RECOMP_ANALYSIS_HPP
