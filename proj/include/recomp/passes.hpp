#ifndef RECOMP_PASSES_HPP
#define RECOMP_PASSES_HPP

#include <vector>

#include "recomp/analysis.hpp"
#include "recomp/instance.hpp"
#include "recomp/unary.hpp"

namespace recomp {

// ── Rewriting passes ────────────────────────────────────────────────────────
// Each pass consumes an instance and produces the next version, appending one
// event to the shared trace. Grammar and automaton are rewritten jointly so
// that the automaton accepts the new root string iff it accepted the old one.

/// Hook for callers that want to watch the pipeline step by step. The
/// freshest trace event describes what happened between the two versions.
struct PassObserver {
    virtual ~PassObserver() = default;
    virtual void on_pass(const Instance& /*before*/, const Instance& /*after*/) {}
    virtual void on_iteration_end(std::uint32_t /*iteration*/,
                                  const BigInt& /*len_before*/,
                                  const BigInt& /*len_after*/) {}
};

/// Replaces every adjacent a·b by the pair letter <a,b> in all right-hand
/// sides and bridges every two-letter-transition path reading ab with a
/// <a,b> transition. Requires a non-crossing pair of distinct non-marker
/// letters and a plain (non-succinct, non-relaxed) instance.
Instance compress_pair_noncrossing(const Instance& inst, LetterId a, LetterId b);

/// Replaces every maximal explicit run a^l by the block letter <a,l> and adds
/// a <a,l> transition wherever an a-walk of weight exactly l connects two
/// states; afterwards every transition reading a or a^k is removed and the
/// succinct/relaxed window closes. `a` must be inner and not a marker; the
/// instance may be a-succinct/a-relaxed (the extended form).
Instance compress_blocks_inner(const Instance& inst, LetterId a,
                               const UnaryConfig& ucfg = {});

/// Strips the a-prefix a^l_i and a-suffix a^r_i off every eval(X_i), storing
/// them succinctly in the referencing rules, and reroutes each nonterminal
/// transition through fresh states reading a^l_i, X_i, a^r_i. Afterwards `a`
/// is inner, the grammar a-succinct and the automaton a-relaxed.
Instance make_inner(const Instance& inst, LetterId a);

/// Pops the first letter of every eval(X_i), i < n, reinserting it in front
/// of each occurrence of X_i; the root rule is rewritten but not popped, so
/// the root string is unchanged. Nonterminal transitions gain a leading
/// letter edge (or collapse to one when the eval had length 1).
Instance pop_first_letters(const Instance& inst);

/// Pair compression for the possibly-crossing pairs headed by the given
/// block letters: pops first letters once, then compresses every pair
/// (block, b) present in the root string right after the pop.
Instance compress_crossing_pairs(const Instance& inst,
                                 const std::vector<LetterId>& blocks,
                                 PassObserver* observer = nullptr);

}  // namespace recomp

#endif  // RECOMP_PASSES_HPP
