#ifndef RECOMP_UNARY_HPP
#define RECOMP_UNARY_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "recomp/automaton.hpp"
#include "recomp/instance.hpp"

namespace recomp {

// ── Unary reachability ──────────────────────────────────────────────────────
// "Is there a walk from p to q reading exactly a^len?" over the a-labelled
// part of the automaton. The decision is exact for NFAs too, at worst-case
// exponential cost; the deterministic case and the small-length case have
// fast paths.

struct WeightedEdge {
    StateId src = 0;
    BigInt weight;  // >= 1, the transition reads a^weight
    StateId dst = 0;
};

struct UnaryGraph {
    std::set<StateId> states;
    std::vector<WeightedEdge> edges;
};

/// Keeps exactly the transitions labelled `letter` (weight 1) or
/// `letter`^k (weight k); everything else is dropped. All automaton states
/// are retained.
UnaryGraph restrict_to_letter(const Automaton& a, LetterId letter);

enum class UnaryStrategy { Auto, DenseDp, CycleSearch };

struct UnaryConfig {
    /// Auto uses the dense table for lengths up to this value.
    std::uint64_t dp_threshold = std::uint64_t{1} << 20;
};

/// True iff a walk p -> q with total weight exactly `len` exists (len >= 1).
/// Always terminates with the correct answer regardless of strategy.
bool a_path_exists(const UnaryGraph& g, StateId p, StateId q, const BigInt& len,
                   UnaryStrategy strategy = UnaryStrategy::Auto,
                   const UnaryConfig& config = {}, OracleCounters* stats = nullptr);

/// Single-source table of exactly-reachable weights up to max_len, one bitset
/// per state. Block compression answers all (q, len) queries for one source
/// from one table.
class DenseReachTable {
public:
    DenseReachTable(const UnaryGraph& g, StateId source, std::uint64_t max_len);

    bool reachable(StateId q, std::uint64_t len) const;

private:
    std::uint64_t max_len_;
    std::vector<StateId> index_of_;           // dense state numbering
    std::vector<std::vector<std::uint64_t>> bits_;
    std::size_t state_slot(StateId s) const;
};

/// True iff every state has at most one outgoing edge, which makes the
/// arithmetic fast path applicable.
bool is_unary_deterministic(const UnaryGraph& g);

/// Nonnegative integer solvability of sum(n_i * w_i) = target over the given
/// weights. Exposed for tests; cycle search uses it to settle pump counts.
bool coin_combination_exists(std::vector<BigInt> weights, const BigInt& target);

}  // namespace recomp

#endif  // RECOMP_UNARY_HPP
