#ifndef RECOMP_HARNESS_HPP
#define RECOMP_HARNESS_HPP

#include <cstdint>

#include "recomp/instance.hpp"

namespace recomp {

/// Knobs for the seeded instance generator. Instances come out normalized;
/// `n` is a size target (duplication during normalization may add a few
/// nonterminals on top).
struct GenParams {
    std::uint64_t seed = 0;
    std::uint32_t n = 6;
    std::uint32_t alphabet_size = 4;
    std::uint32_t state_count = 5;
    std::uint32_t max_rhs_len = 6;
    std::uint32_t target_eval_len_log2 = 12;
    /// Keep the automaton first-letter deterministic.
    bool force_dfa = false;
    /// Thread an accepting path spelling the root string through the
    /// automaton, making the answer `accepted` by construction.
    bool plant_accepting_path = false;
};

/// Deterministic in the seed.
Instance gen_instance(const GenParams& params);

}  // namespace recomp

#endif  // RECOMP_HARNESS_HPP
