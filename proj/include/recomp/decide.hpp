#ifndef RECOMP_DECIDE_HPP
#define RECOMP_DECIDE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "recomp/instance.hpp"
#include "recomp/passes.hpp"
#include "recomp/unary.hpp"

namespace recomp {

enum class Engine { Recompress, Naive };

struct DecideOptions {
    Engine engine = Engine::Recompress;
    /// Main-loop ceiling; 0 means the default 3n+10. Exceeding it signals an
    /// implementation bug, not bad input.
    std::uint32_t max_iterations = 0;
    UnaryConfig unary;
    /// Letter budget for decompressions on the naive paths.
    std::size_t max_expand = std::size_t{1} << 20;
    PassObserver* observer = nullptr;
};

struct Decision {
    bool accepted = false;
    std::uint32_t iterations = 0;
    std::shared_ptr<Trace> trace;
    BigInt final_len;
};

/// The main driver: alternate block and pair compression until the root
/// string is no longer than n, then decompress it and check membership
/// naively. The instance must be normalized.
Decision decide(const Instance& inst, const DecideOptions& opts = {});

/// Membership of an explicit word in the instance's automaton: dynamic
/// program over (position, state); nonterminal labels are matched through
/// decompression under `cap`.
bool naive_accept(const Instance& inst, const std::vector<LetterId>& word,
                  std::size_t cap);

/// Decompress the root string (within `cap`) and run the naive check.
bool brute_force_accepts(const Instance& inst, std::size_t cap);

}  // namespace recomp

#endif  // RECOMP_DECIDE_HPP
