#ifndef RECOMP_INSTANCE_HPP
#define RECOMP_INSTANCE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "recomp/automaton.hpp"
#include "recomp/grammar.hpp"
#include "recomp/letters.hpp"

namespace recomp {

// ── Trace ───────────────────────────────────────────────────────────────────
// Instrumentation log shared by all versions of one instance. Every pass
// appends one event; the driver adds iteration markers. The acceptance suite
// reads size bounds and oracle statistics from here.

struct OracleCounters {
    std::uint64_t calls = 0;       // logical (p, q, len) queries answered
    std::uint64_t dense_dp = 0;
    std::uint64_t cycle_search = 0;
    std::uint64_t dfa_fast = 0;

    void merge(const OracleCounters& o) {
        calls += o.calls;
        dense_dp += o.dense_dp;
        cycle_search += o.cycle_search;
        dfa_fast += o.dfa_fast;
    }
};

struct TraceEvent {
    enum class Kind { Pass, IterationStart, IterationEnd };

    Kind kind = Kind::Pass;
    std::string pass;                              // pass name or "" for markers
    std::map<std::string, std::string> params;
    LetterId letter_a = kNoLetter;                 // pass subject letter(s)
    LetterId letter_b = kNoLetter;
    std::vector<std::string> letters_created;      // display forms
    std::vector<StateId> states_created;
    std::uint64_t transitions_added = 0;
    std::uint64_t transitions_removed = 0;
    std::uint64_t replacements = 0;                // rhs rewrites performed
    OracleCounters oracle;
    BigInt root_len_before = 0;
    BigInt root_len_after = 0;

    // instance sizes after the event
    std::uint64_t grammar_size = 0;     // |G| in stored symbols
    std::uint64_t max_rhs_symbols = 0;
    std::uint64_t state_count = 0;
    std::uint64_t alphabet_size = 0;
    std::uint64_t iteration = 0;
};

struct Trace {
    std::vector<TraceEvent> events;

    void append(TraceEvent ev) { events.push_back(std::move(ev)); }
    const TraceEvent& back() const { return events.back(); }
};

// ── Instance ────────────────────────────────────────────────────────────────
// The (grammar, automaton) pair every pass transforms, tied together by a
// shared alphabet. `original` is the normalized input, the fixed baseline
// for SLP 1-2; `exponent_bound` caps power exponents and oracle lengths
// (max of 2^n and the largest input eval length).

struct Instance {
    std::shared_ptr<Alphabet> alphabet;
    Grammar grammar;
    Automaton automaton;
    std::shared_ptr<const Grammar> original;
    std::shared_ptr<Trace> trace;
    BigInt exponent_bound;

    const BigInt& root_len() const { return grammar.eval_len(grammar.n()); }
};

/// Cross-structure checks plus both invariant checkers. Empty iff the
/// instance is in the shape the passes expect.
InvariantReport validate_instance(const Instance& inst);

/// Builds a normalized Instance from marker-free raw input:
///  - removes references to empty nonterminals and drops dead nonterminals,
///  - duplicates any nonterminal labelling several transitions,
///  - pads the bottom with unused empty nonterminals until n >= 4,
///  - wraps the root as X_n -> $ X_{n-1} #,
///  - funnels the automaton through a fresh start ($-edge) and accept
///    (#-edge) state.
/// The result passes both invariant checkers and becomes its own SLP 2
/// baseline. Throws MalformedInputError for input that cannot be normalized.
Instance normalize_input(const Grammar& raw_grammar, const Automaton& raw_automaton,
                         std::shared_ptr<Alphabet> alphabet);

}  // namespace recomp

#endif  // RECOMP_INSTANCE_HPP
