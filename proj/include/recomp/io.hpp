#ifndef RECOMP_IO_HPP
#define RECOMP_IO_HPP

#include <memory>
#include <string>
#include <utility>

#include "recomp/instance.hpp"

namespace recomp {

// ── Text formats ────────────────────────────────────────────────────────────
// Grammar files are line oriented, ';' starts a comment ('#' is a letter):
//
//     slp n=4
//     X1 ->
//     X2 -> a b a
//     X3 -> a^12 X2
//     X4 -> $ X3 #
//
// Tokens: letter names, $, #, X<j>, <letter>^<decimal>, and the structured
// letters (x,y) and [x,k] produced by compression. Powers are sugar and are
// expanded unless the file declares `succinct <letter>`.
//
// Automaton files:
//
//     states 0 1 2 3
//     start 0
//     accept 3
//     trans 0 $ 1
//     trans 1 X3 2
//     trans 2 # 3
//
// with an optional `relaxed <letter>` line permitting power labels.
//
// A combined instance file is the grammar, a line `---`, then the automaton.

struct ParsedParts {
    std::shared_ptr<Alphabet> alphabet;
    Grammar grammar;
    Automaton automaton;
};

ParsedParts parse_grammar_automaton(const std::string& grammar_text,
                                    const std::string& automaton_text);

/// Parts assembled into an instance (baseline = the parsed grammar) without
/// validation.
Instance assemble_instance(ParsedParts parts);

/// Parses and validates; throws InvariantViolationError when the files do
/// not describe a normalized instance.
Instance parse_instance(const std::string& grammar_text,
                        const std::string& automaton_text);

/// Splits a combined instance file at the "---" line.
std::pair<std::string, std::string> split_container(const std::string& text);

std::string serialize_grammar(const Grammar& g);
std::string serialize_automaton(const Automaton& a, const Alphabet& alphabet);

/// Canonical container form: grammar, separator, automaton.
std::string serialize_instance(const Instance& inst);

/// One trace event as a JSON line.
std::string trace_event_to_json(const TraceEvent& ev);

}  // namespace recomp

#endif  // RECOMP_IO_HPP
