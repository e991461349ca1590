#ifndef RECOMP_AUTOMATON_HPP
#define RECOMP_AUTOMATON_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "recomp/grammar.hpp"
#include "recomp/letters.hpp"
#include "recomp/report.hpp"

namespace recomp {

using StateId = std::uint32_t;

/// Transition labels reuse Symbol: a letter, a power a^k (only while the
/// automaton is relaxed for a), or a nonterminal.
struct Transition {
    StateId src = 0;
    Symbol label;
    StateId dst = 0;

    bool operator==(const Transition& o) const {
        return src == o.src && dst == o.dst && label == o.label;
    }
};

// ── Automaton ───────────────────────────────────────────────────────────────
// NFA with compressed labels, single start and single accept state.
// Immutable after construction; passes derive new versions through
// AutomatonBuilder, which also hands out fresh state ids.

class Automaton {
public:
    Automaton() = default;

    const std::set<StateId>& states() const { return states_; }
    StateId start() const { return start_; }
    StateId accept() const { return accept_; }
    const std::optional<LetterId>& relaxed_for() const { return relaxed_for_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    const std::vector<std::size_t>& outgoing(StateId s) const {
        static const std::vector<std::size_t> none;
        auto it = by_src_.find(s);
        return it == by_src_.end() ? none : it->second;
    }

    /// The at-most-one transition labelled X_i.
    std::optional<Transition> nonterminal_transition(std::uint32_t index) const {
        auto it = by_nonterminal_.find(index);
        if (it == by_nonterminal_.end()) return std::nullopt;
        return transitions_[it->second];
    }

private:
    friend class AutomatonBuilder;

    std::set<StateId> states_;
    StateId start_ = 0;
    StateId accept_ = 0;
    std::optional<LetterId> relaxed_for_;
    std::vector<Transition> transitions_;
    std::map<StateId, std::vector<std::size_t>> by_src_;
    std::map<std::uint32_t, std::size_t> by_nonterminal_;
};

class AutomatonBuilder {
public:
    AutomatonBuilder() = default;

    explicit AutomatonBuilder(const Automaton& a)
        : states_(a.states()),
          start_(a.start()),
          accept_(a.accept()),
          relaxed_for_(a.relaxed_for()),
          transitions_(a.transitions()) {}

    AutomatonBuilder& add_state(StateId s) {
        states_.insert(s);
        return *this;
    }

    /// A state id not used yet; also registers it.
    StateId fresh_state() {
        StateId next = states_.empty() ? 0 : *states_.rbegin() + 1;
        states_.insert(next);
        return next;
    }

    AutomatonBuilder& set_start(StateId s) {
        start_ = s;
        states_.insert(s);
        return *this;
    }

    AutomatonBuilder& set_accept(StateId s) {
        accept_ = s;
        states_.insert(s);
        return *this;
    }

    AutomatonBuilder& set_relaxed_for(std::optional<LetterId> a) {
        relaxed_for_ = a;
        return *this;
    }

    /// Duplicate transitions are dropped.
    AutomatonBuilder& add_transition(StateId src, Symbol label, StateId dst);

    AutomatonBuilder& remove_if(const std::function<bool(const Transition&)>& pred) {
        transitions_.erase(
            std::remove_if(transitions_.begin(), transitions_.end(), pred),
            transitions_.end());
        return *this;
    }

    Automaton build() const;

private:
    std::set<StateId> states_;
    StateId start_ = 0;
    StateId accept_ = 0;
    std::optional<LetterId> relaxed_for_;
    std::vector<Transition> transitions_;
};

// ── Queries and invariants ──────────────────────────────────────────────────

/// Aut 1-2 modulo the declared relaxation. `n` is the grammar's nonterminal
/// count (no transition may be labelled X_n).
InvariantReport check_aut_invariants(const Automaton& a, std::uint32_t n);

/// Conservative determinism test: no state has two outgoing labels whose
/// strings begin with the same letter.
bool is_deterministic(const Automaton& a, const Grammar& g);

/// True iff there is a path from p to q over letter transitions only whose
/// concatenated labels equal w. Used with |w| = 2 by pair compression.
bool letter_path_exists(const Automaton& a, StateId p,
                        const std::vector<LetterId>& w, StateId q);

}  // namespace recomp

#endif  // RECOMP_AUTOMATON_HPP
