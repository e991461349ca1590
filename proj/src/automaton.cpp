#include "recomp/automaton.hpp"

#include <algorithm>

namespace recomp {

AutomatonBuilder& AutomatonBuilder::add_transition(StateId src, Symbol label,
                                                   StateId dst) {
    states_.insert(src);
    states_.insert(dst);
    Transition t{src, std::move(label), dst};
    if (std::find(transitions_.begin(), transitions_.end(), t) == transitions_.end())
        transitions_.push_back(std::move(t));
    return *this;
}

Automaton AutomatonBuilder::build() const {
    Automaton a;
    a.states_ = states_;
    a.start_ = start_;
    a.accept_ = accept_;
    a.relaxed_for_ = relaxed_for_;
    a.transitions_ = transitions_;
    for (std::size_t k = 0; k < a.transitions_.size(); ++k) {
        const Transition& t = a.transitions_[k];
        a.by_src_[t.src].push_back(k);
        if (t.label.is_nonterminal()) {
            // Aut 1 uniqueness is validated by the checker; the index keeps
            // the first occurrence.
            a.by_nonterminal_.emplace(t.label.index, k);
        }
    }
    return a;
}

InvariantReport check_aut_invariants(const Automaton& a, std::uint32_t n) {
    InvariantReport rep;
    std::map<std::uint32_t, int> nonterminal_uses;
    std::vector<Transition> dollar_edges, hash_edges;

    for (const Transition& t : a.transitions()) {
        if (!a.states().count(t.src) || !a.states().count(t.dst))
            rep.add("Aut-1", t.src, "transition endpoint is not a declared state");
        switch (t.label.kind) {
            case SymbolKind::Letter:
                break;
            case SymbolKind::Power:
                if (!a.relaxed_for() || *a.relaxed_for() != t.label.letter)
                    rep.add("Aut-1", t.src,
                            "power-labelled transition outside the declared relaxation");
                break;
            case SymbolKind::Nonterminal:
                ++nonterminal_uses[t.label.index];
                if (t.label.index == n)
                    rep.add("Aut-1", t.src, "transition labelled with the root X" +
                                                std::to_string(n));
                break;
        }
    }
    for (const auto& [idx, uses] : nonterminal_uses)
        if (uses > 1)
            rep.add("Aut-1", idx,
                    "X" + std::to_string(idx) + " labels " + std::to_string(uses) +
                        " transitions");

    // Aut 2: the marker funnel around start and accept.
    std::size_t start_out = 0, start_in = 0, accept_in = 0, accept_out = 0;
    for (const Transition& t : a.transitions()) {
        if (t.src == a.start()) ++start_out;
        if (t.dst == a.start()) ++start_in;
        if (t.dst == a.accept()) ++accept_in;
        if (t.src == a.accept()) ++accept_out;
        bool is_dollar = t.label.is_letter() && t.label.letter == 0;
        bool is_hash = t.label.is_letter() && t.label.letter == 1;
        if (is_dollar) dollar_edges.push_back(t);
        if (is_hash) hash_edges.push_back(t);
    }
    if (start_out != 1 || start_in != 0 || dollar_edges.size() != 1 ||
        dollar_edges.empty() || dollar_edges.front().src != a.start())
        rep.add("Aut-2", a.start(),
                "start state must have exactly one outgoing $-transition, no "
                "incoming ones, and $ must label nothing else");
    if (accept_in != 1 || accept_out != 0 || hash_edges.size() != 1 ||
        hash_edges.empty() || hash_edges.front().dst != a.accept())
        rep.add("Aut-2", a.accept(),
                "accept state must have exactly one incoming #-transition, no "
                "outgoing ones, and # must label nothing else");
    return rep;
}

bool is_deterministic(const Automaton& a, const Grammar& g) {
    for (StateId s : a.states()) {
        std::set<LetterId> firsts;
        for (std::size_t k : a.outgoing(s)) {
            const Symbol& label = a.transitions()[k].label;
            LetterId f = g.first_of(label);
            if (f == kNoLetter) continue;  // empty-eval label, never usable
            if (!firsts.insert(f).second) return false;
        }
    }
    return true;
}

bool letter_path_exists(const Automaton& a, StateId p,
                        const std::vector<LetterId>& w, StateId q) {
    std::set<StateId> frontier{p};
    for (LetterId c : w) {
        std::set<StateId> next;
        for (StateId s : frontier)
            for (std::size_t k : a.outgoing(s)) {
                const Transition& t = a.transitions()[k];
                if (t.label.is_letter() && t.label.letter == c) next.insert(t.dst);
            }
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    return frontier.count(q) > 0;
}

}  // namespace recomp
