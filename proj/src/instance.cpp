#include "recomp/instance.hpp"

#include <algorithm>
#include <map>

namespace recomp {

InvariantReport validate_instance(const Instance& inst) {
    InvariantReport rep = check_slp_invariants(inst.grammar, *inst.original);
    InvariantReport aut = check_aut_invariants(inst.automaton, inst.grammar.n());
    for (auto& v : aut.violations) rep.violations.push_back(std::move(v));

    for (const Transition& t : inst.automaton.transitions()) {
        if (t.label.is_nonterminal()) {
            std::uint32_t i = t.label.index;
            if (i < 1 || i > inst.grammar.n())
                rep.add("instance", t.src, "transition references unknown X" +
                                               std::to_string(i));
            else if (inst.grammar.eval_len(i) == 0)
                rep.add("instance", t.src,
                        "transition labelled X" + std::to_string(i) +
                            " whose eval is empty");
        } else if (t.label.is_power() && t.label.exponent > inst.exponent_bound) {
            rep.add("instance", t.src, "power label exceeds the exponent bound");
        }
    }
    for (std::uint32_t i = 1; i <= inst.grammar.n(); ++i)
        for (const Symbol& s : inst.grammar.production(i).symbols)
            if (s.is_power() && s.exponent > inst.exponent_bound)
                rep.add("instance", i, "stored power exceeds the exponent bound");
    return rep;
}

namespace {

Rhs remap_rhs(const Rhs& rhs, const std::vector<std::uint32_t>& index_map,
              const Grammar& old) {
    Rhs out;
    for (const Symbol& s : rhs.symbols) {
        if (s.is_nonterminal()) {
            if (old.eval_len(s.index) == 0) continue;  // rule (1c)
            out.symbols.push_back(Symbol::make_nonterminal(index_map[s.index]));
        } else {
            out.symbols.push_back(s);
        }
    }
    return out;
}

}  // namespace

Instance normalize_input(const Grammar& raw_grammar, const Automaton& raw_automaton,
                         std::shared_ptr<Alphabet> alphabet) {
    const Alphabet& ab = *alphabet;
    const std::uint32_t m = raw_grammar.n();
    if (m == 0) throw MalformedInputError("grammar has no nonterminals");

    // Markers belong to normalization, not to raw input.
    for (std::uint32_t i = 1; i <= m; ++i)
        for (const Symbol& s : raw_grammar.production(i).symbols) {
            if (!s.is_nonterminal() && ab.is_marker(s.letter))
                throw MalformedInputError("raw grammar uses the marker " +
                                          ab.display(s.letter));
            if (s.is_power())
                throw MalformedInputError("raw grammar contains succinct powers");
        }
    for (const Transition& t : raw_automaton.transitions()) {
        if (t.label.is_power())
            throw MalformedInputError("raw automaton contains power labels");
        if (t.label.is_letter() && ab.is_marker(t.label.letter))
            throw MalformedInputError("raw automaton uses a marker label");
        if (t.label.is_nonterminal() &&
            (t.label.index < 1 || t.label.index > m))
            throw MalformedInputError("raw automaton references unknown X" +
                                      std::to_string(t.label.index));
        if (t.label.is_nonterminal() && raw_grammar.eval_len(t.label.index) == 0)
            throw MalformedInputError(
                "raw automaton transition labelled by an empty nonterminal X" +
                std::to_string(t.label.index));
    }
    if (!raw_automaton.states().count(raw_automaton.start()) ||
        !raw_automaton.states().count(raw_automaton.accept()))
        throw MalformedInputError("automaton start/accept is not a declared state");

    // Keep nonterminals that feed the root string or label a transition.
    std::set<std::uint32_t> live;
    {
        std::vector<std::uint32_t> stack{m};
        live.insert(m);
        for (const Transition& t : raw_automaton.transitions())
            if (t.label.is_nonterminal() && live.insert(t.label.index).second)
                stack.push_back(t.label.index);
        while (!stack.empty()) {
            std::uint32_t i = stack.back();
            stack.pop_back();
            for (const Symbol& s : raw_grammar.production(i).symbols)
                if (s.is_nonterminal() && raw_grammar.eval_len(s.index) > 0 &&
                    live.insert(s.index).second)
                    stack.push_back(s.index);
        }
    }

    // How many copies each nonterminal needs so that Aut 1 holds.
    std::map<std::uint32_t, std::uint32_t> label_uses;
    for (const Transition& t : raw_automaton.transitions())
        if (t.label.is_nonterminal()) ++label_uses[t.label.index];

    // Bottom padding so the main loop's guard |eval(X_n)| > n can exit;
    // the shortest reachable root string is "$x#" of length 3.
    std::uint32_t live_count = 0;
    for (std::uint32_t i = 1; i <= m; ++i) live_count += live.count(i);
    std::uint32_t extra_copies = 0;
    for (const auto& [idx, uses] : label_uses)
        if (uses > 1) extra_copies += uses - 1;
    std::uint32_t padding = 0;
    while (live_count + extra_copies + padding + 1 < 4) ++padding;

    const std::uint32_t n = live_count + extra_copies + padding + 1;

    // index_map: raw index -> primary new index. Copies follow their original.
    std::vector<std::uint32_t> index_map(m + 1, 0);
    std::map<std::uint32_t, std::vector<std::uint32_t>> copies;  // raw -> new ids
    GrammarBuilder gb(n, alphabet);
    std::uint32_t next = 1;
    for (std::uint32_t p = 0; p < padding; ++p) gb.set_production(next++, Rhs{});
    for (std::uint32_t i = 1; i <= m; ++i) {
        if (!live.count(i)) continue;
        Rhs mapped = remap_rhs(raw_grammar.production(i), index_map, raw_grammar);
        index_map[i] = next;
        gb.set_production(next++, mapped);
        auto it = label_uses.find(i);
        std::uint32_t uses = it == label_uses.end() ? 0 : it->second;
        for (std::uint32_t c = 1; c < uses; ++c) {
            copies[i].push_back(next);
            gb.set_production(next++, mapped);
        }
    }

    // Root wrapper X_n -> $ X_{n-1}' #; an empty root string leaves "$ #".
    Rhs wrapper;
    wrapper.symbols.push_back(Symbol::make_letter(ab.dollar()));
    if (raw_grammar.eval_len(m) > 0)
        wrapper.symbols.push_back(Symbol::make_nonterminal(index_map[m]));
    wrapper.symbols.push_back(Symbol::make_letter(ab.hash_marker()));
    gb.set_production(n, std::move(wrapper));
    Grammar grammar = gb.build();

    // Automaton: remap states densely, relabel duplicate nonterminal uses,
    // then funnel through fresh start/accept states.
    std::map<StateId, StateId> state_map;
    AutomatonBuilder abld;
    for (StateId s : raw_automaton.states()) {
        StateId fresh = static_cast<StateId>(state_map.size());
        state_map.emplace(s, fresh);
        abld.add_state(fresh);
    }
    std::map<std::uint32_t, std::uint32_t> used_so_far;
    for (const Transition& t : raw_automaton.transitions()) {
        Symbol label = t.label;
        if (label.is_nonterminal()) {
            std::uint32_t raw = label.index;
            std::uint32_t seen = used_so_far[raw]++;
            label = Symbol::make_nonterminal(
                seen == 0 ? index_map[raw] : copies[raw][seen - 1]);
        }
        abld.add_transition(state_map[t.src], label, state_map[t.dst]);
    }
    StateId new_start = abld.fresh_state();
    StateId new_accept = abld.fresh_state();
    abld.add_transition(new_start, Symbol::make_letter(ab.dollar()),
                        state_map[raw_automaton.start()]);
    abld.add_transition(state_map[raw_automaton.accept()],
                        Symbol::make_letter(ab.hash_marker()), new_accept);
    abld.set_start(new_start);
    abld.set_accept(new_accept);
    Automaton automaton = abld.build();

    BigInt bound = BigInt(1) << n;
    for (std::uint32_t i = 1; i <= n; ++i)
        if (grammar.eval_len(i) > bound) bound = grammar.eval_len(i);

    Instance inst;
    inst.alphabet = std::move(alphabet);
    inst.grammar = grammar;
    inst.automaton = std::move(automaton);
    inst.original = std::make_shared<const Grammar>(std::move(grammar));
    inst.trace = std::make_shared<Trace>();
    inst.exponent_bound = std::move(bound);

    InvariantReport rep = validate_instance(inst);
    if (!rep.empty())
        throw MalformedInputError("normalization produced an invalid instance:\n" +
                                  rep.to_string());
    return inst;
}

}  // namespace recomp
