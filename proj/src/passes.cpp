#include "recomp/passes.hpp"

#include <algorithm>
#include <map>

namespace recomp {

namespace {

TraceEvent open_event(const char* pass, const Instance& before) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Pass;
    ev.pass = pass;
    ev.root_len_before = before.root_len();
    return ev;
}

void close_event(TraceEvent& ev, const Instance& after) {
    ev.root_len_after = after.root_len();
    ev.grammar_size = after.grammar.stored_size();
    ev.max_rhs_symbols = after.grammar.max_rhs_size();
    ev.state_count = after.automaton.states().size();
    ev.alphabet_size = after.alphabet->size();
    after.trace->append(ev);
}

void require_plain(const Instance& inst, const char* pass) {
    if (inst.grammar.succinct_for())
        throw PreconditionError(std::string(pass) + ": grammar is in succinct form");
    if (inst.automaton.relaxed_for())
        throw PreconditionError(std::string(pass) + ": automaton is relaxed");
}

bool is_a_symbol(const Symbol& s, LetterId a) {
    return !s.is_nonterminal() && s.letter == a;
}

}  // namespace

// ── Pair compression, non-crossing ──────────────────────────────────────────

Instance compress_pair_noncrossing(const Instance& inst, LetterId a, LetterId b) {
    const Alphabet& ab = *inst.alphabet;
    if (a == b)
        throw PreconditionError("pair compression needs two distinct letters");
    if (ab.is_marker(a) || ab.is_marker(b))
        throw PreconditionError("pair compression never touches the markers");
    require_plain(inst, "pair compression");
    if (pair_is_crossing(inst, a, b))
        throw PreconditionError("pair " + ab.display(a) + ab.display(b) +
                                " is crossing");

    TraceEvent ev = open_event("compress_pair_noncrossing", inst);
    ev.params["a"] = ab.display(a);
    ev.params["b"] = ab.display(b);
    ev.letter_a = a;
    ev.letter_b = b;

    std::size_t alphabet_before = inst.alphabet->size();
    LetterId c = inst.alphabet->pair_letter(a, b);
    if (inst.alphabet->size() > alphabet_before)
        ev.letters_created.push_back(ab.display(c));

    GrammarBuilder gb(inst.grammar);
    for (std::uint32_t i = 1; i <= inst.grammar.n(); ++i) {
        const auto& syms = inst.grammar.production(i).symbols;
        Rhs out;
        for (std::size_t t = 0; t < syms.size();) {
            if (t + 1 < syms.size() && syms[t].is_letter() && syms[t].letter == a &&
                syms[t + 1].is_letter() && syms[t + 1].letter == b) {
                out.symbols.push_back(Symbol::make_letter(c));
                t += 2;
                ++ev.replacements;
            } else {
                out.symbols.push_back(syms[t]);
                ++t;
            }
        }
        gb.set_production(i, std::move(out));
    }

    AutomatonBuilder abld(inst.automaton);
    std::size_t before_edges = inst.automaton.transitions().size();
    for (const Transition& t1 : inst.automaton.transitions()) {
        if (!t1.label.is_letter() || t1.label.letter != a) continue;
        for (std::size_t k : inst.automaton.outgoing(t1.dst)) {
            const Transition& t2 = inst.automaton.transitions()[k];
            if (t2.label.is_letter() && t2.label.letter == b)
                abld.add_transition(t1.src, Symbol::make_letter(c), t2.dst);
        }
    }

    Instance out = inst;
    out.grammar = gb.build();
    out.automaton = abld.build();
    ev.transitions_added = out.automaton.transitions().size() - before_edges;
    close_event(ev, out);
    return out;
}

// ── Block compression for an inner letter ───────────────────────────────────

Instance compress_blocks_inner(const Instance& inst, LetterId a,
                               const UnaryConfig& ucfg) {
    const Alphabet& ab = *inst.alphabet;
    if (ab.is_marker(a))
        throw PreconditionError("block compression never touches the markers");
    if (inst.grammar.succinct_for() && *inst.grammar.succinct_for() != a)
        throw PreconditionError("grammar is succinct for a different letter");
    if (inst.automaton.relaxed_for() && *inst.automaton.relaxed_for() != a)
        throw PreconditionError("automaton is relaxed for a different letter");

    // nonextendible_lengths enforces that `a` is inner.
    std::set<BigInt> lengths = nonextendible_lengths(inst.grammar, a);

    TraceEvent ev = open_event("compress_blocks_inner", inst);
    ev.params["a"] = ab.display(a);
    ev.params["lengths"] = std::to_string(lengths.size());
    ev.letter_a = a;

    std::size_t alphabet_before = inst.alphabet->size();
    std::map<BigInt, LetterId> block_of;
    for (const BigInt& len : lengths)
        block_of.emplace(len, inst.alphabet->block_letter(a, len));
    for (const auto& [len, id] : block_of)
        if (id >= alphabet_before) ev.letters_created.push_back(ab.display(id));

    GrammarBuilder gb(inst.grammar);
    for (std::uint32_t i = 1; i <= inst.grammar.n(); ++i) {
        const auto& syms = inst.grammar.production(i).symbols;
        Rhs out;
        BigInt run = 0;
        auto flush = [&]() {
            if (run == 0) return;
            out.symbols.push_back(Symbol::make_letter(block_of.at(run)));
            run = 0;
            ++ev.replacements;
        };
        for (const Symbol& s : syms) {
            if (is_a_symbol(s, a)) {
                run += s.flat_length();
            } else {
                flush();
                out.symbols.push_back(s);
            }
        }
        flush();
        gb.set_production(i, std::move(out));
    }
    gb.set_succinct_for(std::nullopt);

    // Bridge a-walks of each compressed length, then drop every a-transition.
    AutomatonBuilder abld(inst.automaton);
    UnaryGraph ug = restrict_to_letter(inst.automaton, a);
    std::vector<StateId> states(ug.states.begin(), ug.states.end());

    std::vector<BigInt> small, large;
    for (const BigInt& len : lengths)
        (len <= ucfg.dp_threshold ? small : large).push_back(len);

    std::size_t added = 0;
    if (!ug.edges.empty()) {
        bool unary_dfa = is_unary_deterministic(ug);
        if (!small.empty() && !unary_dfa) {
            std::uint64_t max_small = static_cast<std::uint64_t>(small.back());
            for (StateId p : states) {
                DenseReachTable table(ug, p, max_small);
                for (const BigInt& len : small) {
                    std::uint64_t l = static_cast<std::uint64_t>(len);
                    for (StateId q : states) {
                        ++ev.oracle.calls;
                        ++ev.oracle.dense_dp;
                        if (table.reachable(q, l)) {
                            abld.add_transition(
                                p, Symbol::make_letter(block_of.at(len)), q);
                            ++added;
                        }
                    }
                }
            }
        }
        std::vector<BigInt> rest = unary_dfa ? std::vector<BigInt>(lengths.begin(),
                                                                   lengths.end())
                                             : large;
        for (const BigInt& len : rest)
            for (StateId p : states)
                for (StateId q : states)
                    if (a_path_exists(ug, p, q, len, UnaryStrategy::Auto, ucfg,
                                      &ev.oracle)) {
                        abld.add_transition(p, Symbol::make_letter(block_of.at(len)),
                                            q);
                        ++added;
                    }
    }

    std::size_t removed = 0;
    abld.remove_if([&](const Transition& t) {
        bool drop = is_a_symbol(t.label, a);
        removed += drop;
        return drop;
    });
    abld.set_relaxed_for(std::nullopt);

    Instance out = inst;
    out.grammar = gb.build();
    out.automaton = abld.build();
    ev.transitions_added = added;
    ev.transitions_removed = removed;
    close_event(ev, out);
    return out;
}

// ── Making an outer letter inner ────────────────────────────────────────────

Instance make_inner(const Instance& inst, LetterId a) {
    const Alphabet& ab = *inst.alphabet;
    if (ab.is_marker(a))
        throw PreconditionError("the markers are never made inner");
    require_plain(inst, "make_inner");
    if (!outer_letters(inst.grammar).is_outer(a))
        throw PreconditionError("make_inner expects an outer letter");

    TraceEvent ev = open_event("make_inner", inst);
    ev.params["a"] = ab.display(a);
    ev.letter_a = a;

    const Grammar& g = inst.grammar;
    const std::uint32_t n = g.n();
    std::vector<BigInt> prefix(n + 1, 0), suffix(n + 1, 0);
    std::vector<bool> became_empty(n + 1, false);

    GrammarBuilder gb(g);
    for (std::uint32_t i = 1; i <= n; ++i) {
        std::vector<Symbol> tmp;
        for (const Symbol& s : g.production(i).symbols) {
            if (!s.is_nonterminal()) {
                tmp.push_back(s);
                continue;
            }
            std::uint32_t j = s.index;
            if (became_empty[j]) {
                // eval(X_j) was a pure a-power; inline it.
                tmp.push_back(Symbol::make_power(a, prefix[j]));
                continue;
            }
            if (prefix[j] > 0) tmp.push_back(Symbol::make_power(a, prefix[j]));
            tmp.push_back(s);
            if (suffix[j] > 0) tmp.push_back(Symbol::make_power(a, suffix[j]));
        }
        // Strip and record the explicit a-prefix and a-suffix.
        std::size_t lo = 0, hi = tmp.size();
        BigInt pre = 0, suf = 0;
        while (lo < hi && is_a_symbol(tmp[lo], a)) pre += tmp[lo++].flat_length();
        while (hi > lo && is_a_symbol(tmp[hi - 1], a)) suf += tmp[--hi].flat_length();
        prefix[i] = pre;
        suffix[i] = suf;
        if (lo == hi && g.eval_len(i) > 0) became_empty[i] = true;
        Rhs out;
        out.symbols.assign(tmp.begin() + lo, tmp.begin() + hi);
        gb.set_production(i, std::move(out));
        if (pre > 0 || suf > 0) ++ev.replacements;
    }
    gb.set_succinct_for(a);

    AutomatonBuilder abld(inst.automaton);
    for (std::uint32_t i = 1; i <= n; ++i) {
        auto tr = inst.automaton.nonterminal_transition(i);
        if (!tr) continue;
        if (prefix[i] == 0 && suffix[i] == 0 && !became_empty[i]) continue;
        abld.remove_if([&](const Transition& t) { return t == *tr; });
        ++ev.transitions_removed;
        if (became_empty[i]) {
            abld.add_transition(tr->src, Symbol::make_power(a, prefix[i]), tr->dst);
            ++ev.transitions_added;
            continue;
        }
        StateId from = tr->src;
        StateId to = tr->dst;
        if (prefix[i] > 0) {
            StateId p1 = abld.fresh_state();
            ev.states_created.push_back(p1);
            abld.add_transition(from, Symbol::make_power(a, prefix[i]), p1);
            ++ev.transitions_added;
            from = p1;
        }
        if (suffix[i] > 0) {
            StateId q1 = abld.fresh_state();
            ev.states_created.push_back(q1);
            abld.add_transition(q1, Symbol::make_power(a, suffix[i]), to);
            ++ev.transitions_added;
            to = q1;
        }
        abld.add_transition(from, Symbol::make_nonterminal(i), to);
        ++ev.transitions_added;
    }
    abld.set_relaxed_for(a);

    Instance out = inst;
    out.grammar = gb.build();
    out.automaton = abld.build();
    close_event(ev, out);
    return out;
}

// ── Popping first letters ───────────────────────────────────────────────────

Instance pop_first_letters(const Instance& inst) {
    require_plain(inst, "pop_first_letters");

    TraceEvent ev = open_event("pop_first_letters", inst);

    const Grammar& g = inst.grammar;
    const std::uint32_t n = g.n();
    std::vector<LetterId> popped(n + 1, kNoLetter);
    std::vector<BigInt> old_len(n + 1, 0);
    for (std::uint32_t i = 1; i <= n; ++i) old_len[i] = g.eval_len(i);

    GrammarBuilder gb(g);
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (old_len[i] == 0) continue;
        std::vector<Symbol> tmp;
        for (const Symbol& s : g.production(i).symbols) {
            if (!s.is_nonterminal()) {
                tmp.push_back(s);
                continue;
            }
            std::uint32_t j = s.index;
            tmp.push_back(Symbol::make_letter(popped[j]));
            if (old_len[j] > 1) tmp.push_back(s);  // X_j kept unless it emptied
        }
        if (i < n) {
            popped[i] = tmp.front().letter;
            tmp.erase(tmp.begin());
            ++ev.replacements;
        }
        Rhs out;
        out.symbols = std::move(tmp);
        gb.set_production(i, std::move(out));
    }

    AutomatonBuilder abld(inst.automaton);
    for (std::uint32_t i = 1; i < n; ++i) {
        auto tr = inst.automaton.nonterminal_transition(i);
        if (!tr) continue;
        abld.remove_if([&](const Transition& t) { return t == *tr; });
        ++ev.transitions_removed;
        if (old_len[i] > 1) {
            StateId p1 = abld.fresh_state();
            ev.states_created.push_back(p1);
            abld.add_transition(tr->src, Symbol::make_letter(popped[i]), p1);
            abld.add_transition(p1, Symbol::make_nonterminal(i), tr->dst);
            ev.transitions_added += 2;
        } else {
            abld.add_transition(tr->src, Symbol::make_letter(popped[i]), tr->dst);
            ++ev.transitions_added;
        }
    }

    Instance out = inst;
    out.grammar = gb.build();
    out.automaton = abld.build();
    close_event(ev, out);
    return out;
}

// ── Crossing pair compression ───────────────────────────────────────────────

Instance compress_crossing_pairs(const Instance& inst,
                                 const std::vector<LetterId>& blocks,
                                 PassObserver* observer) {
    const Alphabet& ab = *inst.alphabet;
    require_plain(inst, "compress_crossing_pairs");
    OuterReport outers = outer_letters(inst.grammar);
    for (LetterId b : blocks) {
        if (ab.is_marker(b))
            throw PreconditionError("markers cannot head a crossing pair");
        if (outers.is_outer(b))
            throw PreconditionError("crossing-pair compression expects inner "
                                    "block letters");
    }

    TraceEvent ev = open_event("compress_crossing_pairs", inst);
    ev.params["blocks"] = std::to_string(blocks.size());

    Instance cur = pop_first_letters(inst);
    if (observer) observer->on_pass(inst, cur);

    // Snapshot the pairs present right after the pop; these are exactly the
    // ones the pop made compressible.
    std::set<LetterPair> snapshot = pairs_in_root(cur.grammar);
    for (LetterId b : blocks) {
        for (const LetterPair& p : snapshot) {
            if (p.first != b || p.second == b) continue;
            if (ab.is_marker(p.second)) continue;
            if (!pairs_in_root(cur.grammar).count(p)) continue;  // already gone
            Instance next = compress_pair_noncrossing(cur, p.first, p.second);
            if (observer) observer->on_pass(cur, next);
            cur = std::move(next);
        }
    }

    close_event(ev, cur);
    return cur;
}

}  // namespace recomp
