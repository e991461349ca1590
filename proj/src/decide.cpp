#include "recomp/decide.hpp"

#include <algorithm>
#include <map>

#include "recomp/analysis.hpp"

namespace recomp {

namespace {

// Exact occurrence positions of `pat` in `word` (KMP).
std::vector<std::size_t> match_positions(const std::vector<LetterId>& word,
                                         const std::vector<LetterId>& pat) {
    std::vector<std::size_t> out;
    if (pat.empty() || pat.size() > word.size()) return out;
    std::vector<std::size_t> fail(pat.size(), 0);
    for (std::size_t i = 1, k = 0; i < pat.size(); ++i) {
        while (k > 0 && pat[i] != pat[k]) k = fail[k - 1];
        if (pat[i] == pat[k]) ++k;
        fail[i] = k;
    }
    for (std::size_t i = 0, k = 0; i < word.size(); ++i) {
        while (k > 0 && word[i] != pat[k]) k = fail[k - 1];
        if (word[i] == pat[k]) ++k;
        if (k == pat.size()) {
            out.push_back(i + 1 - k);
            k = fail[k - 1];
        }
    }
    return out;
}

}  // namespace

bool naive_accept(const Instance& inst, const std::vector<LetterId>& word,
                  std::size_t cap) {
    const Automaton& aut = inst.automaton;
    const std::size_t L = word.size();

    // Dense state numbering.
    std::map<StateId, std::size_t> slot;
    for (StateId s : aut.states()) slot.emplace(s, slot.size());
    const std::size_t S = slot.size();

    // Per nonterminal label: eval length + sorted match positions.
    struct NontermMatch {
        std::size_t len = 0;
        std::vector<std::size_t> positions;
    };
    std::map<std::uint32_t, NontermMatch> matches;
    // Per power base: run length of that letter starting at each position.
    std::map<LetterId, std::vector<std::size_t>> runlen;

    for (const Transition& t : aut.transitions()) {
        if (t.label.is_nonterminal() && !matches.count(t.label.index)) {
            std::vector<LetterId> pat =
                inst.grammar.decompress(t.label.index, cap);
            NontermMatch m;
            m.len = pat.size();
            m.positions = match_positions(word, pat);
            matches.emplace(t.label.index, std::move(m));
        } else if (t.label.is_power() && !runlen.count(t.label.letter)) {
            std::vector<std::size_t> r(L + 1, 0);
            for (std::size_t i = L; i-- > 0;)
                r[i] = word[i] == t.label.letter ? r[i + 1] + 1 : 0;
            runlen.emplace(t.label.letter, std::move(r));
        }
    }

    std::vector<std::vector<char>> reach(L + 1, std::vector<char>(S, 0));
    reach[0][slot.at(aut.start())] = 1;
    for (std::size_t t = 0; t <= L; ++t) {
        for (StateId s : aut.states()) {
            if (!reach[t][slot.at(s)]) continue;
            for (std::size_t k : aut.outgoing(s)) {
                const Transition& tr = aut.transitions()[k];
                switch (tr.label.kind) {
                    case SymbolKind::Letter:
                        if (t < L && word[t] == tr.label.letter)
                            reach[t + 1][slot.at(tr.dst)] = 1;
                        break;
                    case SymbolKind::Power: {
                        if (tr.label.exponent > L - t) break;
                        std::size_t k2 = static_cast<std::size_t>(tr.label.exponent);
                        if (runlen.at(tr.label.letter)[t] >= k2)
                            reach[t + k2][slot.at(tr.dst)] = 1;
                        break;
                    }
                    case SymbolKind::Nonterminal: {
                        const NontermMatch& m = matches.at(tr.label.index);
                        if (m.len == 0 || m.len > L - t) break;
                        if (std::binary_search(m.positions.begin(),
                                               m.positions.end(), t))
                            reach[t + m.len][slot.at(tr.dst)] = 1;
                        break;
                    }
                }
            }
        }
    }
    return reach[L][slot.at(aut.accept())] != 0;
}

bool brute_force_accepts(const Instance& inst, std::size_t cap) {
    std::vector<LetterId> word =
        inst.grammar.decompress(inst.grammar.n(), cap);
    return naive_accept(inst, word, cap);
}

namespace {

void mark_iteration(const Instance& inst, TraceEvent::Kind kind,
                    std::uint32_t iteration) {
    TraceEvent ev;
    ev.kind = kind;
    ev.iteration = iteration;
    ev.root_len_before = inst.root_len();
    ev.root_len_after = inst.root_len();
    ev.grammar_size = inst.grammar.stored_size();
    ev.max_rhs_symbols = inst.grammar.max_rhs_size();
    ev.state_count = inst.automaton.states().size();
    ev.alphabet_size = inst.alphabet->size();
    inst.trace->append(ev);
}

std::uint64_t last_replacements(const Instance& inst) {
    return inst.trace->back().replacements;
}

}  // namespace

Decision decide(const Instance& inst, const DecideOptions& opts) {
    InvariantReport rep = validate_instance(inst);
    if (!rep.empty())
        throw PreconditionError("decide requires a normalized instance:\n" +
                                rep.to_string());

    if (opts.engine == Engine::Naive) {
        Decision d;
        d.accepted = brute_force_accepts(inst, opts.max_expand);
        d.trace = inst.trace;
        d.final_len = inst.root_len();
        return d;
    }

    const std::uint32_t n = inst.grammar.n();
    const std::uint32_t ceiling =
        opts.max_iterations ? opts.max_iterations : 3 * n + 10;
    PassObserver* obs = opts.observer;

    Instance cur = inst;
    auto run = [&](Instance next) {
        if (obs) obs->on_pass(cur, next);
        cur = std::move(next);
    };

    std::uint32_t iterations = 0;
    while (cur.root_len() > n) {
        if (iterations >= ceiling)
            throw IterationLimitError(
                "main loop exceeded " + std::to_string(ceiling) +
                " iterations; the shrink bound rules this out for a correct "
                "implementation");
        ++iterations;
        const BigInt len_before = cur.root_len();
        mark_iteration(cur, TraceEvent::Kind::IterationStart, iterations);

        // Fixpoint: compress inner runs and non-crossing pairs until nothing
        // shortens. Block compression is applied when a run of length >= 2
        // exists; single-letter renames are left to the outer phase, which
        // needs them to frame its pair compressions.
        std::uint64_t changed = 1;
        while (changed != 0) {
            changed = 0;
            OuterReport outer = outer_letters(cur.grammar);
            for (LetterId a : cur.grammar.occurring_letters()) {
                if (cur.alphabet->is_marker(a) || outer.is_outer(a)) continue;
                std::set<BigInt> lengths = nonextendible_lengths(cur.grammar, a);
                bool shrinks = std::any_of(lengths.begin(), lengths.end(),
                                           [](const BigInt& l) { return l >= 2; });
                if (!shrinks) continue;
                run(compress_blocks_inner(cur, a, opts.unary));
                changed += last_replacements(cur);
            }
            std::set<LetterPair> snapshot = pairs_in_root(cur.grammar);
            for (const LetterPair& p : snapshot) {
                auto [a, b] = p;
                if (a == b || cur.alphabet->is_marker(a) ||
                    cur.alphabet->is_marker(b))
                    continue;
                if (!pairs_in_root(cur.grammar).count(p)) continue;  // stale
                if (pair_is_crossing(cur, a, b)) continue;
                run(compress_pair_noncrossing(cur, a, b));
                changed += last_replacements(cur);
            }
        }

        // Outer phase: snapshot the outer letters, then make each inner,
        // compress its blocks and the pairs those blocks head.
        OuterReport outer = outer_letters(cur.grammar);
        std::set<LetterId> phase;
        phase.insert(outer.left_outer.begin(), outer.left_outer.end());
        phase.insert(outer.right_outer.begin(), outer.right_outer.end());
        for (LetterId a : phase) {
            if (cur.alphabet->is_marker(a)) continue;
            if (!cur.grammar.occurring_letters().count(a)) continue;
            if (outer_letters(cur.grammar).is_outer(a))
                run(make_inner(cur, a));
            std::set<BigInt> lengths = nonextendible_lengths(cur.grammar, a);
            std::vector<LetterId> blocks;
            for (const BigInt& len : lengths)
                blocks.push_back(cur.alphabet->block_letter(a, len));
            run(compress_blocks_inner(cur, a, opts.unary));
            // Sub-passes notify the observer themselves; no extra hook here.
            cur = compress_crossing_pairs(cur, blocks, obs);
        }

        mark_iteration(cur, TraceEvent::Kind::IterationEnd, iterations);
        if (obs) obs->on_iteration_end(iterations, len_before, cur.root_len());
    }

    std::size_t final_cap = std::max<std::size_t>(n, 16);
    std::vector<LetterId> word = cur.grammar.decompress(n, final_cap);

    Decision d;
    d.accepted = naive_accept(cur, word, opts.max_expand);
    d.iterations = iterations;
    d.trace = cur.trace;
    d.final_len = cur.root_len();
    return d;
}

}  // namespace recomp
