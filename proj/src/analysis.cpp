#include "recomp/analysis.hpp"

#include <algorithm>
#include <map>

namespace recomp {

OuterReport outer_letters(const Grammar& g) {
    OuterReport rep;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        auto [f, l] = g.first_last(i);
        if (f) rep.left_outer.insert(*f);
        if (l) rep.right_outer.insert(*l);
    }
    return rep;
}

namespace {

std::set<LetterPair> pairs_over(const Grammar& g,
                                const std::set<std::uint32_t>& indices) {
    if (g.succinct_for())
        throw PreconditionError("pair enumeration requires a non-succinct grammar");
    // Bottom-up union: pairs of eval(X_i) are the pairs of its children plus
    // the adjacencies visible in the rule itself.
    std::map<std::uint32_t, std::set<LetterPair>> memo;
    std::set<LetterPair> all;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        std::set<LetterPair> cur;
        const Rhs& rhs = g.production(i);
        const Symbol* prev = nullptr;  // last symbol with a nonempty eval
        for (const Symbol& s : rhs.symbols) {
            if (s.is_nonterminal()) {
                if (g.eval_len(s.index) == 0) continue;
                const auto& sub = memo[s.index];
                cur.insert(sub.begin(), sub.end());
            }
            if (prev) cur.emplace(g.last_of(*prev), g.first_of(s));
            prev = &s;
        }
        memo[i] = cur;
        if (indices.count(i)) all.insert(cur.begin(), cur.end());
    }
    return all;
}

std::set<std::uint32_t> all_indices(const Grammar& g) {
    std::set<std::uint32_t> s;
    for (std::uint32_t i = 1; i <= g.n(); ++i) s.insert(i);
    return s;
}

}  // namespace

std::set<LetterPair> pairs_in_evals(const Grammar& g) {
    return pairs_over(g, all_indices(g));
}

std::set<LetterPair> pairs_in_root(const Grammar& g) {
    return pairs_over(g, {g.n()});
}

namespace {

void rule_witnesses(const Grammar& g, std::map<LetterPair, PairClass>& classes) {
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        const auto& syms = g.production(i).symbols;
        for (std::size_t t = 0; t + 1 < syms.size(); ++t) {
            const Symbol& a = syms[t];
            const Symbol& b = syms[t + 1];
            if (!a.is_nonterminal() && !b.is_nonterminal())
                continue;  // adjacency inside an explicit string
            LetterId x = g.last_of(a);
            LetterId y = g.first_of(b);
            if (x == kNoLetter || y == kNoLetter || x == y) continue;
            auto it = classes.find({x, y});
            if (it == classes.end()) continue;
            PairWitness w;
            w.kind = PairWitness::Kind::Rule;
            w.index = i;
            w.offset = static_cast<std::uint32_t>(t);
            it->second.crossing = true;
            it->second.witnesses.push_back(w);
        }
    }
}

void automaton_witnesses(const Instance& inst,
                         std::map<LetterPair, PairClass>& classes) {
    const Automaton& aut = inst.automaton;
    const Grammar& g = inst.grammar;
    for (const Transition& t1 : aut.transitions()) {
        for (std::size_t k : aut.outgoing(t1.dst)) {
            const Transition& t2 = aut.transitions()[k];
            if (!t1.label.is_nonterminal() && !t2.label.is_nonterminal()) continue;
            LetterId x = g.last_of(t1.label);
            LetterId y = g.first_of(t2.label);
            if (x == kNoLetter || y == kNoLetter || x == y) continue;
            auto it = classes.find({x, y});
            if (it == classes.end()) continue;
            PairWitness w;
            w.kind = PairWitness::Kind::Automaton;
            w.from = t1.src;
            w.mid = t1.dst;
            w.to = t2.dst;
            it->second.crossing = true;
            it->second.witnesses.push_back(w);
        }
    }
}

}  // namespace

std::vector<PairClass> classify_pairs(const Instance& inst) {
    const Grammar& g = inst.grammar;
    const Alphabet& ab = *inst.alphabet;
    std::map<LetterPair, PairClass> classes;
    for (const LetterPair& p : pairs_in_evals(g)) {
        if (p.first == p.second) continue;  // runs, handled by block compression
        PairClass pc;
        pc.pair = p;
        pc.excluded_from_compression = ab.is_marker(p.first) || ab.is_marker(p.second);
        classes.emplace(p, std::move(pc));
    }
    rule_witnesses(g, classes);
    automaton_witnesses(inst, classes);
    std::vector<PairClass> out;
    out.reserve(classes.size());
    for (auto& [p, pc] : classes) out.push_back(std::move(pc));
    return out;
}

bool pair_is_crossing(const Instance& inst, LetterId a, LetterId b) {
    const Grammar& g = inst.grammar;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        const auto& syms = g.production(i).symbols;
        for (std::size_t t = 0; t + 1 < syms.size(); ++t) {
            if (!syms[t].is_nonterminal() && !syms[t + 1].is_nonterminal()) continue;
            if (g.last_of(syms[t]) == a && g.first_of(syms[t + 1]) == b) return true;
        }
    }
    const Automaton& aut = inst.automaton;
    for (const Transition& t1 : aut.transitions()) {
        if (g.last_of(t1.label) != a) continue;
        for (std::size_t k : aut.outgoing(t1.dst)) {
            const Transition& t2 = aut.transitions()[k];
            if (!t1.label.is_nonterminal() && !t2.label.is_nonterminal()) continue;
            if (g.first_of(t2.label) == b) return true;
        }
    }
    return false;
}

std::set<BigInt> nonextendible_lengths(const Grammar& g, LetterId a) {
    OuterReport outer = outer_letters(g);
    if (outer.is_outer(a))
        throw PreconditionError("non-extendible lengths require an inner letter");
    if (g.succinct_for() && *g.succinct_for() != a)
        throw PreconditionError("grammar is succinct for a different letter");

    std::set<BigInt> lengths;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        BigInt run = 0;
        for (const Symbol& s : g.production(i).symbols) {
            bool is_a = !s.is_nonterminal() && s.letter == a;
            if (is_a) {
                run += s.flat_length();
            } else if (run > 0) {
                lengths.insert(run);
                run = 0;
            }
        }
        // A trailing run would make `a` right-outer, so it cannot occur for a
        // valid inner letter; recorded anyway to keep the scan total.
        if (run > 0) lengths.insert(run);
    }
    return lengths;
}

}  // namespace recomp
