#include "recomp/harness.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace recomp {

namespace {

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        return bound == 0 ? 0 : engine() % bound;
    }

    bool chance(std::uint32_t percent) { return below(100) < percent; }
};

}  // namespace

Instance gen_instance(const GenParams& params) {
    Rng rng(params.seed);
    auto alphabet = std::make_shared<Alphabet>();

    std::vector<LetterId> letters;
    for (std::uint32_t i = 0; i < std::max<std::uint32_t>(params.alphabet_size, 1);
         ++i) {
        std::string name;
        name += static_cast<char>('a' + i % 26);
        if (i >= 26) name += std::to_string(i / 26);
        letters.push_back(alphabet->original(name));
    }
    auto random_letter = [&] { return letters[rng.below(letters.size())]; };

    // Grammar, bottom up. Right-hand sides mix fresh letters, short runs and
    // references to smaller nonterminals, capped so the root stays within the
    // target length.
    const std::uint32_t m = std::max<std::uint32_t>(params.n, 2) - 1;
    const BigInt eval_cap = BigInt(1) << params.target_eval_len_log2;
    GrammarBuilder gb(m, alphabet);
    std::vector<BigInt> lens(m + 1, 0);
    std::vector<Rhs> prods(m + 1);

    for (std::uint32_t i = 1; i <= m; ++i) {
        Rhs rhs;
        BigInt len = 0;
        if (i > 1 && i < m && rng.chance(5)) {
            // occasional empty nonterminal; normalization prunes references
            prods[i] = rhs;
            lens[i] = 0;
            gb.set_production(i, Rhs{});
            continue;
        }
        auto emit_letters = [&](std::uint32_t upto) {
            LetterId prev = kNoLetter;
            std::uint32_t count = static_cast<std::uint32_t>(rng.below(upto + 1));
            for (std::uint32_t t = 0; t < count && len + 1 <= eval_cap; ++t) {
                bool extend = prev != kNoLetter && rng.chance(35);
                LetterId c = extend ? prev : random_letter();
                rhs.symbols.push_back(Symbol::make_letter(c));
                prev = c;
                len += 1;
            }
        };
        auto emit_ref = [&](std::uint32_t j) {
            if (lens[j] == 0 || len + lens[j] > eval_cap) return false;
            rhs.symbols.push_back(Symbol::make_nonterminal(j));
            len += lens[j];
            return true;
        };
        std::uint32_t pad = std::max<std::uint32_t>(params.max_rhs_len / 3, 1);
        if (i == 1 || rng.chance(15)) {
            // flat rule: letters only
            emit_letters(params.max_rhs_len);
        } else if (rng.chance(70)) {
            // doubling backbone: u X_{i-1} v X_{i-1} (or X_j when it fits)
            std::uint32_t j = i - 1;
            if (lens[j] == 0 || rng.chance(20))
                j = 1 + static_cast<std::uint32_t>(rng.below(i - 1));
            emit_letters(pad);
            bool first = emit_ref(j);
            emit_letters(pad);
            if (!first || !emit_ref(j)) emit_letters(pad);
        } else {
            // two distinct children
            std::uint32_t j1 = 1 + static_cast<std::uint32_t>(rng.below(i - 1));
            std::uint32_t j2 = 1 + static_cast<std::uint32_t>(rng.below(i - 1));
            emit_letters(pad);
            emit_ref(j1);
            emit_letters(pad);
            emit_ref(j2);
            emit_letters(pad);
        }
        if (rhs.symbols.empty()) {
            rhs.symbols.push_back(Symbol::make_letter(random_letter()));
            len = 1;
        }
        prods[i] = rhs;
        lens[i] = len;
        gb.set_production(i, std::move(rhs));
    }
    // The raw root must define something.
    if (lens[m] == 0) {
        Rhs rhs;
        rhs.symbols.push_back(Symbol::make_letter(random_letter()));
        prods[m] = rhs;
        lens[m] = 1;
        gb.set_production(m, std::move(rhs));
    }
    Grammar grammar = gb.build();
    std::set<std::uint32_t> reachable = grammar.reachable_from_root();

    // Automaton over the raw labels. Nonterminal noise only references the
    // root's derivation, so every labelled string occurs in the root string.
    AutomatonBuilder ab;
    const std::uint32_t q = std::max<std::uint32_t>(params.state_count, 2);
    for (StateId s = 0; s < q; ++s) ab.add_state(s);
    ab.set_start(0);
    ab.set_accept(q - 1);

    std::vector<std::uint32_t> label_pool;
    for (std::uint32_t i : reachable)
        if (grammar.eval_len(i) > 0) label_pool.push_back(i);

    // first letters already used per state, for the deterministic mode
    std::map<StateId, std::set<LetterId>> used_first;
    auto try_add = [&](StateId src, const Symbol& label, StateId dst) -> bool {
        LetterId f = grammar.first_of(label);
        if (f == kNoLetter) return false;
        if (params.force_dfa) {
            auto& used = used_first[src];
            if (used.count(f)) return false;
            used.insert(f);
        }
        ab.add_transition(src, label, dst);
        return true;
    };

    std::set<std::uint32_t> labels_used;
    StateId next_fresh = q;
    if (params.plant_accepting_path) {
        // Spell the root rule as a walk from start to accept, expanding
        // referenced nonterminals with some probability. Each nonterminal is
        // used as an edge at most once so the plant creates no duplicates.
        std::vector<Symbol> spelling;
        std::set<std::uint32_t> spelled;
        auto expand = [&](auto&& self, std::uint32_t i, std::uint32_t depth) -> void {
            for (const Symbol& s : grammar.production(i).symbols) {
                if (s.is_nonterminal()) {
                    if (grammar.eval_len(s.index) == 0) continue;
                    bool recurse = spelled.count(s.index) ||
                                   (depth < 3 && rng.chance(50));
                    if (recurse) {
                        self(self, s.index, depth + 1);
                    } else {
                        spelled.insert(s.index);
                        spelling.push_back(s);
                    }
                    continue;
                }
                spelling.push_back(s);
            }
        };
        expand(expand, m, 0);
        StateId at = 0;
        for (std::size_t t = 0; t < spelling.size(); ++t) {
            bool last = t + 1 == spelling.size();
            StateId dst;
            if (last) {
                dst = q - 1;
            } else if (params.force_dfa) {
                dst = next_fresh;
                ab.add_state(next_fresh++);
            } else {
                dst = static_cast<StateId>(rng.below(q));
            }
            // The plant runs before any noise and, in DFA mode, walks fresh
            // chain states, so the insert cannot clash.
            if (try_add(at, spelling[t], dst) && spelling[t].is_nonterminal())
                labels_used.insert(spelling[t].index);
            at = dst;
        }
    }

    // Nonterminal labels mostly stay unique; one duplicate per instance keeps
    // the duplication path of normalization exercised without inflating n.
    bool duplicate_spent = false;
    std::uint32_t noise = q + static_cast<std::uint32_t>(rng.below(q + 1));
    for (std::uint32_t e = 0; e < noise; ++e) {
        StateId src = static_cast<StateId>(rng.below(q));
        StateId dst = static_cast<StateId>(rng.below(q));
        Symbol label;
        if (!label_pool.empty() && rng.chance(30)) {
            std::uint32_t i = label_pool[rng.below(label_pool.size())];
            if (labels_used.count(i)) {
                if (duplicate_spent) continue;
                duplicate_spent = true;
            }
            if (try_add(src, Symbol::make_nonterminal(i), dst))
                labels_used.insert(i);
            continue;
        }
        label = Symbol::make_letter(random_letter());
        try_add(src, label, dst);
    }

    return normalize_input(grammar, ab.build(), alphabet);
}

}  // namespace recomp
