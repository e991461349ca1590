#ifndef RECOMP_TESTS_HELPERS_HPP
#define RECOMP_TESTS_HELPERS_HPP

// Independent oracles used across the test suites. Everything here works on
// decompressed strings or plain graph search, deliberately avoiding the
// library's incremental computations so the two sides can disagree.

#include <map>
#include <set>
#include <vector>

#include "recomp/analysis.hpp"
#include "recomp/decide.hpp"
#include "recomp/harness.hpp"
#include "recomp/instance.hpp"
#include "recomp/io.hpp"
#include "recomp/unary.hpp"

namespace testutil {

using namespace recomp;

inline Instance make_instance(const std::string& grammar_text,
                              const std::string& automaton_text) {
    return parse_instance(grammar_text, automaton_text);
}

/// String-level pair compression: every ab replaced by c, left to right.
inline std::vector<LetterId> pc_string(const std::vector<LetterId>& w, LetterId a,
                                       LetterId b, LetterId c) {
    std::vector<LetterId> out;
    for (std::size_t i = 0; i < w.size();) {
        if (i + 1 < w.size() && w[i] == a && w[i + 1] == b) {
            out.push_back(c);
            i += 2;
        } else {
            out.push_back(w[i]);
            i += 1;
        }
    }
    return out;
}

/// String-level block compression: every maximal run a^l becomes <a,l>.
inline std::vector<LetterId> ac_string(const std::vector<LetterId>& w, LetterId a,
                                       Alphabet& alphabet) {
    std::vector<LetterId> out;
    for (std::size_t i = 0; i < w.size();) {
        if (w[i] != a) {
            out.push_back(w[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < w.size() && w[j] == a) ++j;
        out.push_back(alphabet.block_letter(a, BigInt(j - i)));
        i = j;
    }
    return out;
}

/// Adjacent pairs of all evals, by full decompression.
inline std::set<LetterPair> scan_pairs(const Grammar& g, std::size_t cap) {
    std::set<LetterPair> out;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        std::vector<LetterId> w = g.decompress(i, cap);
        for (std::size_t t = 0; t + 1 < w.size(); ++t) out.emplace(w[t], w[t + 1]);
    }
    return out;
}

/// Non-extendible run lengths of `a`, by full decompression. Runs touching
/// the ends of an eval are ignored only when `a` is outer there; for an
/// inner letter that never happens, matching the library contract.
inline std::set<BigInt> scan_runs(const Grammar& g, LetterId a, std::size_t cap) {
    std::set<BigInt> out;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        std::vector<LetterId> w = g.decompress(i, cap);
        std::size_t t = 0;
        while (t < w.size()) {
            if (w[t] != a) {
                ++t;
                continue;
            }
            std::size_t j = t;
            while (j < w.size() && w[j] == a) ++j;
            bool left_bounded = t > 0;
            bool right_bounded = j < w.size();
            if (left_bounded && right_bounded) out.insert(BigInt(j - t));
            t = j;
        }
    }
    return out;
}

/// Definition-level crossing check: an occurrence of ab in some eval that is
/// not contained in one explicit segment or one child span, or that
/// straddles two consecutive transitions with a nonterminal among them.
inline bool scan_crossing(const Instance& inst, LetterId a, LetterId b,
                          std::size_t cap) {
    const Grammar& g = inst.grammar;
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        std::vector<LetterId> w = g.decompress(i, cap);
        // [start, end) spans: explicit segments are maximal letter stretches.
        std::vector<std::pair<std::size_t, std::size_t>> spans;
        std::size_t off = 0, seg_start = 0;
        bool in_seg = false;
        for (const Symbol& s : g.production(i).symbols) {
            if (s.is_nonterminal()) {
                if (in_seg) spans.emplace_back(seg_start, off), in_seg = false;
                std::size_t len = static_cast<std::size_t>(g.eval_len(s.index));
                spans.emplace_back(off, off + len);
                off += len;
            } else {
                if (!in_seg) seg_start = off, in_seg = true;
                off += static_cast<std::size_t>(s.flat_length());
            }
        }
        if (in_seg) spans.emplace_back(seg_start, off);
        for (std::size_t t = 0; t + 1 < w.size(); ++t) {
            if (w[t] != a || w[t + 1] != b) continue;
            bool contained = false;
            for (auto [lo, hi] : spans)
                if (lo <= t && t + 2 <= hi) {
                    contained = true;
                    break;
                }
            if (!contained) return true;
        }
    }
    const Automaton& aut = inst.automaton;
    auto eval_of = [&](const Symbol& label) -> std::vector<LetterId> {
        if (label.is_nonterminal()) return g.decompress(label.index, cap);
        std::vector<LetterId> w;
        std::size_t k = static_cast<std::size_t>(label.flat_length());
        w.assign(k, label.letter);
        return w;
    };
    for (const Transition& t1 : aut.transitions()) {
        for (std::size_t k : aut.outgoing(t1.dst)) {
            const Transition& t2 = aut.transitions()[k];
            if (!t1.label.is_nonterminal() && !t2.label.is_nonterminal()) continue;
            std::vector<LetterId> w1 = eval_of(t1.label);
            std::vector<LetterId> w2 = eval_of(t2.label);
            if (!w1.empty() && !w2.empty() && w1.back() == a && w2.front() == b)
                return true;
        }
    }
    return false;
}

/// Exact-weight reachability by BFS over cumulative weights (small lengths).
inline bool unary_bfs(const UnaryGraph& g, StateId p, StateId q,
                      std::uint64_t len) {
    std::map<StateId, std::vector<std::pair<std::uint64_t, StateId>>> adj;
    for (const WeightedEdge& e : g.edges)
        if (e.weight <= len)
            adj[e.src].push_back({static_cast<std::uint64_t>(e.weight), e.dst});
    std::set<std::pair<std::uint64_t, StateId>> seen;
    std::vector<std::pair<std::uint64_t, StateId>> frontier{{0, p}};
    seen.insert({0, p});
    while (!frontier.empty()) {
        auto [c, s] = frontier.back();
        frontier.pop_back();
        if (c == len && s == q) return true;
        auto it = adj.find(s);
        if (it == adj.end()) continue;
        for (auto [w, dst] : it->second) {
            if (c + w > len) continue;
            if (seen.insert({c + w, dst}).second) frontier.push_back({c + w, dst});
        }
    }
    return false;
}

/// Seeded corpus helper.
inline std::vector<GenParams> corpus(std::uint64_t base_seed, std::size_t count,
                                     bool dfa_only = false) {
    std::vector<GenParams> out;
    for (std::size_t k = 0; k < count; ++k) {
        GenParams p;
        p.seed = base_seed + k;
        p.n = 4 + k % 4;              // final n stays <= 8
        p.alphabet_size = 2 + k % 5;  // up to 6
        p.state_count = 2 + k % 5;    // up to 6
        p.max_rhs_len = 3 + k % 10;
        p.target_eval_len_log2 = 4 + k % 8;  // eval(X_n) <= 2^11 + 2
        p.force_dfa = dfa_only || (k % 3 == 0);
        p.plant_accepting_path = k % 2 == 0;
        out.push_back(p);
    }
    return out;
}

}  // namespace testutil

#endif  // RECOMP_TESTS_HELPERS_HPP
