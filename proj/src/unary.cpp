#include "recomp/unary.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace recomp {

UnaryGraph restrict_to_letter(const Automaton& a, LetterId letter) {
    UnaryGraph g;
    g.states = a.states();
    for (const Transition& t : a.transitions()) {
        if (t.label.is_letter() && t.label.letter == letter)
            g.edges.push_back({t.src, 1, t.dst});
        else if (t.label.is_power() && t.label.letter == letter)
            g.edges.push_back({t.src, t.label.exponent, t.dst});
    }
    return g;
}

bool is_unary_deterministic(const UnaryGraph& g) {
    std::set<StateId> seen;
    for (const WeightedEdge& e : g.edges)
        if (!seen.insert(e.src).second) return false;
    return true;
}

namespace {

using boost::multiprecision::gcd;

std::map<StateId, std::vector<std::size_t>> adjacency(const UnaryGraph& g) {
    std::map<StateId, std::vector<std::size_t>> adj;
    for (std::size_t k = 0; k < g.edges.size(); ++k)
        adj[g.edges[k].src].push_back(k);
    return adj;
}

// Unique-walk arithmetic: follow the only possible walk, detect the cycle
// within |states| steps, then answer by divisibility.
bool dfa_fast_path(const UnaryGraph& g, StateId p, StateId q, const BigInt& len) {
    std::map<StateId, std::size_t> out;
    for (std::size_t k = 0; k < g.edges.size(); ++k) out[g.edges[k].src] = k;

    std::map<StateId, BigInt> visit_weight;
    StateId cur = p;
    BigInt cum = 0;
    while (true) {
        if (cur == q && cum == len) return true;
        auto seen = visit_weight.find(cur);
        if (seen != visit_weight.end()) {
            // Cycle closed. q pumps iff it sits on the cycle part.
            BigInt entry = seen->second;
            BigInt cycle_weight = cum - entry;
            auto qv = visit_weight.find(q);
            if (qv == visit_weight.end()) return false;
            const BigInt& base = qv->second;
            if (base < entry) return false;  // q only on the prefix
            return len > base && (len - base) % cycle_weight == 0;
        }
        visit_weight.emplace(cur, cum);
        auto e = out.find(cur);
        if (e == out.end()) return false;  // walk ends
        cum += g.edges[e->second].weight;
        cur = g.edges[e->second].dst;
    }
}

// ── Coin problem ────────────────────────────────────────────────────────────
// Decide sum(n_i * w_i) = R, n_i >= 0. Weights may be huge, so the decision
// combines a gcd filter, a representability threshold, exact two-coin
// arithmetic and a bounded search for three or more coins.

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = a % m, r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt quot = old_r / r;
        BigInt tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    BigInt inv = old_s % m;
    if (inv < 0) inv += m;
    return inv;
}

bool coin_decide(const std::vector<BigInt>& weights, const BigInt& R,
                 std::map<BigInt, bool>* memo) {
    if (R == 0) return true;
    if (weights.empty() || R < 0) return false;
    if (memo) {
        auto it = memo->find(R);
        if (it != memo->end()) return it->second;
    }

    bool result = false;
    BigInt g = weights.front();
    for (const BigInt& w : weights) g = gcd(g, w);
    if (R % g != 0) {
        result = false;
    } else {
        std::vector<BigInt> ws;
        ws.reserve(weights.size());
        for (const BigInt& w : weights) ws.push_back(w / g);
        BigInt r = R / g;
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

        const BigInt& wmin = ws.front();
        const BigInt& wmax = ws.back();
        if (ws.size() == 1) {
            result = r % wmin == 0;
        } else if (r >= (wmin - 1) * wmax) {
            // Every residue class mod wmin is reachable within wmin-1 coin
            // steps of cost <= wmax, so everything at or above this line is
            // representable (overall gcd is 1 here).
            result = true;
        } else {
            bool divides = false;
            for (const BigInt& w : ws)
                if (r % w == 0) {
                    divides = true;
                    break;
                }
            if (divides) {
                result = true;
            } else if (ws.size() == 2) {
                // gcd(w1, w2) = 1: the minimal multiplicity of w1 hitting R's
                // residue class mod w2 settles it.
                BigInt n1 = (r % ws[1]) * mod_inverse(ws[0] % ws[1], ws[1]) % ws[1];
                result = n1 * ws[0] <= r;
            } else {
                std::vector<BigInt> rest(ws.begin(), ws.end() - 1);
                std::map<BigInt, bool> sub_memo;
                // r / wmax < wmin - 1 here, so this stays narrow.
                for (BigInt m = r / wmax; m >= 0 && !result; --m)
                    result = coin_decide(rest, r - m * wmax, &sub_memo);
            }
        }
    }
    if (memo) memo->emplace(R, result);
    return result;
}

// ── Cycle search ────────────────────────────────────────────────────────────
// Any walk p -> q decomposes into a simple path plus a multiset of simple
// cycles whose sharing graph (cycles share a state with each other or with
// the path) is connected. Conversely every such combination is realizable by
// nesting the cycles at shared states. The search enumerates simple paths,
// then grows connected cycle supports, settling multiplicities with the coin
// decision above.

struct CycleClass {
    std::set<StateId> states;
    BigInt weight;
};

void enumerate_cycles(const UnaryGraph& g,
                      const std::map<StateId, std::vector<std::size_t>>& adj,
                      std::vector<CycleClass>& out) {
    std::set<std::pair<std::vector<StateId>, BigInt>> seen;
    std::vector<StateId> states(g.states.begin(), g.states.end());
    for (StateId anchor : states) {
        // Simple cycles whose minimal state is `anchor`.
        std::vector<StateId> path{anchor};
        std::set<StateId> on_path{anchor};
        BigInt weight = 0;
        auto dfs = [&](auto&& self, StateId v) -> void {
            auto it = adj.find(v);
            if (it == adj.end()) return;
            for (std::size_t k : it->second) {
                const WeightedEdge& e = g.edges[k];
                if (e.dst == anchor) {
                    std::vector<StateId> key(on_path.begin(), on_path.end());
                    if (seen.emplace(key, weight + e.weight).second)
                        out.push_back({std::set<StateId>(on_path.begin(), on_path.end()),
                                       weight + e.weight});
                } else if (e.dst > anchor && !on_path.count(e.dst)) {
                    on_path.insert(e.dst);
                    weight += e.weight;
                    self(self, e.dst);
                    weight -= e.weight;
                    on_path.erase(e.dst);
                }
            }
        };
        dfs(dfs, anchor);
    }
}

struct SupportSearch {
    const std::vector<CycleClass>& cycles;
    std::set<std::vector<std::uint32_t>> visited;

    bool overlaps(const CycleClass& c, const std::set<StateId>& states) const {
        for (StateId s : c.states)
            if (states.count(s)) return true;
        return false;
    }

    bool search(std::vector<std::uint32_t>& support, std::set<StateId>& covered,
                const BigInt& residual) {
        std::vector<std::uint32_t> key = support;
        std::sort(key.begin(), key.end());
        if (!visited.insert(std::move(key)).second) return false;

        for (std::uint32_t c = 0; c < cycles.size(); ++c) {
            if (std::find(support.begin(), support.end(), c) != support.end())
                continue;
            if (!overlaps(cycles[c], covered)) continue;
            BigInt next = residual - cycles[c].weight;
            if (next < 0) continue;
            support.push_back(c);
            std::vector<BigInt> weights;
            weights.reserve(support.size());
            for (std::uint32_t s : support) weights.push_back(cycles[s].weight);
            std::map<BigInt, bool> memo;
            if (coin_decide(weights, next, &memo)) return true;
            std::vector<StateId> added;
            for (StateId s : cycles[c].states)
                if (covered.insert(s).second) added.push_back(s);
            bool found = search(support, covered, next);
            for (StateId s : added) covered.erase(s);
            support.pop_back();
            if (found) return true;
        }
        return false;
    }
};

bool cycle_search(const UnaryGraph& g, StateId p, StateId q, const BigInt& len) {
    auto adj = adjacency(g);

    // Restrict to states that can sit on a p -> q walk at all.
    std::set<StateId> from_p{p};
    {
        std::vector<StateId> stack{p};
        while (!stack.empty()) {
            StateId v = stack.back();
            stack.pop_back();
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (std::size_t k : it->second)
                if (from_p.insert(g.edges[k].dst).second)
                    stack.push_back(g.edges[k].dst);
        }
    }
    std::set<StateId> to_q{q};
    {
        std::map<StateId, std::vector<std::size_t>> radj;
        for (std::size_t k = 0; k < g.edges.size(); ++k)
            radj[g.edges[k].dst].push_back(k);
        std::vector<StateId> stack{q};
        while (!stack.empty()) {
            StateId v = stack.back();
            stack.pop_back();
            auto it = radj.find(v);
            if (it == radj.end()) continue;
            for (std::size_t k : it->second)
                if (to_q.insert(g.edges[k].src).second)
                    stack.push_back(g.edges[k].src);
        }
    }
    if (!from_p.count(q) || !to_q.count(p)) return false;

    UnaryGraph pruned;
    for (StateId s : g.states)
        if (from_p.count(s) && to_q.count(s)) pruned.states.insert(s);
    for (const WeightedEdge& e : g.edges)
        if (pruned.states.count(e.src) && pruned.states.count(e.dst))
            pruned.edges.push_back(e);
    auto padj = adjacency(pruned);

    std::vector<CycleClass> cycles;
    enumerate_cycles(pruned, padj, cycles);

    bool found = false;
    auto try_path = [&](const std::set<StateId>& path_states, const BigInt& b) {
        if (found || b > len) return;
        BigInt residual = len - b;
        if (residual == 0) {
            found = true;
            return;
        }
        // gcd over every cycle transitively connected to the path: if that
        // cannot divide the residual, no support can.
        std::set<StateId> closure = path_states;
        BigInt closure_gcd = 0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const CycleClass& c : cycles) {
                bool touches = false;
                for (StateId s : c.states)
                    if (closure.count(s)) {
                        touches = true;
                        break;
                    }
                if (!touches) continue;
                std::size_t before = closure.size();
                closure.insert(c.states.begin(), c.states.end());
                closure_gcd = closure_gcd == 0 ? c.weight : gcd(closure_gcd, c.weight);
                if (closure.size() > before) grew = true;
            }
        }
        if (closure_gcd == 0 || residual % closure_gcd != 0) return;

        SupportSearch search{cycles, {}};
        std::vector<std::uint32_t> support;
        std::set<StateId> covered = path_states;
        if (search.search(support, covered, residual)) found = true;
    };

    if (p == q) {
        try_path({p}, 0);
    } else {
        // All simple paths p -> q.
        std::vector<StateId> path{p};
        std::set<StateId> on_path{p};
        BigInt weight = 0;
        auto dfs = [&](auto&& self, StateId v) -> void {
            if (found) return;
            if (v == q) {
                try_path(on_path, weight);
                return;
            }
            auto it = padj.find(v);
            if (it == padj.end()) return;
            for (std::size_t k : it->second) {
                const WeightedEdge& e = pruned.edges[k];
                if (on_path.count(e.dst)) continue;
                if (weight + e.weight > len) continue;
                on_path.insert(e.dst);
                weight += e.weight;
                self(self, e.dst);
                weight -= e.weight;
                on_path.erase(e.dst);
                if (found) return;
            }
        };
        dfs(dfs, p);
    }
    return found;
}

}  // namespace

DenseReachTable::DenseReachTable(const UnaryGraph& g, StateId source,
                                 std::uint64_t max_len)
    : max_len_(max_len) {
    index_of_.assign(g.states.begin(), g.states.end());
    std::size_t words = static_cast<std::size_t>(max_len / 64 + 1);
    bits_.assign(index_of_.size(), std::vector<std::uint64_t>(words, 0));

    auto slot = [&](StateId s) { return state_slot(s); };
    auto test = [&](std::size_t st, std::uint64_t t) {
        return (bits_[st][t >> 6] >> (t & 63)) & 1u;
    };
    auto set = [&](std::size_t st, std::uint64_t t) {
        bits_[st][t >> 6] |= std::uint64_t{1} << (t & 63);
    };

    if (!g.states.count(source)) return;
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> adj(
        index_of_.size());
    for (const WeightedEdge& e : g.edges) {
        if (e.weight > max_len) continue;
        adj[slot(e.src)].push_back(
            {static_cast<std::uint64_t>(e.weight), slot(e.dst)});
    }

    set(slot(source), 0);
    for (std::uint64_t t = 0; t <= max_len; ++t) {
        for (std::size_t st = 0; st < bits_.size(); ++st) {
            if (bits_[st][t >> 6] == 0 || !test(st, t)) continue;
            for (const auto& [w, dst] : adj[st])
                if (t + w <= max_len) set(dst, t + w);
        }
    }
}

std::size_t DenseReachTable::state_slot(StateId s) const {
    auto it = std::lower_bound(index_of_.begin(), index_of_.end(), s);
    if (it == index_of_.end() || *it != s)
        throw std::out_of_range("state not in unary graph");
    return static_cast<std::size_t>(it - index_of_.begin());
}

bool DenseReachTable::reachable(StateId q, std::uint64_t len) const {
    if (len > max_len_) throw std::out_of_range("length beyond table range");
    std::size_t st = state_slot(q);
    return (bits_[st][len >> 6] >> (len & 63)) & 1u;
}

bool coin_combination_exists(std::vector<BigInt> weights, const BigInt& target) {
    std::map<BigInt, bool> memo;
    return coin_decide(weights, target, &memo);
}

bool a_path_exists(const UnaryGraph& g, StateId p, StateId q, const BigInt& len,
                   UnaryStrategy strategy, const UnaryConfig& config,
                   OracleCounters* stats) {
    if (len < 1) throw PreconditionError("unary query length must be >= 1");
    if (!g.states.count(p) || !g.states.count(q)) return false;

    if (stats) ++stats->calls;
    if (strategy == UnaryStrategy::Auto) {
        if (is_unary_deterministic(g)) {
            if (stats) ++stats->dfa_fast;
            return dfa_fast_path(g, p, q, len);
        }
        strategy = len <= config.dp_threshold ? UnaryStrategy::DenseDp
                                              : UnaryStrategy::CycleSearch;
    }
    if (strategy == UnaryStrategy::DenseDp) {
        if (len > (BigInt(1) << 26))
            throw PreconditionError("dense table too large for this length");
        if (stats) ++stats->dense_dp;
        std::uint64_t l = static_cast<std::uint64_t>(len);
        DenseReachTable table(g, p, l);
        return table.reachable(q, l);
    }
    if (stats) ++stats->cycle_search;
    return cycle_search(g, p, q, len);
}

}  // namespace recomp
