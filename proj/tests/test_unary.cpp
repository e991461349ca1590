#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "recomp/unary.hpp"

using namespace recomp;

namespace {

UnaryGraph graph(std::initializer_list<WeightedEdge> edges,
                 std::initializer_list<StateId> states) {
    UnaryGraph g;
    g.states.insert(states.begin(), states.end());
    for (const WeightedEdge& e : edges) g.edges.push_back(e);
    return g;
}

UnaryGraph random_graph(std::mt19937_64& rng, std::uint32_t max_states,
                        std::uint64_t max_weight) {
    UnaryGraph g;
    std::uint32_t n = 2 + rng() % (max_states - 1);
    for (StateId s = 0; s < n; ++s) g.states.insert(s);
    std::uint32_t edges = 1 + rng() % (2 * n);
    for (std::uint32_t e = 0; e < edges; ++e) {
        StateId src = static_cast<StateId>(rng() % n);
        StateId dst = static_cast<StateId>(rng() % n);
        BigInt w = 1 + rng() % max_weight;
        g.edges.push_back({src, w, dst});
    }
    return g;
}

}  // namespace

TEST_CASE("loop plus edge: reachable weights are 2k+3") {
    // self-loop weight 2 at p, edge weight 3 p->q
    UnaryGraph g = graph({{0, 2, 0}, {0, 3, 1}}, {0, 1});
    // frozen from the BFS oracle over weights <= 10:
    for (std::uint64_t len = 1; len <= 10; ++len) {
        bool expect = testutil::unary_bfs(g, 0, 1, len);
        CHECK(expect == (len >= 3 && (len - 3) % 2 == 0));
        CHECK(a_path_exists(g, 0, 1, len) == expect);
        CHECK(a_path_exists(g, 0, 1, len, UnaryStrategy::DenseDp) == expect);
        CHECK(a_path_exists(g, 0, 1, len, UnaryStrategy::CycleSearch) == expect);
    }
}

TEST_CASE("single edge answers its own weight only") {
    UnaryGraph g = graph({{0, 7, 1}}, {0, 1});
    CHECK(a_path_exists(g, 0, 1, 7));
    CHECK(!a_path_exists(g, 0, 1, 6));
    CHECK(!a_path_exists(g, 0, 1, 8));
}

TEST_CASE("no edges means no positive-weight walk, even for p == q") {
    UnaryGraph g = graph({}, {0, 1});
    CHECK(!a_path_exists(g, 0, 0, 5));
    CHECK(!a_path_exists(g, 0, 0, 5, UnaryStrategy::CycleSearch));
}

TEST_CASE("closed walks through p need a cycle containing p") {
    // q has a self-loop, p -> q -> p is not closed at p without the back edge
    UnaryGraph g = graph({{0, 1, 1}, {1, 1, 1}}, {0, 1});
    CHECK(!a_path_exists(g, 0, 0, 2));
    UnaryGraph g2 = graph({{0, 1, 1}, {1, 1, 1}, {1, 1, 0}}, {0, 1});
    CHECK(a_path_exists(g2, 0, 0, 2));   // p -> q -> p
    CHECK(a_path_exists(g2, 0, 0, 17));  // pump the self-loop
}

TEST_CASE("huge lengths go through cycle search") {
    BigInt big = (BigInt(1) << 62) + 1;
    UnaryGraph g = graph({{0, 2, 0}, {0, 3, 1}}, {0, 1});
    CHECK(a_path_exists(g, 0, 1, big));       // odd: 2k + 3 reaches it
    CHECK(!a_path_exists(g, 0, 1, big + 1));  // even but minus 3 is odd

    // two coprime-ish cycles: 6 and 10 only reach even residuals over gcd 2
    UnaryGraph g2 = graph({{0, 6, 0}, {0, 10, 0}, {0, 1, 1}}, {0, 1});
    CHECK(a_path_exists(g2, 0, 1, BigInt("1000000000000000001")));
    CHECK(!a_path_exists(g2, 0, 1, BigInt("1000000000000000000")));
}

TEST_CASE("deterministic fast path agrees with the table") {
    std::mt19937_64 rng(424242);
    for (int round = 0; round < 200; ++round) {
        UnaryGraph g;
        std::uint32_t n = 2 + rng() % 6;
        for (StateId s = 0; s < n; ++s) g.states.insert(s);
        for (StateId s = 0; s < n; ++s) {
            if (rng() % 5 == 0) continue;  // some states dead-end
            g.edges.push_back(
                {s, BigInt(1 + rng() % 9), static_cast<StateId>(rng() % n)});
        }
        REQUIRE(is_unary_deterministic(g));
        StateId p = rng() % n, q = rng() % n;
        std::uint64_t len = 1 + rng() % 2000;
        bool expect = testutil::unary_bfs(g, p, q, len);
        CHECK(a_path_exists(g, p, q, len) == expect);
        CHECK(a_path_exists(g, p, q, len, UnaryStrategy::DenseDp) == expect);
        CHECK(a_path_exists(g, p, q, len, UnaryStrategy::CycleSearch) == expect);
    }
}

TEST_CASE("strategies agree with BFS on random weighted graphs") {
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 200; ++round) {
        UnaryGraph g = random_graph(rng, 6, 12);
        StateId p = rng() % g.states.size();
        StateId q = rng() % g.states.size();
        std::uint64_t len = 1 + rng() % 300;
        bool expect = testutil::unary_bfs(g, p, q, len);
        CAPTURE(round);
        CHECK(a_path_exists(g, p, q, len, UnaryStrategy::DenseDp) == expect);
        CHECK(a_path_exists(g, p, q, len, UnaryStrategy::CycleSearch) == expect);
    }
}

TEST_CASE("coin combinations") {
    CHECK(coin_combination_exists({3, 5}, 8));
    CHECK(coin_combination_exists({3, 5}, 0));
    CHECK(!coin_combination_exists({3, 5}, 7));
    CHECK(!coin_combination_exists({3, 5}, 4));
    CHECK(coin_combination_exists({3, 5}, 53));
    CHECK(!coin_combination_exists({6, 10, 15}, 29));  // the Frobenius number
    CHECK(coin_combination_exists({6, 10, 15}, 30));
    CHECK(coin_combination_exists({6, 10, 15}, BigInt("999999999999999991")));
    CHECK(!coin_combination_exists({4, 6}, BigInt("999999999999999999")));  // odd
    CHECK(!coin_combination_exists({}, 1));
    // brute-force agreement on small cases
    std::mt19937_64 rng(99);
    for (int round = 0; round < 300; ++round) {
        std::vector<BigInt> ws;
        std::size_t k = 1 + rng() % 4;
        for (std::size_t i = 0; i < k; ++i) ws.push_back(1 + rng() % 12);
        std::uint64_t target = rng() % 60;
        // dp oracle
        std::vector<char> dp(target + 1, 0);
        dp[0] = 1;
        for (std::uint64_t t = 1; t <= target; ++t)
            for (const BigInt& w : ws)
                if (w <= t && dp[t - static_cast<std::uint64_t>(w)]) dp[t] = 1;
        CHECK(coin_combination_exists(ws, target) == (dp[target] != 0));
    }
}

TEST_CASE("restrict_to_letter keeps exactly the letter and its powers") {
    Instance inst = testutil::make_instance(
        "slp n=2\nX1 -> b a\nX2 -> $ X1 #\n",
        "states 0 1 2 3 4\nstart 0\naccept 4\nrelaxed a\n"
        "trans 0 $ 1\n"
        "trans 1 a 2\n"
        "trans 2 a^3 3\n"
        "trans 2 b 3\n"
        "trans 2 X1 3\n"
        "trans 3 # 4\n");
    LetterId a = inst.alphabet->original("a");
    UnaryGraph g = restrict_to_letter(inst.automaton, a);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].weight + g.edges[1].weight == 4);
    CHECK(g.states == inst.automaton.states());

    LetterId c = inst.alphabet->original("c");
    CHECK(restrict_to_letter(inst.automaton, c).edges.empty());
}
