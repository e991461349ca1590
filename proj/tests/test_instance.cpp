#include <doctest.h>

#include "helpers.hpp"
#include "recomp/instance.hpp"

using namespace recomp;

namespace {

/// Raw parts for {X1 -> a} with a two-state automaton whose single edge is X1.
ParsedParts tiny_parts() {
    auto alphabet = std::make_shared<Alphabet>();
    LetterId a = alphabet->original("a");
    Grammar g = GrammarBuilder(1, alphabet)
                    .set_production(1, Rhs{{Symbol::make_letter(a)}})
                    .build();
    AutomatonBuilder ab;
    ab.add_state(0).add_state(1);
    ab.set_start(0).set_accept(1);
    ab.add_transition(0, Symbol::make_nonterminal(1), 1);
    return {alphabet, std::move(g), ab.build()};
}

}  // namespace

TEST_CASE("normalization wraps, funnels and pads") {
    ParsedParts parts = tiny_parts();
    Instance inst = normalize_input(parts.grammar, parts.automaton, parts.alphabet);
    const Grammar& g = inst.grammar;

    // bottom padding lifts n to the floor of 4
    CHECK(g.n() == 4);
    const Rhs& root = g.production(g.n());
    REQUIRE(root.size() == 3);
    CHECK(root.symbols[0].letter == inst.alphabet->dollar());
    CHECK(root.symbols[1].is_nonterminal());
    CHECK(root.symbols[2].letter == inst.alphabet->hash_marker());

    // two original states plus the marker funnel
    CHECK(inst.automaton.states().size() == 4);
    CHECK(validate_instance(inst).empty());

    // the normalized instance is its own baseline
    CHECK(check_slp_invariants(g, *inst.original).empty());

    // root string is $ a #
    auto w = g.decompress(g.n(), 16);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == inst.alphabet->dollar());
    CHECK(w[1] == inst.alphabet->original("a"));
    CHECK(w[2] == inst.alphabet->hash_marker());
}

TEST_CASE("multiply-labelled nonterminals are duplicated") {
    auto alphabet = std::make_shared<Alphabet>();
    LetterId a = alphabet->original("a");
    LetterId b = alphabet->original("b");
    Grammar g = GrammarBuilder(2, alphabet)
                    .set_production(1, Rhs{{Symbol::make_letter(a)}})
                    .set_production(2, Rhs{{Symbol::make_nonterminal(1),
                                            Symbol::make_letter(b)}})
                    .build();
    AutomatonBuilder ab;
    for (StateId s = 0; s < 3; ++s) ab.add_state(s);
    ab.set_start(0).set_accept(2);
    ab.add_transition(0, Symbol::make_nonterminal(1), 1);
    ab.add_transition(1, Symbol::make_nonterminal(1), 2);
    Instance inst = normalize_input(g, ab.build(), alphabet);

    CHECK(validate_instance(inst).empty());
    // the two X1 uses now carry distinct labels with identical evals
    std::vector<std::uint32_t> labels;
    for (const Transition& t : inst.automaton.transitions())
        if (t.label.is_nonterminal()) labels.push_back(t.label.index);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] != labels[1]);
    CHECK(inst.grammar.decompress(labels[0], 16) ==
          inst.grammar.decompress(labels[1], 16));
}

TEST_CASE("empty nonterminals are pruned from right-hand sides") {
    auto alphabet = std::make_shared<Alphabet>();
    LetterId a = alphabet->original("a");
    Grammar g = GrammarBuilder(3, alphabet)
                    .set_production(1, Rhs{})
                    .set_production(2, Rhs{{Symbol::make_letter(a)}})
                    .set_production(3, Rhs{{Symbol::make_nonterminal(1),
                                            Symbol::make_nonterminal(2)}})
                    .build();
    AutomatonBuilder ab;
    ab.add_state(0).add_state(1);
    ab.set_start(0).set_accept(1);
    ab.add_transition(0, Symbol::make_nonterminal(3), 1);
    Instance inst = normalize_input(g, ab.build(), alphabet);
    CHECK(validate_instance(inst).empty());
    for (std::uint32_t i = 1; i <= inst.grammar.n(); ++i)
        for (const Symbol& s : inst.grammar.production(i).symbols)
            if (s.is_nonterminal()) CHECK(inst.grammar.eval_len(s.index) > 0);
}

TEST_CASE("markers in raw input are rejected") {
    auto alphabet = std::make_shared<Alphabet>();
    Grammar g = GrammarBuilder(1, alphabet)
                    .set_production(
                        1, Rhs{{Symbol::make_letter(alphabet->dollar())}})
                    .build();
    AutomatonBuilder ab;
    ab.add_state(0).add_state(1);
    ab.set_start(0).set_accept(1);
    ab.add_transition(0, Symbol::make_nonterminal(1), 1);
    CHECK_THROWS_AS(normalize_input(g, ab.build(), alphabet), MalformedInputError);
}

TEST_CASE("normalized generator output satisfies all invariants") {
    for (const GenParams& p : testutil::corpus(8400, 40)) {
        Instance inst = gen_instance(p);
        CAPTURE(p.seed);
        CHECK(validate_instance(inst).empty());
        CHECK(inst.grammar.n() >= 4);
        CHECK(inst.grammar.n() <= 8);
    }
}

TEST_CASE("normalized acceptance equals raw acceptance with markers added") {
    // raw: X1 -> a, automaton accepts exactly "a" via the nonterminal edge
    ParsedParts parts = tiny_parts();
    Instance inst = normalize_input(parts.grammar, parts.automaton, parts.alphabet);
    CHECK(brute_force_accepts(inst, 1 << 10));
}
