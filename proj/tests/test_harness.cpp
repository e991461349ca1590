#include <doctest.h>

#include "helpers.hpp"
#include "recomp/harness.hpp"

using namespace recomp;

namespace {
constexpr std::size_t kCap = std::size_t{1} << 20;
}

TEST_CASE("generation is deterministic in the seed") {
    GenParams p;
    p.seed = 1234;
    p.plant_accepting_path = true;
    Instance a = gen_instance(p);
    Instance b = gen_instance(p);
    CHECK(serialize_instance(a) == serialize_instance(b));
    p.seed = 1235;
    Instance c = gen_instance(p);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("planted instances accept by construction") {
    for (const GenParams& base : testutil::corpus(9300, 40)) {
        GenParams p = base;
        p.plant_accepting_path = true;
        Instance inst = gen_instance(p);
        CAPTURE(p.seed);
        CHECK(brute_force_accepts(inst, kCap));
    }
}

TEST_CASE("the corpus contains both accepting and rejecting instances") {
    int accepted = 0, rejected = 0;
    for (const GenParams& p : testutil::corpus(9400, 60)) {
        Instance inst = gen_instance(p);
        (brute_force_accepts(inst, kCap) ? accepted : rejected)++;
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
}

TEST_CASE("forced-DFA instances are deterministic") {
    for (const GenParams& base : testutil::corpus(9500, 40, /*dfa_only=*/true)) {
        Instance inst = gen_instance(base);
        CAPTURE(base.seed);
        CHECK(is_deterministic(inst.automaton, inst.grammar));
    }
}

TEST_CASE("budget refusal carries the exact length") {
    GenParams p;
    p.seed = 7;
    p.target_eval_len_log2 = 11;
    Instance inst = gen_instance(p);
    if (inst.root_len() > 16) {
        try {
            brute_force_accepts(inst, 16);
            FAIL("expected BudgetExceeded");
        } catch (const BudgetExceeded& e) {
            CHECK(e.required == inst.root_len());
        }
    }
}
