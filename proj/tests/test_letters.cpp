#include <doctest.h>

#include "recomp/letters.hpp"

using namespace recomp;

TEST_CASE("markers are singletons with fixed identity") {
    Alphabet ab;
    CHECK(ab.dollar() == ab.original("$"));
    CHECK(ab.hash_marker() == ab.original("#"));
    CHECK(ab.is_marker(ab.dollar()));
    CHECK(ab.display(ab.dollar()) == "$");
    CHECK(ab.display(ab.hash_marker()) == "#");
}

TEST_CASE("pair and block letters are interned canonically") {
    Alphabet ab;
    LetterId a = ab.original("a");
    LetterId b = ab.original("b");

    LetterId p1 = ab.pair_letter(a, b);
    LetterId p2 = ab.pair_letter(a, b);
    CHECK(p1 == p2);
    CHECK(ab.pair_letter(b, a) != p1);

    LetterId k1 = ab.block_letter(a, 3);
    CHECK(ab.block_letter(a, 3) == k1);
    CHECK(ab.block_letter(a, 4) != k1);
    CHECK(ab.block_letter(b, 3) != k1);

    CHECK(ab.display(p1) == "(a,b)");
    CHECK(ab.display(k1) == "[a,3]");
    CHECK(ab.display(ab.pair_letter(k1, b)) == "([a,3],b)");
}

TEST_CASE("markers never participate in derived letters") {
    Alphabet ab;
    LetterId a = ab.original("a");
    CHECK_THROWS_AS(ab.pair_letter(ab.dollar(), a), PreconditionError);
    CHECK_THROWS_AS(ab.pair_letter(a, ab.hash_marker()), PreconditionError);
    CHECK_THROWS_AS(ab.block_letter(ab.dollar(), 2), PreconditionError);
    CHECK_THROWS_AS(ab.block_letter(a, 0), PreconditionError);
}

TEST_CASE("letters carry their construction history") {
    Alphabet ab;
    LetterId a = ab.original("a");
    LetterId b = ab.original("b");
    LetterId p = ab.pair_letter(a, b);
    LetterId k = ab.block_letter(p, BigInt(1) << 40);

    CHECK(ab[p].kind == LetterKind::Pair);
    CHECK(ab[p].left == a);
    CHECK(ab[p].right == b);
    CHECK(ab[k].kind == LetterKind::Block);
    CHECK(ab[k].left == p);
    CHECK(ab[k].exponent == BigInt(1) << 40);
}
