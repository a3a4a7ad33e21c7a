#include <catch2/catch_amalgamated.hpp>

#include "unmate/rational.hpp"

using unmate::Rat;
using unmate::mu;

TEST_CASE("rational arithmetic is exact and reduced") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-1, -2) == Rat(1, 2));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(7, 15) * Rat(15, 7) == Rat(1));
    CHECK(Rat(1, 2) - Rat(2, 3) == Rat(-1, 6));
    CHECK(Rat(3, 4) / Rat(3, 2) == Rat(1, 2));
    CHECK(Rat(22, 60).str() == "11/30");
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("mod1 picks the representative in [0,1)") {
    CHECK(Rat(-1, 6).mod1() == Rat(5, 6));
    CHECK(Rat(7, 3).mod1() == Rat(1, 3));
    CHECK(Rat(1).mod1() == Rat(0));
    CHECK(Rat(0).mod1() == Rat(0));
}

TEST_CASE("parse accepts p/q and integers, rejects decimals") {
    CHECK(Rat::parse("7/60") == Rat(7, 60));
    CHECK(Rat::parse("3") == Rat(3));
    CHECK(Rat::parse("-1/4") == Rat(-1, 4));
    CHECK_THROWS_AS(Rat::parse("0.25"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("x/y"), std::invalid_argument);
}

TEST_CASE("angle map mu") {
    CHECK(mu(Rat(1, 12), 2) == Rat(1, 6));
    CHECK(mu(Rat(0), 5) == Rat(0));
    CHECK(mu(Rat(2, 3), 2) == Rat(1, 3));
    CHECK_THROWS_AS(mu(Rat(1, 2), 1), std::invalid_argument);
}

TEST_CASE("ordering is exact") {
    CHECK(Rat(1, 3) < Rat(2, 5));
    CHECK(Rat(7, 60) < Rat(11, 30));
    CHECK_FALSE(Rat(1, 2) < Rat(1, 2));
}
