#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "rlclab/rng.hpp"

using rlclab::RngStream;

TEST_CASE("streams are deterministic") {
    RngStream a(42);
    RngStream b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("distinct keys give distinct sequences") {
    RngStream a(1);
    RngStream b(2);
    std::size_t same = 0;
    for (int i = 0; i < 64; ++i) {
        same += a.next_u64() == b.next_u64();
    }
    CHECK(same == 0);
}

TEST_CASE("derived streams are independent of the parent") {
    RngStream parent(7);
    RngStream child = parent.child(0);
    CHECK(child.key() != parent.key());
    CHECK(parent.child(0).key() == child.key());
    CHECK(parent.child(1).key() != child.key());
    // a child's first outputs must not mirror the parent's
    RngStream p2(7);
    std::size_t same = 0;
    for (int i = 0; i < 64; ++i) {
        same += p2.next_u64() == child.next_u64();
    }
    CHECK(same == 0);
}

TEST_CASE("next_below stays in range and looks uniform") {
    RngStream rng(123);
    std::vector<std::size_t> counts(10, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto v = rng.next_below(10);
        REQUIRE(v < 10);
        ++counts[v];
    }
    // each bucket expects 10000 with sigma ~ 95; allow 5 sigma
    for (const std::size_t c : counts) {
        CHECK(c > 9500);
        CHECK(c < 10500);
    }
}

TEST_CASE("next_double is in [0,1) with sane mean") {
    RngStream rng(9);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const double v = rng.next_double();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        sum += v;
    }
    CHECK(sum / draws == Catch::Approx(0.5).margin(0.005));
}
