#include <catch2/catch_amalgamated.hpp>

#include "rlclab/field.hpp"

using rlclab::Fel;
using rlclab::FieldSpec;

TEST_CASE("field order must be prime") {
    CHECK_NOTHROW(FieldSpec(2));
    CHECK_NOTHROW(FieldSpec(3));
    CHECK_NOTHROW(FieldSpec(5));
    CHECK_NOTHROW(FieldSpec(65521));
    CHECK_THROWS_AS(FieldSpec(0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(256), std::invalid_argument);
}

TEST_CASE("basic arithmetic examples") {
    const FieldSpec f2(2);
    const FieldSpec f5(5);

    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.add(0, 1) == 1);
    CHECK(f5.add(3, 4) == 2);

    CHECK(f5.mul(1, 4) == 4);
    CHECK(f5.mul(0, 4) == 0);
    CHECK(f5.mul(3, 4) == 2);

    CHECK(f2.inv(1) == 1);
    CHECK(f5.inv(3) == 2);
    CHECK_THROWS_AS(f2.inv(0), std::domain_error);
    CHECK_THROWS_AS(f5.inv(0), std::domain_error);

    CHECK(f2.neg(1) == 1);  // -a == a in characteristic 2
    CHECK(f2.neg(0) == 0);
    CHECK(f5.neg(2) == 3);
}

TEST_CASE("inverses match brute-force search") {
    for (const std::uint32_t q : {2u, 3u, 5u, 7u, 11u}) {
        const FieldSpec f(q);
        for (Fel a = 1; a < q; ++a) {
            Fel found = 0;
            for (Fel b = 1; b < q; ++b) {
                if (f.mul(a, b) == 1) {
                    found = b;
                    break;
                }
            }
            CHECK(f.inv(a) == found);
        }
    }
}

TEST_CASE("field axioms hold exhaustively for small q") {
    for (const std::uint32_t q : {2u, 3u, 5u}) {
        const FieldSpec f(q);
        for (Fel a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) {
                CHECK(f.mul(a, f.inv(a)) == 1);
            }
            for (Fel b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.add(a, b) < q);
                CHECK(f.mul(a, b) < q);
                for (Fel c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("F_2 arithmetic is XOR and AND") {
    const FieldSpec f(2);
    for (Fel a = 0; a < 2; ++a) {
        for (Fel b = 0; b < 2; ++b) {
            CHECK(f.add(a, b) == (a ^ b));
            CHECK(f.mul(a, b) == (a & b));
        }
    }
}
