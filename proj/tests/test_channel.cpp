#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rlclab/channel.hpp"
#include "rlclab/crc32.hpp"
#include "rlclab/rng.hpp"

using namespace rlclab;

TEST_CASE("channel spec validation") {
    CHECK_THROWS_AS(ChannelSpec(-0.1, 8), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(1.1, 8), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(0.5, 0), std::invalid_argument);
}

TEST_CASE("symbol error probability") {
    CHECK(symbol_error_prob(ChannelSpec(0.0, 128)) == 0.0);
    CHECK(symbol_error_prob(ChannelSpec(0.3, 1)) == Catch::Approx(0.3));
    // independent route: 1 - exp(ln(0.9)/128) at extended precision
    const long double expect = -std::expm1(std::log(0.9L) / 128.0L);
    CHECK(symbol_error_prob(ChannelSpec(0.1, 128)) ==
          Catch::Approx(static_cast<double>(expect)).epsilon(1e-12));
    CHECK(symbol_error_prob(ChannelSpec(0.1, 128)) == Catch::Approx(8.2279e-4).epsilon(1e-4));
    CHECK(symbol_error_prob(ChannelSpec(1.0, 4)) == 1.0);
}

TEST_CASE("transmit edge cases") {
    const FieldSpec f2(2);
    RngStream rng(1);
    std::vector<Fel> row{1, 0, 1, 1};

    SECTION("perfect channel delivers the row untouched") {
        const Reception r = transmit(row, ChannelSpec(0.0, 4), f2, rng);
        CHECK(r.clean);
        CHECK(r.payload == row);
        CHECK(r.error_vector == std::vector<Fel>(4, 0));
    }

    SECTION("epsilon 1 with one symbol always corrupts") {
        for (int i = 0; i < 50; ++i) {
            const Reception r = transmit(std::vector<Fel>{1}, ChannelSpec(1.0, 1), f2, rng);
            CHECK(!r.clean);
            CHECK(r.payload[0] == 0);
            CHECK(r.error_vector[0] == 1);
        }
    }

    SECTION("length mismatch throws") {
        CHECK_THROWS_AS(transmit(row, ChannelSpec(0.1, 5), f2, rng), std::invalid_argument);
    }
}

TEST_CASE("reception bookkeeping is consistent") {
    RngStream rng(2);
    for (const std::uint32_t q : {2u, 5u}) {
        const FieldSpec f(q);
        const ChannelSpec c(0.4, 16);
        std::vector<Fel> row(16);
        for (auto& v : row) {
            v = static_cast<Fel>(rng.next_below(q));
        }
        for (int i = 0; i < 200; ++i) {
            const Reception r = transmit(row, c, f, rng);
            bool all_zero = true;
            for (std::size_t s = 0; s < row.size(); ++s) {
                CHECK(r.payload[s] == f.add(row[s], r.error_vector[s]));
                all_zero = all_zero && r.error_vector[s] == 0;
            }
            CHECK(r.clean == all_zero);
        }
    }
}

TEST_CASE("corrupted symbols in larger fields never keep their value") {
    const FieldSpec f5(5);
    RngStream rng(3);
    std::vector<Fel> row(8, 2);
    for (int i = 0; i < 100; ++i) {
        const Reception r = transmit(row, ChannelSpec(0.9, 8), f5, rng);
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (r.error_vector[s] != 0) {
                CHECK(r.payload[s] != row[s]);
            }
        }
    }
}

TEST_CASE("empirical packet and symbol statistics") {
    const FieldSpec f2(2);
    const ChannelSpec c(0.1, 32);
    const double p = symbol_error_prob(c);
    RngStream rng(7);
    std::vector<Fel> row(32, 0);
    const std::size_t trials = 100000;
    std::size_t clean = 0;
    std::uint64_t weight = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const Reception r = transmit(row, c, f2, rng);
        clean += r.clean;
        for (const Fel e : r.error_vector) {
            weight += e != 0;
        }
    }
    const double p_clean = static_cast<double>(clean) / trials;
    const double sigma = std::sqrt(0.9 * 0.1 / trials);
    CHECK(std::abs(p_clean - 0.9) <= 3.0 * sigma);
    // sparsity premise: mean per-symbol error rate stays near p
    const double rate = static_cast<double>(weight) / (trials * 32.0);
    CHECK(rate <= 2.0 * p);
    CHECK(rate >= 0.5 * p);
}

TEST_CASE("crc32 trailer") {
    RngStream rng(11);

    SECTION("fill then check round-trips") {
        for (int i = 0; i < 50; ++i) {
            std::vector<Fel> row(64);
            for (std::size_t c = 0; c < 32; ++c) {
                row[c] = static_cast<Fel>(rng.next_below(2));
            }
            crc32_fill_trailer(row);
            CHECK(crc32_trailer_valid(row));
            // flipping any single bit breaks it
            const std::size_t flip = rng.next_below(64);
            row[flip] ^= 1u;
            CHECK(!crc32_trailer_valid(row));
        }
    }

    SECTION("crc is F_2-linear so coded combinations keep valid trailers") {
        const FieldSpec f2(2);
        for (int i = 0; i < 50; ++i) {
            std::vector<Fel> a(48), b(48);
            for (std::size_t c = 0; c < 16; ++c) {
                a[c] = static_cast<Fel>(rng.next_below(2));
                b[c] = static_cast<Fel>(rng.next_below(2));
            }
            crc32_fill_trailer(a);
            crc32_fill_trailer(b);
            std::vector<Fel> sum(48);
            for (std::size_t c = 0; c < 48; ++c) {
                sum[c] = f2.add(a[c], b[c]);
            }
            CHECK(crc32_trailer_valid(sum));
        }
    }

    SECTION("matches bitwise polynomial long division") {
        // independent oracle: append 32 zeros and reduce by the generator
        // polynomial x^32 + (0x04C11DB7 terms), msb first
        std::vector<Fel> data{1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};
        std::vector<Fel> padded = data;
        padded.resize(data.size() + 32, 0);
        for (std::size_t i = 0; i + 32 < padded.size() + 1 && i < data.size(); ++i) {
            if (padded[i] == 0) {
                continue;
            }
            padded[i] = 0;
            const std::uint32_t poly = 0x04C11DB7u;
            for (std::size_t b = 0; b < 32; ++b) {
                padded[i + 1 + b] ^= (poly >> (31 - b)) & 1u;
            }
        }
        const std::uint32_t got = crc32_linear(data);
        for (std::size_t b = 0; b < 32; ++b) {
            CHECK(((got >> (31 - b)) & 1u) == padded[data.size() + b]);
        }
    }

    SECTION("too-short rows are rejected") {
        std::vector<Fel> tiny(32, 0);
        CHECK_THROWS_AS(crc32_fill_trailer(tiny), std::invalid_argument);
        CHECK(!crc32_trailer_valid(tiny));
    }
}
