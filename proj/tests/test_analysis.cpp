#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "helpers.hpp"
#include "rlclab/analysis.hpp"
#include "rlclab/codec.hpp"

using namespace rlclab;
using namespace rlclab::analysis;

using testutil::p_ns_oracle;
using testutil::p_s_oracle_422;

namespace {

LinkParams link(double eps, std::size_t k, std::uint32_t q,
                std::optional<std::size_t> n_max = std::nullopt) {
    return LinkParams{eps, k, q, n_max};
}

}  // namespace

TEST_CASE("p_ns matches exhaustive enumeration") {
    CHECK(p_ns_oracle(2, 2, 2) == 0.375);
    CHECK(p_ns_oracle(3, 2, 2) == 0.65625);
    CHECK(p_ns(2, 2, 2) == Catch::Approx(0.375).epsilon(1e-14));
    CHECK(p_ns(3, 2, 2) == Catch::Approx(0.65625).epsilon(1e-14));
    CHECK(p_ns(3, 2, 3) == Catch::Approx(p_ns_oracle(3, 2, 3)).epsilon(1e-13));
    CHECK(p_ns(1, 2, 2) == 0.0);
    CHECK(p_ns(0, 1, 2) == 0.0);
}

TEST_CASE("p_s matches the subset-plus-P enumeration oracle") {
    CHECK(p_s_oracle_422() == 0.5625);
    CHECK(p_s(4, 2, 2, 2) == Catch::Approx(0.5625).epsilon(1e-14));
    CHECK(p_s(5, 5, 5, 2) == 1.0);
    CHECK(p_s(6, 6, 3, 2) == 1.0);
    CHECK(p_s(4, 1, 2, 2) == 0.0);  // N_D < K never decodes
    CHECK_THROWS_AS(p_s(3, 4, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(p_s(3, 2, 4, 2), std::invalid_argument);
}

TEST_CASE("p_s dominates p_ns") {
    for (std::uint32_t q : {2u, 3u}) {
        for (std::size_t k = 1; k <= 6; ++k) {
            for (std::size_t n = k; n <= k + 6; ++n) {
                for (std::size_t n_d = 0; n_d <= n; ++n_d) {
                    CHECK(p_s(n, n_d, k, q) >= p_ns(n_d, k, q) - 1e-15);
                }
            }
        }
    }
}

TEST_CASE("binomial terms agree with an exact big-integer reference") {
    namespace mp = boost::multiprecision;
    auto exact_binomial = [](std::size_t n, std::size_t k) {
        mp::cpp_int r = 1;
        for (std::size_t i = 0; i < k; ++i) {
            r *= static_cast<unsigned>(n - i);
            r /= static_cast<unsigned>(i + 1);
        }
        return r;
    };
    for (const std::size_t n : {10u, 60u, 127u, 256u, 511u, 512u}) {
        for (const std::size_t k :
             {std::size_t{0}, std::size_t{1}, n / 4, n / 2, n - 1, n}) {
            const long double expect = static_cast<long double>(exact_binomial(n, k));
            const long double got = std::exp(analysis::detail::log_binomial(n, k));
            CHECK(std::abs(got - expect) <= 1e-12L * expect);
        }
    }
}

TEST_CASE("cdf edge cases and monotonicity") {
    SECTION("perfect channel decodes at K") {
        CHECK(cdf_F(5, link(0.0, 5, 2)) == 1.0);
        CHECK(cdf_F(9, link(0.0, 5, 2)) == 1.0);
    }
    SECTION("fully erasing channel never decodes") {
        CHECK(cdf_F(8, link(1.0, 3, 2)) == 0.0);
    }
    SECTION("invalid arguments") {
        CHECK_THROWS_AS(cdf_F(3, link(0.1, 4, 2)), std::invalid_argument);
        CHECK_THROWS_AS(cdf_F(4, link(-0.5, 4, 2)), std::invalid_argument);
    }
    SECTION("nondecreasing in N, nonincreasing in eps, always within [0, 1]") {
        for (const double eps : {0.0, 0.05, 0.3, 0.7, 0.99}) {
            double prev = 0.0;
            for (std::size_t n = 4; n <= 40; ++n) {
                const double v = cdf_F(n, link(eps, 4, 2));
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                CHECK(v >= prev);
                prev = v;
            }
        }
        for (std::size_t n : {6u, 12u, 24u}) {
            double prev = 1.0;
            for (const double eps : {0.0, 0.1, 0.2, 0.4, 0.8, 1.0}) {
                const double v = cdf_F(n, link(eps, 4, 2));
                CHECK(v <= prev + 1e-15);
                prev = v;
            }
        }
    }
}

TEST_CASE("pmf telescopes and stays a probability") {
    const LinkParams lk = link(0.2, 3, 2);
    long double sum = 0.0L;
    for (std::size_t n = 3; n <= 60; ++n) {
        const double f = pmf_f(n, lk);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        sum += f;
    }
    CHECK(static_cast<double>(sum) == Catch::Approx(cdf_F(60, lk)).epsilon(1e-12));

    CHECK(pmf_f(3, link(0.0, 3, 2)) == 1.0);
    CHECK(pmf_f(4, link(0.0, 3, 2)) == 0.0);
}

TEST_CASE("cdf and pmf match a Monte Carlo oracle") {
    // K=2, q=2, eps=0.1: simulate fresh full-rank generators and Bernoulli
    // receptions, recording decodability after each packet count.
    const std::size_t k = 2;
    const double eps = 0.1;
    const std::size_t n_hi = 6;
    const std::size_t trials = 300000;
    RngStream rng(515151);
    std::vector<std::size_t> decodable_by(n_hi + 1, 0);  // CDF counts
    std::vector<std::size_t> first_at(n_hi + 2, 0);      // PMF counts
    for (std::size_t t = 0; t < trials; ++t) {
        GeneratorSpec gs;
        gs.kind = GeneratorKind::FullRankNonSystematic;
        gs.k = k;
        gs.seed = rng.next_u64();
        gs.field = FieldSpec(2);
        CodeState code(gs);
        RankTracker tracker(k, gs.field);
        std::size_t first = 0;
        for (std::size_t n = 1; n <= n_hi; ++n) {
            const auto row = code.next_row();
            if (rng.next_double() >= eps) {
                tracker.add_row(row);
            }
            if (tracker.complete()) {
                if (first == 0) {
                    first = n;
                }
                ++decodable_by[n];
            }
        }
        ++first_at[first == 0 ? n_hi + 1 : first];
    }
    const LinkParams lk = link(eps, k, 2);
    for (std::size_t n = k; n <= n_hi; ++n) {
        const double expect_f = cdf_F(n, lk);
        const double got_f = static_cast<double>(decodable_by[n]) / trials;
        const double sigma_f = std::sqrt(expect_f * (1 - expect_f) / trials);
        INFO("CDF at N=" << n);
        CHECK(std::abs(got_f - expect_f) <= 3.0 * sigma_f);

        const double expect_p = pmf_f(n, lk);
        const double got_p = static_cast<double>(first_at[n]) / trials;
        const double sigma_p = std::sqrt(expect_p * (1 - expect_p) / trials);
        INFO("PMF at N=" << n);
        CHECK(std::abs(got_p - expect_p) <= 3.0 * sigma_p);
    }
}

TEST_CASE("decoding probability") {
    CHECK(decoding_prob(link(0.0, 4, 2, 4)) == 1.0);
    CHECK_THROWS_AS(decoding_prob(link(0.1, 4, 2)), std::invalid_argument);
    double prev = 0.0;
    for (std::size_t n_max = 4; n_max <= 30; ++n_max) {
        const double v = decoding_prob(link(0.2, 4, 2, n_max));
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev > 0.9999);
}

TEST_CASE("intercept probability") {
    SECTION("perfect eavesdropper channel intercepts surely") {
        CHECK(intercept_prob(link(0.3, 4, 2), link(0.0, 4, 2), 12) ==
              Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("fully erased eavesdropper never intercepts") {
        CHECK(intercept_prob(link(0.3, 4, 2), link(1.0, 4, 2), 12) == 0.0);
    }
    SECTION("parameter mismatch throws") {
        CHECK_THROWS_AS(intercept_prob(link(0.3, 4, 2), link(0.3, 5, 2), 12),
                        std::invalid_argument);
        CHECK_THROWS_AS(intercept_prob(link(0.3, 4, 2), link(0.3, 4, 3), 12),
                        std::invalid_argument);
    }
    SECTION("symmetric links: formula reduces to one CDF") {
        const LinkParams lk = link(0.15, 3, 2, 10);
        long double expect = 0.0L;
        for (std::size_t n = 3; n <= 10; ++n) {
            expect += pmf_f(n, lk) * cdf_F(n, lk);
        }
        expect += cdf_F(10, lk) * (1.0 - cdf_F(10, lk));
        CHECK(intercept_prob(lk, lk, 10) ==
              Catch::Approx(static_cast<double>(expect)).epsilon(1e-10));
    }
    SECTION("in [0, 1] across a grid") {
        for (const double ed : {0.05, 0.25, 0.6}) {
            for (const double ee : {0.05, 0.25, 0.6}) {
                const double v = intercept_prob(link(ed, 5, 2), link(ee, 5, 2), 20);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("N_max planner") {
    SECTION("perfect channel needs exactly K") {
        const auto plan = plan_nmax(0.99, link(0.0, 7, 2));
        CHECK(plan.n_max == 7);
        CHECK(plan.achieved == 1.0);
    }
    SECTION("witness brackets the target") {
        for (const double eps : {0.05, 0.1, 0.3}) {
            const auto plan = plan_nmax(0.99, link(eps, 20, 2));
            CHECK(plan.achieved >= 0.99);
            CHECK(plan.previous < 0.99);
            CHECK(plan.achieved == Catch::Approx(cdf_F(plan.n_max, link(eps, 20, 2))));
        }
    }
    SECTION("round trip through decoding_prob") {
        const auto plan = plan_nmax(0.9, link(0.2, 5, 2));
        CHECK(decoding_prob(link(0.2, 5, 2, plan.n_max)) >= 0.9);
    }
    SECTION("staircase: N_max nondecreasing in eps") {
        std::size_t prev = 0;
        for (double eps = 0.0; eps < 0.55; eps += 0.05) {
            const auto plan = plan_nmax(0.99, link(eps, 20, 2));
            CHECK(plan.n_max >= prev);
            prev = plan.n_max;
        }
    }
    SECTION("unreachable targets throw") {
        CHECK_THROWS_AS(plan_nmax(0.99, link(1.0, 4, 2)), std::invalid_argument);
        CHECK_THROWS_AS(plan_nmax(0.0, link(0.1, 4, 2)), std::invalid_argument);
        CHECK_THROWS_AS(plan_nmax(1.0, link(0.1, 4, 2)), std::invalid_argument);
    }
}
