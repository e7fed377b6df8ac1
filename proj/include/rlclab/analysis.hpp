#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rlclab/field.hpp"

namespace rlclab::analysis {

/// Parameters of one source-to-receiver link.
struct LinkParams {
    double epsilon = 0.0;            ///< packet error probability
    std::size_t k = 1;               ///< source packet count
    std::uint32_t q = 2;             ///< field order
    std::optional<std::size_t> n_max;  ///< transmission cap, when bounded

    void validate() const {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
            throw std::invalid_argument("epsilon must be in [0, 1]");
        }
        if (k < 1) {
            throw std::invalid_argument("K must be positive");
        }
        if (!FieldSpec::is_prime(q)) {
            throw std::invalid_argument("field order must be prime");
        }
        if (n_max && *n_max < k) {
            throw std::invalid_argument("N_max must be at least K");
        }
    }
};

namespace detail {

inline long double lgamma_int(std::size_t n) {
    thread_local std::vector<long double> cache{0.0L, 0.0L};  // lgamma(1), lgamma(2)
    while (cache.size() < n) {
        cache.push_back(cache.back() + std::log(static_cast<long double>(cache.size())));
    }
    return cache[n - 1];
}

inline long double log_binomial(std::size_t n, std::size_t k) {
    return lgamma_int(n + 1) - lgamma_int(k + 1) - lgamma_int(n - k + 1);
}

inline long double p_ns_ld(std::size_t n_d, std::size_t k, std::uint32_t q) {
    if (n_d < k) {
        return 0.0L;
    }
    long double prod = 1.0L;
    for (std::size_t i = 0; i < k; ++i) {
        prod *= 1.0L - std::pow(static_cast<long double>(q),
                                -static_cast<long double>(n_d - i));
    }
    return prod;
}

/// 1 - p_ns to full relative precision (p_ns is often within 1e-12 of 1).
inline long double one_minus_p_ns_ld(std::size_t n_d, std::size_t k, std::uint32_t q) {
    if (n_d < k) {
        return 1.0L;
    }
    const long double log_q = std::log(static_cast<long double>(q));
    long double log_prod = 0.0L;
    for (std::size_t i = 0; i < k; ++i) {
        log_prod += std::log1p(-std::exp(-static_cast<long double>(n_d - i) * log_q));
    }
    return -std::expm1(log_prod);
}

inline void check_p_s_args(std::size_t n, std::size_t n_d, std::size_t k) {
    if (k > n || n_d > n) {
        throw std::invalid_argument("p_s requires K <= N and N_D <= N");
    }
}

/// Binomial coefficient as an exact integer; valid through n = 62 where
/// C(62, 31) still fits in 64 bits.
inline std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
    if (k > n - k) {
        k = n - k;
    }
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

/// Hypergeometric weight C(K,h) C(N-K, N_D-h) / C(N, N_D): exact integer
/// arithmetic when coefficients fit, log-gamma otherwise.
inline long double hyper_weight(std::size_t n, std::size_t n_d, std::size_t k, std::size_t h) {
    if (n <= 62) {
        return static_cast<long double>(binomial_u64(k, h)) *
               static_cast<long double>(binomial_u64(n - k, n_d - h)) /
               static_cast<long double>(binomial_u64(n, n_d));
    }
    return std::exp(log_binomial(k, h) + log_binomial(n - k, n_d - h) -
                    log_binomial(n, n_d));
}

inline long double p_s_ld(std::size_t n, std::size_t n_d, std::size_t k, std::uint32_t q) {
    check_p_s_args(n, n_d, k);
    const std::size_t h_lim = n_d + k > n ? n_d + k - n : 0;
    long double sum = 0.0L;
    for (std::size_t h = h_lim; h <= k && h <= n_d; ++h) {
        sum += hyper_weight(n, n_d, k, h) * p_ns_ld(n_d - h, k - h, q);
    }
    return sum;
}

inline long double one_minus_p_s_ld(std::size_t n, std::size_t n_d, std::size_t k,
                                    std::uint32_t q) {
    check_p_s_args(n, n_d, k);
    const std::size_t h_lim = n_d + k > n ? n_d + k - n : 0;
    long double sum = 0.0L;
    // weights below h_lim are zero and the weights sum to one, so the
    // complement is the weighted sum of the per-term complements
    for (std::size_t h = h_lim; h <= k && h <= n_d; ++h) {
        sum += hyper_weight(n, n_d, k, h) * one_minus_p_ns_ld(n_d - h, k - h, q);
    }
    return sum;
}

/// F_R(N) as a direct sum: accurate when F is small.
inline long double cdf_direct_ld(std::size_t n, const LinkParams& link) {
    const long double eps = link.epsilon;
    if (eps == 0.0L) {
        return p_s_ld(n, n, link.k, link.q);
    }
    if (eps == 1.0L) {
        return 0.0L;
    }
    const long double log_eps = std::log(eps);
    const long double log_1m_eps = std::log1p(-eps);
    long double sum = 0.0L;
    for (std::size_t n_r = link.k; n_r <= n; ++n_r) {
        const long double log_b = log_binomial(n, n_r) + static_cast<long double>(n_r) * log_1m_eps +
                                  static_cast<long double>(n - n_r) * log_eps;
        sum += std::exp(log_b) * p_s_ld(n, n_r, link.k, link.q);
    }
    return sum;
}

/// 1 - F_R(N) as a sum of positive terms: accurate when F is close to one.
inline long double cdf_complement_ld(std::size_t n, const LinkParams& link) {
    const long double eps = link.epsilon;
    if (eps == 0.0L) {
        return one_minus_p_s_ld(n, n, link.k, link.q);
    }
    if (eps == 1.0L) {
        return 1.0L;
    }
    const long double log_eps = std::log(eps);
    const long double log_1m_eps = std::log1p(-eps);
    long double sum = 0.0L;
    for (std::size_t n_r = 0; n_r <= n; ++n_r) {
        const long double log_b = log_binomial(n, n_r) + static_cast<long double>(n_r) * log_1m_eps +
                                  static_cast<long double>(n - n_r) * log_eps;
        const long double miss = n_r < link.k
                                     ? 1.0L
                                     : one_minus_p_s_ld(n, n_r, link.k, link.q);
        sum += std::exp(log_b) * miss;
    }
    return sum;
}

inline long double cdf_ld(std::size_t n, const LinkParams& link) {
    const long double direct = cdf_direct_ld(n, link);
    if (direct <= 0.5L) {
        return direct;
    }
    return 1.0L - cdf_complement_ld(n, link);
}

inline long double pmf_ld(std::size_t n, const LinkParams& link) {
    if (n == link.k) {
        return cdf_ld(n, link);
    }
    // difference of complements keeps the sign exact deep in the tail
    return cdf_complement_ld(n - 1, link) - cdf_complement_ld(n, link);
}

}  // namespace detail

/// Probability that K source packets are recoverable from N_D received
/// coded packets under plain non-systematic RLC.
inline double p_ns(std::size_t n_d, std::size_t k, std::uint32_t q) {
    return static_cast<double>(detail::p_ns_ld(n_d, k, q));
}

/// Probability of recovering K source packets from N_D error-free receipts
/// out of N transmissions under systematic (equivalently, full-rank
/// non-systematic) RLC.
inline double p_s(std::size_t n, std::size_t n_d, std::size_t k, std::uint32_t q) {
    return static_cast<double>(detail::p_s_ld(n, n_d, k, q));
}

/// CDF of the packet count a receiver needs: probability of having
/// recovered the message once N packets have been transmitted.
inline double cdf_F(std::size_t n, const LinkParams& link) {
    link.validate();
    if (n < link.k) {
        throw std::invalid_argument("CDF is defined for N >= K");
    }
    return static_cast<double>(detail::cdf_ld(n, link));
}

/// Probability that the message is recovered exactly at the N-th
/// transmission and not sooner.
inline double pmf_f(std::size_t n, const LinkParams& link) {
    link.validate();
    if (n < link.k) {
        throw std::invalid_argument("PMF is defined for N >= K");
    }
    return static_cast<double>(detail::pmf_ld(n, link));
}

/// Decoding probability: the CDF evaluated at the transmission cap.
inline double decoding_prob(const LinkParams& link) {
    link.validate();
    if (!link.n_max) {
        throw std::invalid_argument("decoding probability needs N_max");
    }
    return cdf_F(*link.n_max, link);
}

/// Intercept probability: the eavesdropper recovers the message no later
/// than the destination, or alone by the time the cap N_max is reached.
/// Assumes the two links' delivery processes are independent.
inline double intercept_prob(const LinkParams& dest, const LinkParams& eav, std::size_t n_max) {
    dest.validate();
    eav.validate();
    if (dest.k != eav.k || dest.q != eav.q) {
        throw std::invalid_argument("links must share K and q");
    }
    if (n_max < dest.k) {
        throw std::invalid_argument("N_max must be at least K");
    }
    long double sum = 0.0L;
    for (std::size_t n = dest.k; n <= n_max; ++n) {
        sum += detail::pmf_ld(n, dest) * detail::cdf_ld(n, eav);
    }
    sum += detail::cdf_ld(n_max, eav) * detail::cdf_complement_ld(n_max, dest);
    return static_cast<double>(sum);
}

struct NmaxPlan {
    std::size_t n_max = 0;
    double achieved = 0.0;  ///< F_D(n_max), at least the target
    double previous = 0.0;  ///< F_D(n_max - 1), below the target (0 when n_max == K)
};

/// Smallest N_max whose decoding probability reaches the target. Valid
/// because the CDF is nondecreasing in N.
inline NmaxPlan plan_nmax(double target, const LinkParams& link) {
    link.validate();
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("target must be in (0, 1)");
    }
    if (link.epsilon >= 1.0) {
        throw std::invalid_argument("target unreachable on a fully erasing channel");
    }
    constexpr std::size_t kScanCap = 1'000'000;
    double previous = 0.0;
    for (std::size_t n = link.k; n < kScanCap; ++n) {
        const double achieved = cdf_F(n, link);
        if (achieved >= target) {
            return {n, achieved, previous};
        }
        previous = achieved;
    }
    throw std::logic_error("N_max scan cap exceeded");
}

}  // namespace rlclab::analysis
