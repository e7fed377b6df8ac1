#pragma once

#include <vector>

#include "rlclab/matrix.hpp"
#include "rlclab/rng.hpp"

namespace testutil {

inline rlclab::FMatrix random_matrix(std::size_t rows, std::size_t cols, rlclab::FieldSpec f,
                                     rlclab::RngStream& rng) {
    rlclab::FMatrix m(rows, cols, f);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = static_cast<rlclab::Fel>(rng.next_below(f.q));
        }
    }
    return m;
}

inline rlclab::FMatrix random_full_col_rank(std::size_t rows, std::size_t cols,
                                            rlclab::FieldSpec f, rlclab::RngStream& rng) {
    while (true) {
        rlclab::FMatrix m = random_matrix(rows, cols, f, rng);
        if (rlclab::rank(m) == cols) {
            return m;
        }
    }
}

/// Enumeration oracle for the non-systematic decoding probability: the
/// fraction of all q^(n_d x k) coefficient matrices with rank k.
inline double p_ns_oracle(std::size_t n_d, std::size_t k, std::uint32_t q) {
    const rlclab::FieldSpec f(q);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n_d * k; ++i) {
        total *= q;
    }
    std::uint64_t full = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        rlclab::FMatrix m(n_d, k, f);
        std::uint64_t v = code;
        for (std::size_t r = 0; r < n_d; ++r) {
            for (std::size_t c = 0; c < k; ++c) {
                m(r, c) = static_cast<rlclab::Fel>(v % q);
                v /= q;
            }
        }
        full += rlclab::rank(std::move(m)) == k;
    }
    return static_cast<double>(full) / static_cast<double>(total);
}

/// Enumeration oracle for p_s(4, 2, 2, 2): decodability of [I_2 ; P]
/// averaged over all sixteen binary P and all two-row subsets.
inline double p_s_oracle_422() {
    const rlclab::FieldSpec f2(2);
    std::size_t hits = 0;
    std::size_t cases = 0;
    for (std::uint32_t pcode = 0; pcode < 16; ++pcode) {
        rlclab::FMatrix g(4, 2, f2);
        g(0, 0) = 1;
        g(1, 1) = 1;
        g(2, 0) = pcode & 1;
        g(2, 1) = (pcode >> 1) & 1;
        g(3, 0) = (pcode >> 2) & 1;
        g(3, 1) = (pcode >> 3) & 1;
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = a + 1; b < 4; ++b) {
                hits += rlclab::rank(g.select_rows(rlclab::IndexSet({a, b}))) == 2;
                ++cases;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(cases);
}

/// Independent spark oracle: tries all nonzero coefficient vectors z over
/// F_q (up to q^cols of them) and returns the smallest weight with M z = 0;
/// 0 means all columns are independent.
inline std::size_t spark_oracle(const rlclab::FMatrix& m) {
    const auto q = m.field().q;
    const std::size_t cols = m.cols();
    std::size_t total = 1;
    for (std::size_t c = 0; c < cols; ++c) {
        total *= q;
    }
    std::size_t best = 0;
    std::vector<rlclab::Fel> z(cols, 0);
    for (std::size_t code = 1; code < total; ++code) {
        std::size_t v = code;
        std::size_t weight = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            z[c] = static_cast<rlclab::Fel>(v % q);
            weight += z[c] != 0;
            v /= q;
        }
        bool null = true;
        for (std::size_t r = 0; r < m.rows() && null; ++r) {
            rlclab::Fel acc = 0;
            for (std::size_t c = 0; c < cols; ++c) {
                acc = m.field().add(acc, m.field().mul(m(r, c), z[c]));
            }
            null = acc == 0;
        }
        if (null && (best == 0 || weight < best)) {
            best = weight;
        }
    }
    return best;
}

}  // namespace testutil
