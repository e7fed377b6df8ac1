#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlclab/matrix.hpp"
#include "rlclab/rng.hpp"

namespace rlclab {

enum class GeneratorKind {
    NonSystematic,         ///< every row drawn i.i.d. uniform
    Systematic,            ///< [I_K ; P] with P random
    FullRankNonSystematic  ///< random rows, top K x K block forced full rank
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::FullRankNonSystematic;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    FieldSpec field{};
};

/// Generator matrix grown one transmitted row at a time. All randomness
/// comes from a single counter-based stream seeded by the spec, so the same
/// spec reproduces the same matrix row for row on any platform; receivers
/// that know the seed can rebuild G themselves.
///
/// For the full-rank construction the top K x K block is redrawn from the
/// stream until it is invertible (the redraw count is kept so the draw can
/// be audited), after which rows are plain uniform draws.
class CodeState {
public:
    explicit CodeState(const GeneratorSpec& spec)
        : spec_(spec), stream_(spec.seed), g_(0, spec.k, spec.field) {
        if (spec_.k < 1) {
            throw std::invalid_argument("K must be positive");
        }
        if (spec_.kind == GeneratorKind::FullRankNonSystematic) {
            draw_full_rank_block();
        }
    }

    const GeneratorSpec& spec() const { return spec_; }
    const FMatrix& generator() const { return g_; }
    std::size_t transmitted() const { return g_.rows(); }
    std::size_t full_rank_attempts() const { return attempts_; }

    /// Appends the next generator row and returns a view of it.
    std::span<const Fel> next_row() {
        const std::size_t n = g_.rows();
        std::vector<Fel> row(spec_.k, 0);
        switch (spec_.kind) {
            case GeneratorKind::Systematic:
                if (n < spec_.k) {
                    row[n] = 1;
                } else {
                    draw_row(row);
                }
                break;
            case GeneratorKind::FullRankNonSystematic:
                if (n < spec_.k) {
                    std::copy_n(top_block_.begin() + n * spec_.k, spec_.k, row.begin());
                } else {
                    draw_row(row);
                }
                break;
            case GeneratorKind::NonSystematic:
                draw_row(row);
                break;
        }
        g_.append_row(row);
        invalidate_cache();
        return g_.row(n);
    }

    void ensure_rows(std::size_t n) {
        while (g_.rows() < n) {
            next_row();
        }
    }

    /// Standard form [I_K ; P'] of the current generator (requires N >= K
    /// and an invertible top block). Cached until the matrix grows.
    const FMatrix& standard_form() {
        refresh_standard_form();
        return std_form_->gp;
    }

    const FMatrix& basis_change() {
        refresh_standard_form();
        return std_form_->basis_change;
    }

    /// Parity-check matrix of the current generator (requires N > K).
    const FMatrix& parity();

private:
    void draw_row(std::vector<Fel>& row) {
        for (Fel& v : row) {
            v = static_cast<Fel>(stream_.next_below(spec_.field.q));
        }
    }

    void draw_full_rank_block() {
        const std::size_t k = spec_.k;
        top_block_.assign(k * k, 0);
        while (true) {
            ++attempts_;
            for (Fel& v : top_block_) {
                v = static_cast<Fel>(stream_.next_below(spec_.field.q));
            }
            FMatrix block(k, k, spec_.field, top_block_);
            if (rank(std::move(block)) == k) {
                break;
            }
        }
    }

    void invalidate_cache() {
        std_form_.reset();
        parity_.reset();
    }

    void refresh_standard_form() {
        if (!std_form_) {
            std_form_ = to_standard_form(g_);
        }
    }

    GeneratorSpec spec_;
    RngStream stream_;
    FMatrix g_;
    std::vector<Fel> top_block_;
    std::size_t attempts_ = 0;
    std::optional<StandardForm> std_form_;
    std::optional<FMatrix> parity_;
};

/// First n rows of the generator defined by spec.
inline FMatrix build_generator(const GeneratorSpec& spec, std::size_t n) {
    if (n < spec.k && spec.kind != GeneratorKind::NonSystematic) {
        throw std::invalid_argument("N < K is invalid for this construction");
    }
    CodeState state(spec);
    state.ensure_rows(n);
    return state.generator();
}

/// X = G * U.
inline FMatrix encode(const FMatrix& g, const FMatrix& u) { return g * u; }

/// Parity-check matrix H = [-P' | I_{N-K}]^T of a generator in standard
/// form [I_K ; P'], so that H^T * Gp = 0 (and H^T * G = 0 for the original
/// G, since the two differ by an invertible column-operation matrix).
inline FMatrix parity_check(const FMatrix& gp) {
    const std::size_t n = gp.rows();
    const std::size_t k = gp.cols();
    if (n <= k) {
        throw std::invalid_argument("no parity rows exist for N <= K");
    }
    const FieldSpec f = gp.field();
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            if (gp(r, c) != (r == c ? 1u : 0u)) {
                throw std::invalid_argument("generator is not in standard form");
            }
        }
    }
    FMatrix h(n, n - k, f);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n - k; ++c) {
            h(r, c) = f.neg(gp(k + c, r));  // -P' transposed into the top block
        }
    }
    for (std::size_t c = 0; c < n - k; ++c) {
        h(k + c, c) = 1;
    }
    return h;
}

inline const FMatrix& CodeState::parity() {
    if (!parity_) {
        parity_ = parity_check(standard_form());
    }
    return *parity_;
}

/// Recovers U from a row subset of received coded packets: solves
/// G_R * U = X_R when G_R has full column rank, otherwise nullopt.
inline std::optional<FMatrix> rlc_decode(const FMatrix& g_r, const FMatrix& x_r) {
    return solve(g_r, x_r);
}

}  // namespace rlclab
