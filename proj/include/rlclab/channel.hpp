#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlclab/field.hpp"
#include "rlclab/rng.hpp"

namespace rlclab {

/// Memoryless link carrying packets of `length` symbols with packet error
/// probability epsilon.
struct ChannelSpec {
    double epsilon = 0.0;
    std::size_t length = 1;

    ChannelSpec() = default;

    ChannelSpec(double eps, std::size_t len) : epsilon(eps), length(len) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw std::invalid_argument("epsilon must be in [0, 1]");
        }
        if (len < 1) {
            throw std::invalid_argument("packet length must be positive");
        }
    }
};

/// Per-symbol error probability p with (1 - p)^L = 1 - epsilon.
inline double symbol_error_prob(const ChannelSpec& c) {
    return 1.0 - std::pow(1.0 - c.epsilon, 1.0 / static_cast<double>(c.length));
}

/// One received packet. The ground-truth error row and clean flag travel
/// with the payload so simulations can verify repairs; receiver-facing code
/// must only look at the payload (and the clean flag, which in practice
/// comes from link-layer error detection).
struct Reception {
    std::vector<Fel> payload;
    std::vector<Fel> error_vector;
    bool clean = true;
};

/// Corrupts each symbol independently with probability symbol_error_prob.
/// In F_2 a corrupted symbol flips; for q > 2 it is replaced by a uniformly
/// random different element.
inline Reception transmit(std::span<const Fel> row, const ChannelSpec& c, const FieldSpec& field,
                          RngStream& rng) {
    if (row.size() != c.length) {
        throw std::invalid_argument("packet length mismatch");
    }
    const double p = symbol_error_prob(c);
    Reception out;
    out.payload.assign(row.begin(), row.end());
    out.error_vector.assign(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (rng.next_double() < p) {
            Fel e = 1;
            if (field.q > 2) {
                e = static_cast<Fel>(1 + rng.next_below(field.q - 1));
            }
            out.error_vector[i] = e;
            out.payload[i] = field.add(row[i], e);
            out.clean = false;
        }
    }
    return out;
}

}  // namespace rlclab
