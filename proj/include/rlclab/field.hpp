#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace rlclab {

/// A field element, reduced modulo the field order at all times.
using Fel = std::uint32_t;

/// The prime field F_q. Elements are unsigned integers in [0, q); all
/// arithmetic is plain modular arithmetic. Extension fields GF(p^m) are out
/// of scope, so constructing a FieldSpec with a composite order throws.
struct FieldSpec {
    std::uint32_t q = 2;

    FieldSpec() = default;

    explicit FieldSpec(std::uint32_t order) : q(order) {
        if (!is_prime(order)) {
            throw std::invalid_argument("field order must be prime");
        }
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) {
            return false;
        }
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const FieldSpec& other) const { return q == other.q; }

    Fel add(Fel a, Fel b) const {
        return static_cast<Fel>((std::uint64_t(a) + b) % q);
    }

    Fel neg(Fel a) const { return a == 0 ? 0 : q - a; }

    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }

    Fel mul(Fel a, Fel b) const {
        return static_cast<Fel>((std::uint64_t(a) * b) % q);
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    Fel inv(Fel a) const {
        if (a == 0) {
            throw std::domain_error("zero has no inverse");
        }
        std::int64_t t = 0;
        std::int64_t new_t = 1;
        std::int64_t r = q;
        std::int64_t new_r = a;
        while (new_r != 0) {
            const std::int64_t quot = r / new_r;
            t = std::exchange(new_t, t - quot * new_t);
            r = std::exchange(new_r, r - quot * new_r);
        }
        if (t < 0) {
            t += q;
        }
        return static_cast<Fel>(t);
    }

    bool valid(Fel a) const { return a < q; }
};

}  // namespace rlclab
