#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "rlclab/field.hpp"

namespace rlclab {

constexpr std::size_t kCrcBits = 32;

/// Homogeneous CRC-32: polynomial 0x04C11DB7, zero initial register, no
/// final XOR, no reflection. Unlike the common CRC-32 variant this one is
/// F_2-linear, crc(a + b) = crc(a) + crc(b), so any linear combination of
/// packets with valid trailers again carries a valid trailer.
inline std::uint32_t crc32_linear(std::span<const Fel> bits) {
    std::uint32_t reg = 0;
    for (const Fel bit : bits) {
        const std::uint32_t feedback = (reg >> 31) ^ (bit & 1u);
        reg <<= 1;
        if (feedback) {
            reg ^= 0x04C11DB7u;
        }
    }
    return reg;
}

/// Writes the CRC of row[0 .. L-33] into the last 32 symbols, MSB first.
inline void crc32_fill_trailer(std::span<Fel> row) {
    if (row.size() <= kCrcBits) {
        throw std::invalid_argument("packet too short for a CRC-32 trailer");
    }
    const std::uint32_t crc = crc32_linear(row.first(row.size() - kCrcBits));
    for (std::size_t i = 0; i < kCrcBits; ++i) {
        row[row.size() - kCrcBits + i] = (crc >> (31 - i)) & 1u;
    }
}

inline bool crc32_trailer_valid(std::span<const Fel> row) {
    if (row.size() <= kCrcBits) {
        return false;
    }
    const std::uint32_t crc = crc32_linear(row.first(row.size() - kCrcBits));
    for (std::size_t i = 0; i < kCrcBits; ++i) {
        if (row[row.size() - kCrcBits + i] != ((crc >> (31 - i)) & 1u)) {
            return false;
        }
    }
    return true;
}

}  // namespace rlclab
