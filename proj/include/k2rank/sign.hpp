#pragma once

#include <cstdint>
#include <ostream>

namespace k2rank {

/// Value of a Hilbert or residue symbol. Multiplicative group {+1, -1}.
enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

/// F2 encoding used for symbol matrices: +1 -> 0, -1 -> 1.
constexpr bool to_bit(Sign s) noexcept { return s == Sign::Minus; }

constexpr Sign from_bit(bool bit) noexcept { return bit ? Sign::Minus : Sign::Plus; }

constexpr Sign operator*(Sign lhs, Sign rhs) noexcept { return from_bit(to_bit(lhs) != to_bit(rhs)); }

constexpr Sign& operator*=(Sign& lhs, Sign rhs) noexcept {
    lhs = lhs * rhs;
    return lhs;
}

/// s^e; only the parity of e matters, negative exponents included.
constexpr Sign power(Sign s, long long e) noexcept { return (e % 2 != 0) ? s : Sign::Plus; }

inline std::ostream& operator<<(std::ostream& os, Sign s) { return os << (s == Sign::Plus ? "+1" : "-1"); }

}  // namespace k2rank
