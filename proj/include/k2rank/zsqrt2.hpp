#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <vector>

#include "k2rank/arith.hpp"

namespace k2rank {

/// The element a + b*sqrt(2) of Z[sqrt 2]. Arithmetic is exact; a product that
/// leaves the int64 range throws std::overflow_error.
struct QuadInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend constexpr bool operator==(const QuadInt&, const QuadInt&) = default;
};

QuadInt operator*(const QuadInt& lhs, const QuadInt& rhs);
QuadInt operator-(const QuadInt& z);
QuadInt conj(const QuadInt& z);
std::int64_t norm(const QuadInt& z);
QuadInt power(const QuadInt& z, unsigned exponent);

/// Sign of the real number a + b*sqrt(2) (first embedding); 0 only for z = 0.
int embedding_sign(const QuadInt& z);

/// The associate of z under multiplication by +-(3 + 2*sqrt 2)^k with
/// u > 0, w >= 0 and u minimal. Throws InvalidArgument for z = 0.
QuadInt unit_reduce(const QuadInt& z);

inline constexpr QuadInt kFundamentalUnit{1, 1};  // norm -1
inline constexpr QuadInt kSquareUnit{3, 2};       // norm +1
inline constexpr QuadInt kSquareUnitInverse{3, -2};
inline constexpr QuadInt kPiTwo{2, 1};            // norm 2

std::ostream& operator<<(std::ostream& os, const QuadInt& z);

/// Pinned solution of x^2 - 2y^2 = (-1)^((l-1)/2) l, with x = 1 mod 4 and
/// x, y > 0. The prime ideal above l is generated by x - y*sqrt(2).
struct PrimeRep {
    std::int64_t l = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;

    QuadInt element() const { return QuadInt{x, y}; }
    /// sqrt(2) modulo the ideal: x * y^{-1} mod l.
    std::int64_t sqrt2_residue() const;
    /// Checks every invariant of the type (norm equation, x = 1 mod 4,
    /// positivity, (y/l) = +1).
    bool valid() const;

    friend constexpr bool operator==(const PrimeRep&, const PrimeRep&) = default;
};

/// Minimal-y positive solution, multiplied once by 3 + 2*sqrt(2) when its x is
/// 3 mod 4. Throws InvalidArgument when l is not prime and NoRepresentation
/// when l is not +-1 mod 8.
PrimeRep represent_prime(std::int64_t l);

/// u^2 - 2w^2 = D with u > 0, w >= 0.
struct NormRepresentation {
    std::int64_t D = 0;
    std::int64_t u = 0;
    std::int64_t w = 0;

    std::int64_t v() const { return u + w; }
    QuadInt element() const { return QuadInt{u, w}; }

    friend constexpr bool operator==(const NormRepresentation&, const NormRepresentation&) = default;
};

/// The unreduced product (1+sqrt2)^((n+c) mod 2) * (2+sqrt2)^m * prod pi_p of
/// pinned prime elements; its norm is exactly D.value.
QuadInt compose_norm_element(const Factorization& D);

/// Canonical representation: unit_reduce(compose_norm_element(D)).
/// Throws NoRepresentation when some odd prime divisor is not +-1 mod 8.
NormRepresentation represent_norm(const Factorization& D);

/// Independent oracle: the solution with smallest u (D > 0, searching u
/// upward from ceil(sqrt D)) or smallest w (D < 0, from ceil(sqrt(-D/2))).
NormRepresentation represent_norm_direct(std::int64_t D);

/// Image of z in Z[sqrt2]/(x - y*sqrt2) = Z/lZ, in [0, l).
std::int64_t residue_mod_ideal(const QuadInt& z, const PrimeRep& rep);

/// Process-wide memo of represent_prime. Readers share a lock; a miss
/// computes outside the lock and inserts under the exclusive lock, so the
/// contents are deterministic regardless of thread interleaving.
class PrimeRepCache {
public:
    PrimeRep get(std::int64_t l);
    std::size_t size() const;
    void clear();

    /// Loads a CSV file with header `l,x,y`. Returns false (and leaves the cache
    /// untouched) when the file is missing, malformed, or any row disagrees
    /// with represent_prime.
    bool load(const std::filesystem::path& path);

    /// Writes all entries ascending in l to a temporary file and renames it
    /// over `path`.
    void save(const std::filesystem::path& path) const;

    std::vector<PrimeRep> entries() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::int64_t, PrimeRep> table_;
};

PrimeRepCache& prime_rep_cache();

/// represent_prime through the process-wide cache.
PrimeRep cached_prime_rep(std::int64_t l);

/// Cache file location: $K2RANK_PRIMEREP_CACHE when set, otherwise
/// $XDG_CACHE_HOME/k2rank/primerep.csv or ~/.cache/k2rank/primerep.csv.
std::optional<std::filesystem::path> default_prime_rep_cache_path();

}  // namespace k2rank
