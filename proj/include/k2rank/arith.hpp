#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "k2rank/sign.hpp"

namespace k2rank {

/// Double-width integers for overflow-free products of int64 values.
__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

/// Jacobi symbol (a/q) for odd q > 1; coincides with the Legendre symbol when
/// q is prime. Returns -1, 0 or +1, with 0 exactly when gcd(a, q) > 1.
/// Throws InvalidArgument for even q or q <= 1.
int legendre(std::int64_t a, std::int64_t q);

/// legendre() for a coprime to q, as a Sign. Throws NotCoprime otherwise.
Sign legendre_sign(std::int64_t a, std::int64_t q);

struct ResidueFilter {
    std::int64_t residue;
    std::int64_t modulus;
};

/// All primes p < limit (optionally with p = residue mod modulus), ascending.
std::vector<std::int64_t> sieve_primes(std::int64_t limit, std::optional<ResidueFilter> filter = std::nullopt);

/// Deterministic for the full int64 range.
bool is_prime(std::int64_t n);

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t floor_mod(std::int64_t a, std::int64_t m);

/// A square root of a modulo an odd prime p (Tonelli-Shanks).
/// Throws DomainError when a is a non-residue.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p);

/// Largest r with r*r <= n, for n >= 0.
std::int64_t isqrt(std::int64_t n);

bool is_square(std::int64_t n);

/// value = (-1)^n * 2^m * prod(odd_primes), squarefree.
struct Factorization {
    std::int64_t value = 1;
    int n = 0;
    int m = 0;
    std::vector<std::int64_t> odd_primes;  // ascending, distinct
    std::vector<int> residues;             // odd_primes[i] mod 16
    int t = 0;                             // odd_primes.size()
    int c = 0;                             // primes = 7 mod 8
};

/// Throws InvalidArgument for d == 0 and NotSquarefree (with the prime) when a
/// square divides d.
Factorization factor_squarefree(std::int64_t d);

/// A place of Q: a prime, or the real place (prime == 0).
struct Place {
    std::int64_t prime = 0;

    static constexpr Place infinity() noexcept { return Place{0}; }
    constexpr bool is_infinite() const noexcept { return prime == 0; }
    friend constexpr bool operator==(Place, Place) = default;
};

/// Local Hilbert symbol (a, b)_place. Odd primes use the tame-symbol formula,
/// p = 2 uses (-1)^(e(u)e(v) + alpha*w(v) + beta*w(u)), the real place is -1
/// iff both arguments are negative.
Sign hilbert_symbol(std::int64_t a, std::int64_t b, Place place);

/// Places where (a, b) can be nontrivial: the real place, 2, and every odd
/// prime dividing a*b. Ascending primes, infinity last.
std::vector<Place> relevant_places(std::int64_t a, std::int64_t b);

/// Norm indicators for F = Q(sqrt d):
/// a = 0 iff 2 is a norm from F; a_prime = number of {-1, 2} that are not.
struct NormTests {
    int a = 0;
    int a_prime = 0;
    bool minus_one_is_norm = true;
    bool two_is_norm = true;
};

/// Decided by the Hasse norm theorem: x is a norm from Q(sqrt d) iff
/// (x, d)_v = +1 at every place v dividing 2d*infinity. Requires d > 1.
NormTests norm_tests(const Factorization& d);

/// True iff x is a norm from Q(sqrt d), d squarefree and not 1.
bool is_local_norm_everywhere(std::int64_t x, const Factorization& d);

}  // namespace k2rank
