#include "k2rank/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "k2rank/errors.hpp"

namespace k2rank {

namespace {

// Sign of (-1)^e(u) for odd u: e(u) = (u - 1)/2 mod 2.
bool eps_bit(std::int64_t u) { return floor_mod(u, 4) == 3; }

// w(u) = (u^2 - 1)/8 mod 2.
bool omega_bit(std::int64_t u) {
    const auto r = floor_mod(u, 8);
    return r == 3 || r == 5;
}

// Strips the p-part: returns (valuation, unit part).
std::pair<int, std::int64_t> split_valuation(std::int64_t x, std::int64_t p) {
    int k = 0;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    return {k, x};
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    auto mulm = [n](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<uint128>(x) * y % n);
    };
    std::uint64_t x = 1;
    std::uint64_t b = a % n;
    for (std::uint64_t e = d; e > 0; e >>= 1) {
        if (e & 1U) x = mulm(x, b);
        b = mulm(b, b);
    }
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mulm(x, x);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    const auto r = static_cast<int128>(floor_mod(a, m)) * floor_mod(b, m) % m;
    return static_cast<std::int64_t>(r);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = floor_mod(base, m);
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
    }
    return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = floor_mod(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const auto q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) throw NotCoprime("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
    return floor_mod(old_s, m);
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw InvalidArgument("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<int128>(r) * r > n) --r;
    while (static_cast<int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(std::int64_t n) {
    if (n < 0) return false;
    const auto r = isqrt(n);
    return r * r == n;
}

int legendre(std::int64_t a, std::int64_t q) {
    if (q <= 1 || q % 2 == 0) {
        throw InvalidArgument("legendre: modulus must be odd and > 1, got " + std::to_string(q));
    }
    std::uint64_t x = static_cast<std::uint64_t>(floor_mod(a, q));
    std::uint64_t n = static_cast<std::uint64_t>(q);
    int result = 1;
    while (x != 0) {
        const int twos = std::countr_zero(x);
        x >>= twos;
        if ((twos & 1) && (n % 8 == 3 || n % 8 == 5)) result = -result;
        if (x % 4 == 3 && n % 4 == 3) result = -result;
        std::swap(x, n);
        x %= n;
    }
    return n == 1 ? result : 0;
}

Sign legendre_sign(std::int64_t a, std::int64_t q) {
    const int s = legendre(a, q);
    if (s == 0) throw NotCoprime(std::to_string(a) + " is not coprime to " + std::to_string(q));
    return s > 0 ? Sign::Plus : Sign::Minus;
}

std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
    a = floor_mod(a, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) {
        throw DomainError(std::to_string(a) + " is not a square modulo " + std::to_string(p));
    }
    if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);

    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    auto m = s;
    auto c = pow_mod(z, q, p);
    auto t = pow_mod(a, q, p);
    auto r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        int i = 0;
        for (auto t2 = t; t2 != 1; t2 = mul_mod(t2, t2, p)) ++i;
        auto b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (static_cast<std::uint64_t>(n) % p == 0) return static_cast<std::uint64_t>(n) == p;
    }
    const auto un = static_cast<std::uint64_t>(n);
    std::uint64_t d = un - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    return std::none_of(bases.begin(), bases.end(),
                        [&](std::uint64_t a) { return miller_rabin_witness(un, a, d, s); });
}

std::vector<std::int64_t> sieve_primes(std::int64_t limit, std::optional<ResidueFilter> filter) {
    std::vector<std::int64_t> primes;
    if (limit <= 2) return primes;
    if (filter && filter->modulus <= 0) throw InvalidArgument("sieve_primes: modulus must be positive");
    std::vector<bool> composite(static_cast<std::size_t>(limit), false);
    for (std::int64_t i = 2; i * i < limit; ++i) {
        if (composite[i]) continue;
        for (std::int64_t j = i * i; j < limit; j += i) composite[j] = true;
    }
    for (std::int64_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        if (filter && floor_mod(i, filter->modulus) != floor_mod(filter->residue, filter->modulus)) continue;
        primes.push_back(i);
    }
    return primes;
}

Factorization factor_squarefree(std::int64_t d) {
    if (d == 0) throw InvalidArgument("factor_squarefree: zero has no factorization");
    if (d == std::numeric_limits<std::int64_t>::min()) throw NotSquarefree(2);

    Factorization f;
    f.value = d;
    f.n = d < 0 ? 1 : 0;
    std::int64_t rest = d < 0 ? -d : d;
    if (rest % 2 == 0) {
        rest /= 2;
        if (rest % 2 == 0) throw NotSquarefree(2);
        f.m = 1;
    }
    for (std::int64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p != 0) continue;
        rest /= p;
        if (rest % p == 0) throw NotSquarefree(p);
        f.odd_primes.push_back(p);
    }
    if (rest > 1) f.odd_primes.push_back(rest);
    for (auto p : f.odd_primes) {
        f.residues.push_back(static_cast<int>(p % 16));
        if (p % 8 == 7) ++f.c;
    }
    f.t = static_cast<int>(f.odd_primes.size());
    return f;
}

Sign hilbert_symbol(std::int64_t a, std::int64_t b, Place place) {
    if (a == 0 || b == 0) throw InvalidArgument("hilbert_symbol: arguments must be nonzero");
    if (place.is_infinite()) return (a < 0 && b < 0) ? Sign::Minus : Sign::Plus;
    const auto p = place.prime;
    if (!is_prime(p)) throw InvalidArgument("hilbert_symbol: " + std::to_string(p) + " is not a place");

    const auto [alpha, u] = split_valuation(a, p);
    const auto [beta, v] = split_valuation(b, p);
    if (p == 2) {
        bool bit = eps_bit(u) && eps_bit(v);
        bit ^= (alpha & 1) && omega_bit(v);
        bit ^= (beta & 1) && omega_bit(u);
        return from_bit(bit);
    }
    Sign s = Sign::Plus;
    if ((alpha & 1) && (beta & 1) && p % 4 == 3) s = Sign::Minus;
    if (beta & 1) s *= legendre_sign(u, p);
    if (alpha & 1) s *= legendre_sign(v, p);
    return s;
}

std::vector<Place> relevant_places(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> primes{2};
    for (auto x : {a, b}) {
        std::int64_t r = x < 0 ? -x : x;
        while (r % 2 == 0) r /= 2;
        for (std::int64_t p = 3; p * p <= r; p += 2) {
            if (r % p != 0) continue;
            primes.push_back(p);
            while (r % p == 0) r /= p;
        }
        if (r > 1) primes.push_back(r);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Place> places;
    for (auto p : primes) places.push_back(Place{p});
    places.push_back(Place::infinity());
    return places;
}

bool is_local_norm_everywhere(std::int64_t x, const Factorization& d) {
    if (hilbert_symbol(x, d.value, Place::infinity()) == Sign::Minus) return false;
    if (hilbert_symbol(x, d.value, Place{2}) == Sign::Minus) return false;
    return std::all_of(d.odd_primes.begin(), d.odd_primes.end(),
                       [&](std::int64_t p) { return hilbert_symbol(x, d.value, Place{p}) == Sign::Plus; });
}

NormTests norm_tests(const Factorization& d) {
    if (d.value <= 1) throw InvalidArgument("norm_tests: need d > 1, got " + std::to_string(d.value));
    NormTests r;
    r.two_is_norm = is_local_norm_everywhere(2, d);
    r.minus_one_is_norm = is_local_norm_everywhere(-1, d);
    r.a = r.two_is_norm ? 0 : 1;
    r.a_prime = (r.two_is_norm ? 0 : 1) + (r.minus_one_is_norm ? 0 : 1);
    return r;
}

}  // namespace k2rank
