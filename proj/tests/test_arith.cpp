#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "k2rank/arith.hpp"
#include "k2rank/errors.hpp"

using namespace k2rank;

namespace {

bool trial_division_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) return false;
    }
    return true;
}

// Legendre symbol from the set of nonzero squares mod p.
int legendre_by_squares(std::int64_t a, std::int64_t p) {
    const std::int64_t r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x) {
        if (x * x % p == r) return 1;
    }
    return -1;
}

std::int64_t pow_mod_naive(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b = ((b % m) + m) % m;
    for (std::int64_t i = 0; i < e; ++i) r = r * b % m;
    return r;
}

int valuation(std::int64_t& x, std::int64_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Tame-symbol oracle at an odd prime: (-1)^(ab) a^beta b^-alpha, then Euler's criterion.
int hilbert_odd_oracle(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t u = a;
    std::int64_t w = b;
    const int alpha = valuation(u, p);
    const int beta = valuation(w, p);
    std::int64_t t = 1;
    if ((alpha * beta) % 2 == 1) t = p - 1;
    const std::int64_t um = ((u % p) + p) % p;
    const std::int64_t wm = ((w % p) + p) % p;
    if (beta % 2 == 1) t = t * um % p;
    if (alpha % 2 == 1) t = t * pow_mod_naive(wm, p - 2, p) % p;
    return pow_mod_naive(t, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Existence of a primitive solution of z^2 = a x^2 + b y^2 modulo p^k.
bool primitive_solution_mod(std::int64_t a, std::int64_t b, std::int64_t p, int k) {
    std::int64_t mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    const std::int64_t am = ((a % mod) + mod) % mod;
    const std::int64_t bm = ((b % mod) + mod) % mod;
    for (std::int64_t x = 0; x < mod; ++x) {
        for (std::int64_t y = 0; y < mod; ++y) {
            const std::int64_t rhs = (am * (x * x % mod) + bm * (y * y % mod)) % mod;
            for (std::int64_t z = 0; z < mod; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (z * z % mod == rhs) return true;
            }
        }
    }
    return false;
}

bool sum_of_two_squares(std::int64_t n) {
    for (std::int64_t x = 0; x * x <= n; ++x) {
        if (is_square(n - x * x)) return true;
    }
    return false;
}

bool is_norm_from_q_sqrt2(std::int64_t d) {
    for (std::int64_t w = 0; 2 * w * w <= d + 2 * d; ++w) {
        if (is_square(d + 2 * w * w)) return true;
    }
    return false;
}

bool squarefree(std::int64_t n) {
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % (q * q) == 0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("legendre") {
    TEST_CASE("worked values") {
        CHECK(legendre(2, 17) == 1);
        CHECK(legendre(3, 7) == -1);
        CHECK(legendre(7, 17) == -1);
        for (std::int64_t q = 3; q < 200; q += 2) CHECK(legendre(1, q) == 1);
    }

    TEST_CASE("agrees with the table of squares for small primes") {
        for (auto p : sieve_primes(300)) {
            if (p == 2) continue;
            for (std::int64_t a = -2 * p; a <= 2 * p; ++a) {
                CHECK_MESSAGE(legendre(a, p) == legendre_by_squares(a, p), "a=" << a << " p=" << p);
            }
        }
    }

    TEST_CASE("Jacobi symbol is multiplicative in the modulus") {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::int64_t> odd(1, 5000);
        std::uniform_int_distribution<std::int64_t> arg(-1'000'000, 1'000'000);
        for (int i = 0; i < 2000; ++i) {
            const std::int64_t q1 = 2 * odd(rng) + 1;
            const std::int64_t q2 = 2 * odd(rng) + 1;
            if (std::gcd(q1, q2) != 1) continue;
            const std::int64_t a = arg(rng);
            CHECK(legendre(a, q1 * q2) == legendre(a, q1) * legendre(a, q2));
        }
    }

    TEST_CASE("multiplicative and periodic in the argument") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<std::int64_t> arg(-100000, 100000);
        for (auto q : {3LL, 15LL, 17LL, 221LL, 1001LL, 99991LL}) {
            for (int i = 0; i < 200; ++i) {
                const std::int64_t a = arg(rng);
                const std::int64_t b = arg(rng);
                CHECK(legendre(a * b, q) == legendre(a, q) * legendre(b, q));
                CHECK(legendre(a + q, q) == legendre(a, q));
            }
        }
    }

    TEST_CASE("zero exactly for common factors") {
        CHECK(legendre(17, 17) == 0);
        CHECK(legendre(6, 15) == 0);
        CHECK(legendre(0, 7) == 0);
        CHECK_THROWS_AS(legendre_sign(51, 17), NotCoprime);
        CHECK(legendre_sign(2, 17) == Sign::Plus);
    }

    TEST_CASE("rejects even or trivial moduli") {
        CHECK_THROWS_AS(legendre(3, 8), InvalidArgument);
        CHECK_THROWS_AS(legendre(3, 1), InvalidArgument);
        CHECK_THROWS_AS(legendre(3, -7), InvalidArgument);
    }
}

TEST_SUITE("primes") {
    TEST_CASE("sieve examples") {
        CHECK(sieve_primes(100, ResidueFilter{1, 8}) == std::vector<std::int64_t>{17, 41, 73, 89, 97});
        CHECK(sieve_primes(2).empty());
        CHECK(sieve_primes(20) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    }

    TEST_CASE("sieve agrees with trial division") {
        const auto primes = sieve_primes(20000);
        std::vector<std::int64_t> expected;
        for (std::int64_t n = 2; n < 20000; ++n) {
            if (trial_division_prime(n)) expected.push_back(n);
        }
        CHECK(primes == expected);
        const auto filtered = sieve_primes(20000, ResidueFilter{7, 8});
        CHECK(std::all_of(filtered.begin(), filtered.end(), [](auto p) { return p % 8 == 7; }));
        CHECK(filtered.size() ==
              static_cast<std::size_t>(std::count_if(expected.begin(), expected.end(), [](auto p) { return p % 8 == 7; })));
    }

    TEST_CASE("Miller-Rabin agrees with the sieve and on large inputs") {
        const auto primes = sieve_primes(100000);
        std::size_t idx = 0;
        for (std::int64_t n = 0; n < 100000; ++n) {
            const bool expected = idx < primes.size() && primes[idx] == n;
            if (expected) ++idx;
            CHECK_MESSAGE(is_prime(n) == expected, n);
        }
        CHECK(is_prime(2305843009213693951LL));       // 2^61 - 1
        CHECK(!is_prime(2305843009213693953LL));      // 2^61 + 1 = 3 * ...
        CHECK(!is_prime(3215031751LL));               // strong pseudoprime to bases 2, 3, 5, 7
        CHECK(!is_prime(3825123056546413051LL));      // strong pseudoprime to the first nine prime bases
        CHECK(is_prime(9223372036854775783LL));       // largest prime below 2^63
        for (auto c : {561LL, 1105LL, 1729LL, 2465LL, 2821LL, 6601LL, 8911LL}) CHECK(!is_prime(c));
    }
}

TEST_SUITE("modular helpers") {
    TEST_CASE("sqrt_mod returns a root") {
        for (auto p : sieve_primes(3000)) {
            if (p == 2) continue;
            for (std::int64_t a = 1; a < std::min<std::int64_t>(p, 60); ++a) {
                if (legendre(a, p) != 1) {
                    CHECK_THROWS_AS(sqrt_mod(a, p), DomainError);
                    continue;
                }
                const std::int64_t r = sqrt_mod(a, p);
                CHECK(mul_mod(r, r, p) == a % p);
            }
        }
    }

    TEST_CASE("inverse, power and floor helpers") {
        CHECK(inverse_mod(2, 17) == 9);
        CHECK(mul_mod(inverse_mod(123456789, 1000000007), 123456789, 1000000007) == 1);
        CHECK(pow_mod(3, 0, 7) == 1);
        CHECK(pow_mod(2, 62, 9223372036854775783LL) == (std::int64_t{1} << 62));
        CHECK(floor_mod(-1, 8) == 7);
        CHECK(floor_mod(-16, 8) == 0);
        CHECK(isqrt(0) == 0);
        CHECK(isqrt(99) == 9);
        CHECK(isqrt(9223372036854775807LL) == 3037000499LL);
        CHECK(is_square(50881 + 648));
        CHECK(!is_square(2));
        CHECK(!is_square(-4));
    }
}

TEST_SUITE("factor_squarefree") {
    TEST_CASE("worked values") {
        const auto f = factor_squarefree(50881);
        CHECK(f.n == 0);
        CHECK(f.m == 0);
        CHECK(f.odd_primes == std::vector<std::int64_t>{17, 41, 73});
        CHECK(f.t == 3);
        CHECK(f.c == 0);
        CHECK(f.residues == std::vector<int>{1, 9, 9});

        const auto g = factor_squarefree(-14);
        CHECK(g.n == 1);
        CHECK(g.m == 1);
        CHECK(g.odd_primes == std::vector<std::int64_t>{7});
        CHECK(g.t == 1);
        CHECK(g.c == 1);

        const auto one = factor_squarefree(-1);
        CHECK(one.n == 1);
        CHECK(one.t == 0);
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(factor_squarefree(0), InvalidArgument);
        try {
            factor_squarefree(18);
            FAIL("expected NotSquarefree");
        } catch (const NotSquarefree& e) {
            CHECK(e.prime() == 3);
        }
        CHECK_THROWS_AS(factor_squarefree(-8), NotSquarefree);
        CHECK_THROWS_AS(factor_squarefree(17 * 17 * 3), NotSquarefree);
    }

    TEST_CASE("reconstructs the value") {
        for (std::int64_t d = -3000; d <= 3000; ++d) {
            if (d == 0 || !squarefree(d < 0 ? -d : d)) continue;
            const auto f = factor_squarefree(d);
            std::int64_t v = f.n ? -1 : 1;
            if (f.m) v *= 2;
            for (auto p : f.odd_primes) v *= p;
            CHECK(v == d);
            CHECK(std::is_sorted(f.odd_primes.begin(), f.odd_primes.end()));
            CHECK(f.t == static_cast<int>(f.odd_primes.size()));
            CHECK(f.c == std::count_if(f.odd_primes.begin(), f.odd_primes.end(), [](auto p) { return p % 8 == 7; }));
        }
    }
}

TEST_SUITE("hilbert_symbol") {
    TEST_CASE("worked values") {
        CHECK(hilbert_symbol(-50881, 785, Place{2}) == Sign::Plus);
        CHECK(hilbert_symbol(17, 17, Place{17}) == Sign::Plus);
        Sign product = Sign::Plus;
        const std::vector<Sign> expected{Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus};
        const std::vector<Place> places{Place{2}, Place{3}, Place{5}, Place::infinity()};
        for (std::size_t i = 0; i < places.size(); ++i) {
            CHECK(hilbert_symbol(3, 5, places[i]) == expected[i]);
            product *= hilbert_symbol(3, 5, places[i]);
        }
        CHECK(product == Sign::Plus);
        CHECK(hilbert_symbol(-1, -1, Place::infinity()) == Sign::Minus);
        CHECK(hilbert_symbol(-1, -1, Place{2}) == Sign::Minus);
        CHECK(hilbert_symbol(-1, 2, Place{2}) == Sign::Plus);
    }

    TEST_CASE("rejects invalid places and zero arguments") {
        CHECK_THROWS_AS(hilbert_symbol(3, 5, Place{9}), InvalidArgument);
        CHECK_THROWS_AS(hilbert_symbol(3, 5, Place{-3}), InvalidArgument);
        CHECK_THROWS_AS(hilbert_symbol(0, 5, Place{2}), InvalidArgument);
    }

    TEST_CASE("2-adic symbol agrees with brute-force solvability") {
        // Square classes of Q_2: 2^e * u with e in {0,1}, u in {1,3,5,7}.
        const std::vector<std::int64_t> classes{1, 3, 5, 7, 2, 6, 10, 14};
        for (auto a : classes) {
            for (auto b : classes) {
                const Sign expected = primitive_solution_mod(a, b, 2, 5) ? Sign::Plus : Sign::Minus;
                CHECK_MESSAGE(hilbert_symbol(a, b, Place{2}) == expected, "a=" << a << " b=" << b);
            }
        }
    }

    TEST_CASE("odd-prime symbol agrees with brute-force solvability") {
        // Valuations are at most 1, so solvability modulo p^2 decides the symbol.
        for (std::int64_t p : {3, 5, 7}) {
            for (std::int64_t a = -p * p; a <= p * p; ++a) {
                if (a == 0 || a % (p * p) == 0) continue;
                for (std::int64_t b : std::array<std::int64_t, 6>{1, -1, 2, p, 2 * p, -p}) {
                    const Sign expected = primitive_solution_mod(a, b, p, 2) ? Sign::Plus : Sign::Minus;
                    CHECK_MESSAGE(hilbert_symbol(a, b, Place{p}) == expected, "a=" << a << " b=" << b << " p=" << p);
                }
            }
        }
    }

    TEST_CASE("odd-prime symbol agrees with the tame-symbol oracle") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::int64_t> arg(-1'000'000, 1'000'000);
        const auto primes = sieve_primes(200);
        for (int i = 0; i < 5000; ++i) {
            const std::int64_t a = arg(rng);
            const std::int64_t b = arg(rng);
            if (a == 0 || b == 0) continue;
            for (auto p : primes) {
                if (p == 2) continue;
                CHECK(to_int(hilbert_symbol(a, b, Place{p})) == hilbert_odd_oracle(a, b, p));
            }
        }
    }

    TEST_CASE("reciprocity, symmetry, bimultiplicativity and the norm identity") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::int64_t> arg(-1'000'000, 1'000'000);
        std::uniform_int_distribution<std::int64_t> small(-3000, 3000);
        for (int i = 0; i < 3000; ++i) {
            const std::int64_t a = arg(rng);
            const std::int64_t b = arg(rng);
            if (a == 0 || b == 0) continue;
            Sign product = Sign::Plus;
            const auto places = relevant_places(a, b);
            CHECK(places.back().is_infinite());
            CHECK(places.front() == Place{2});
            for (const auto& v : places) {
                product *= hilbert_symbol(a, b, v);
                CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
                CHECK(hilbert_symbol(a, -a, v) == Sign::Plus);
            }
            CHECK(product == Sign::Plus);

            const std::int64_t a1 = small(rng);
            const std::int64_t a2 = small(rng);
            if (a1 == 0 || a2 == 0) continue;
            for (const auto& v : relevant_places(a1 * a2, b)) {
                CHECK(hilbert_symbol(a1 * a2, b, v) == hilbert_symbol(a1, b, v) * hilbert_symbol(a2, b, v));
            }
        }
    }
}

TEST_SUITE("norm_tests") {
    TEST_CASE("worked values") {
        const auto x = norm_tests(factor_squarefree(50881));
        CHECK(x.a == 0);
        CHECK(x.a_prime == 0);
        const auto three = norm_tests(factor_squarefree(3));
        CHECK(three.a == 1);
        CHECK(three.a_prime >= 1);
        const auto p17 = norm_tests(factor_squarefree(17));
        CHECK(p17.a == 0);
        CHECK(p17.a_prime == 0);
        CHECK_THROWS_AS(norm_tests(factor_squarefree(1)), InvalidArgument);
        CHECK_THROWS_AS(norm_tests(factor_squarefree(-5)), InvalidArgument);
    }

    TEST_CASE("agrees with explicit norm equations") {
        for (std::int64_t d = 2; d < 4000; ++d) {
            if (!squarefree(d)) continue;
            const auto r = norm_tests(factor_squarefree(d));
            // -1 = x^2 - d y^2 rationally iff d is a sum of two squares.
            CHECK_MESSAGE(r.minus_one_is_norm == sum_of_two_squares(d), d);
            // 2 is a norm from Q(sqrt d) iff d is a norm from Q(sqrt 2).
            CHECK_MESSAGE(r.two_is_norm == is_norm_from_q_sqrt2(d), d);
            CHECK(r.a == (r.two_is_norm ? 0 : 1));
            CHECK(r.a_prime == (r.two_is_norm ? 0 : 1) + (r.minus_one_is_norm ? 0 : 1));
        }
    }

    TEST_CASE("2 is a norm exactly when every odd prime is +-1 mod 8") {
        for (std::int64_t d = 3; d < 20000; d += 2) {
            if (!squarefree(d)) continue;
            const auto f = factor_squarefree(d);
            const bool congruence = std::all_of(f.odd_primes.begin(), f.odd_primes.end(),
                                                [](auto p) { return p % 8 == 1 || p % 8 == 7; });
            CHECK_MESSAGE((norm_tests(f).a == 0) == congruence, d);
        }
    }
}
