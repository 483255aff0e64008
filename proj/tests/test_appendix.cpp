#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "k2rank/appendix.hpp"
#include "k2rank/errors.hpp"

using namespace k2rank;

namespace {

std::vector<std::int64_t> split_primes(std::int64_t limit) {
    std::vector<std::int64_t> out;
    for (auto p : sieve_primes(limit)) {
        if (p % 8 == 1 || p % 8 == 7) out.push_back(p);
    }
    return out;
}

// ((u + w) / l) for u + w sqrt2 = (1 + sqrt2)(x + y sqrt2) pi, computed by hand.
Sign explicit_symbol(const QuadInt& pi, std::int64_t l) {
    const PrimeRep rep = represent_prime(l);
    const std::int64_t u1 = rep.x + 2 * rep.y;
    const std::int64_t w1 = rep.x + rep.y;
    const std::int64_t u = u1 * pi.a + 2 * w1 * pi.b;
    const std::int64_t w = u1 * pi.b + w1 * pi.a;
    return legendre_sign(u + w, l);
}

// Wide search for l = a^2 - 32 b^2 with a > 0, a = 1 mod 4.
bool lemma1_wide_search(std::int64_t l) {
    for (std::int64_t b = 0; b <= 3000; ++b) {
        const std::int64_t a2 = l + 32 * b * b;
        if (!is_square(a2)) continue;
        if (isqrt(a2) % 4 == 1) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("symbols over the ideal") {
    TEST_CASE("worked values") {
        const PrimeRep r17 = represent_prime(17);
        CHECK(residue_mod_ideal(kFundamentalUnit, r17) == 12);
        CHECK(symbol_over_ideal(kFundamentalUnit, r17) == Sign::Minus);
        CHECK(symbol_over_ideal(kSquareUnit, r17) == Sign::Plus);
        for (auto l : split_primes(500)) {
            const PrimeRep rep = represent_prime(l);
            for (std::int64_t k = 1; k < 40; ++k) {
                if (k % l == 0) continue;
                CHECK(symbol_over_ideal(QuadInt{k * k, 0}, rep) == Sign::Plus);
            }
            CHECK(symbol_over_ideal(kSquareUnit, rep) == Sign::Plus);
        }
        CHECK_THROWS_AS(symbol_over_ideal(QuadInt{r17.x, -r17.y}, r17), NotCoprime);
    }

    TEST_CASE("positive prime elements have norm +p") {
        for (auto p : split_primes(5000)) CHECK(norm(positive_prime_element(p)) == p);
    }
}

TEST_SUITE("base symbols") {
    TEST_CASE("worked values") {
        const std::vector<std::int64_t> none;
        const auto b17 = base_symbols(17, none);
        CHECK(b17.s_two == Sign::Plus);
        CHECK(b17.s_minus1 == Sign::Minus);
        CHECK(kFundamentalUnit * represent_prime(17).element() * kPiTwo == QuadInt{32, 23});
        CHECK(kFundamentalUnit * represent_prime(17).element() == QuadInt{9, 7});
        CHECK(kSquareUnit * represent_prime(17).element() == QuadInt{23, 16});
        CHECK(base_symbols(41, none).s_two == Sign::Minus);
    }

    TEST_CASE("agree with the hand-expanded products") {
        const auto primes = split_primes(1500);
        for (auto l : primes) {
            std::vector<std::int64_t> others;
            for (auto p : primes) {
                if (p != l) others.push_back(p);
            }
            const auto b = base_symbols(l, others);
            CHECK(b.s_minus1 == explicit_symbol(kFundamentalUnit, l));
            CHECK(b.s_two == explicit_symbol(kPiTwo, l));
            for (auto p : others) CHECK(b.s_p.at(p) == explicit_symbol(positive_prime_element(p), l));
        }
    }

    TEST_CASE("errors") {
        const std::vector<std::int64_t> self{17};
        CHECK_THROWS_AS(base_symbols(17, self), InvalidArgument);
        const std::vector<std::int64_t> bad{3};
        CHECK_THROWS_AS(base_symbols(17, bad), InvalidArgument);
        CHECK_THROWS_AS(base_symbols(19, std::vector<std::int64_t>{}), DomainError);
    }
}

TEST_SUITE("product formula") {
    TEST_CASE("worked value") {
        const auto d = factor_squarefree(50881);
        const Sign direct = hilbert_symbol(-50881, 785, Place{17});
        CHECK(direct_symbol(d, 17) == direct);
        CHECK(product_formula_symbol(d, 17) == direct);
        CHECK(direct_symbol(d, 17) == hilbert_symbol(-50881, 245, Place{17}));
    }

    TEST_CASE("matches the direct symbol on random admissible d") {
        std::mt19937_64 rng(31);
        const auto primes = split_primes(4000);
        std::uniform_int_distribution<std::size_t> idx(0, primes.size() - 1);
        std::uniform_int_distribution<int> bit(0, 1);
        std::uniform_int_distribution<int> count(1, 3);
        int literal_divergences = 0;
        for (int i = 0; i < 1500; ++i) {
            std::int64_t value = bit(rng) ? -1 : 1;
            if (bit(rng)) value *= 2;
            std::vector<std::int64_t> chosen;
            const int k = count(rng);
            for (int j = 0; j < k; ++j) chosen.push_back(primes[idx(rng)]);
            std::sort(chosen.begin(), chosen.end());
            if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) continue;
            for (auto p : chosen) value *= p;
            const auto d = factor_squarefree(value);
            for (auto pk : d.odd_primes) {
                const Sign direct = direct_symbol(d, pk);
                CHECK_MESSAGE(product_formula_symbol(d, pk) == direct, "d=" << value << " pk=" << pk);
                CHECK_MESSAGE(remark_r3_symbol(d, pk) == direct, "d=" << value << " pk=" << pk);
                if (pk % 8 == 1) {
                    CHECK(product_formula_literal(d, pk) == direct);
                } else if (product_formula_literal(d, pk) != direct) {
                    ++literal_divergences;
                }
            }
        }
        // The exponent n + (-1)^((p_k+1)/2) only agrees for p_k = 1 mod 8.
        CHECK(literal_divergences > 0);
    }

    TEST_CASE("errors") {
        const auto d = factor_squarefree(50881);
        CHECK_THROWS_AS(product_formula_symbol(d, 89), InvalidArgument);
        CHECK_THROWS_AS(product_formula_symbol(factor_squarefree(3 * 17), 17), DomainError);
    }

    TEST_CASE("closed-form specializations") {
        std::mt19937_64 rng(32);
        const auto primes = split_primes(3000);
        std::vector<std::int64_t> one;
        for (auto p : primes) {
            if (p % 8 == 1) one.push_back(p);
        }
        int p7_pairs = 0;
        int p1_pairs = 0;
        std::uniform_int_distribution<std::size_t> any(0, primes.size() - 1);
        std::uniform_int_distribution<std::size_t> ones(0, one.size() - 1);
        while (p7_pairs < 100 || p1_pairs < 100) {
            const std::int64_t p = primes[any(rng)];
            const std::int64_t l = one[ones(rng)];
            if (p == l || legendre(l, p) != 1) continue;
            auto& counter = p % 8 == 7 ? p7_pairs : p1_pairs;
            if (counter >= 100) continue;
            ++counter;
            const auto specs = example_specializations(p, l);
            CHECK(specs.size() == (p % 8 == 7 ? 4U : 2U));
            for (const auto& s : specs) CHECK_MESSAGE(s.holds(), s.label << " p=" << p << " l=" << l);
        }
        CHECK_THROWS_AS(example_specializations(7, 73), ConditionNotMet);
    }
}

TEST_SUITE("composite symbols") {
    TEST_CASE("worked values") {
        CHECK(remark_r2_check(factor_squarefree(-1), 17));
        CHECK(remark_r2_check(factor_squarefree(7 * 41), 17));
        CHECK(remark_r2_check(factor_squarefree(-2 * 7), 41));
        CHECK_THROWS_AS(remark_r2_check(factor_squarefree(17 * 41), 17), InvalidArgument);
    }

    TEST_CASE("random composites") {
        std::mt19937_64 rng(33);
        const auto primes = split_primes(2000);
        std::uniform_int_distribution<std::size_t> idx(0, primes.size() - 1);
        std::uniform_int_distribution<int> bit(0, 1);
        for (int i = 0; i < 1000; ++i) {
            std::int64_t value = bit(rng) ? -1 : 1;
            if (bit(rng)) value *= 2;
            const std::int64_t p = primes[idx(rng)];
            const std::int64_t q = primes[idx(rng)];
            const std::int64_t l = primes[idx(rng)];
            if (p == q || l == p || l == q) continue;
            CHECK(remark_r2_check(factor_squarefree(value * p * q), l));
        }
    }
}

TEST_SUITE("a^2 - 32b^2 and mod 16 criteria") {
    TEST_CASE("worked values") {
        const auto r17 = lemma_rep_checks(17);
        CHECK(r17.s_minus1 == Sign::Minus);
        CHECK_FALSE(r17.lemma1_witness.has_value());
        CHECK(r17.lemma1_ok);
        CHECK(r17.s_two == Sign::Plus);
        CHECK(r17.lemma2_ok);
        CHECK(7 * 7 - 32 * 1 == 17);

        const auto r41 = lemma_rep_checks(41);
        CHECK(r41.s_two == Sign::Minus);
        CHECK(r41.lemma2_ok);
    }

    TEST_CASE("witnesses are genuine") {
        for (auto l : split_primes(20000)) {
            const auto r = lemma_rep_checks(l);
            CHECK(r.lemma1_ok);
            CHECK(r.lemma2_ok);
            if (!r.lemma1_witness) continue;
            const auto [a, b] = *r.lemma1_witness;
            const std::int64_t target = l % 8 == 1 ? l : -l;
            CHECK(a * a - 32 * b * b == target);
            CHECK(floor_mod(a, 4) == 1);
        }
    }

    TEST_CASE("fundamental-domain search agrees with a wide search for l = 1 mod 8") {
        for (auto l : sieve_primes(6000, ResidueFilter{1, 8})) {
            CHECK_MESSAGE(lemma_rep_checks(l).lemma1_witness.has_value() == lemma1_wide_search(l), l);
        }
    }

    TEST_CASE("prime-element symbols") {
        CHECK_THROWS_AS(lemma3_check(41, 17), ConditionNotMet);
        CHECK(lemma3_check(73, 41));
        CHECK_THROWS_AS(lemma3_check(17, 7), ConditionNotMet);
        CHECK_THROWS_AS(lemma3_check(17, 17), InvalidArgument);
        int checked = 0;
        const auto primes = split_primes(600);
        for (auto l : primes) {
            for (auto p : primes) {
                if (p == l) continue;
                if (legendre(p % 4 == 1 ? p : -p, l) != 1) {
                    CHECK_THROWS_AS(lemma3_check(l, p), ConditionNotMet);
                    continue;
                }
                CHECK_MESSAGE(lemma3_check(l, p), "l=" << l << " p=" << p);
                ++checked;
            }
        }
        CHECK(checked > 1000);
    }
}

TEST_SUITE("h+ representations") {
    TEST_CASE("worked pair") {
        const auto r = hplus_report(73, 41);
        CHECK(r.discriminant == 8 * 41);
        CHECK(r.class_number % 4 == 0);
        CHECK(r.clause_holds);
        CHECK(lemma_hplus_check(73, 41));
        CHECK_THROWS_AS(hplus_report(17, 7), ConditionNotMet);
        CHECK_THROWS_AS(hplus_report(41, 17), ConditionNotMet);
    }

    TEST_CASE("witnesses satisfy the form equation exactly") {
        int witnesses = 0;
        const auto primes = split_primes(400);
        for (auto p : primes) {
            for (auto l : primes) {
                if (l == p || l % 8 != 1) continue;
                HplusReport r;
                try {
                    r = hplus_report(l, p);
                } catch (const ConditionNotMet&) {
                    continue;
                } catch (const NotApplicable&) {
                    continue;
                }
                CHECK_MESSAGE(r.clause_holds, "l=" << l << " p=" << p);
                if (!r.principal_solvable) continue;
                ++witnesses;
                const mpz_class n(r.witness_n);
                const mpz_class m(r.witness_m);
                mpz_class power;
                mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(l), r.exponent);
                const long sign = p % 8 == 1 ? -2 : 2;
                CHECK(n * n + sign * p * m * m == power);
                CHECK(m % l != 0);
            }
        }
        CHECK(witnesses > 0);
    }
}
