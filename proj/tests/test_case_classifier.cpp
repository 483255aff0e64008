#include <doctest.h>

#include <algorithm>
#include <array>

#include "k2rank/case_classifier.hpp"
#include "k2rank/errors.hpp"
#include "k2rank/hk_matrix.hpp"
#include "k2rank/survey.hpp"

using namespace k2rank;

TEST_CASE("worked profiles") {
    const auto c = classify_and_rank(17, 41, 73);
    CHECK(c.profile.edges == std::array<Sign, 3>{Sign::Minus, Sign::Minus, Sign::Plus});
    CHECK(c.profile.case_label == 3);
    CHECK(c.four_rank == 1);
    CHECK(c.profile.v_symbols[0] == Sign::Plus);

    const auto one = classify_and_rank(17, 89, 257);
    CHECK(one.profile.edges == std::array<Sign, 3>{Sign::Plus, Sign::Plus, Sign::Plus});
    CHECK(one.profile.case_label == 1);
    CHECK((one.four_rank == 2 || one.four_rank == 3));
}

TEST_CASE("permutation invariance") {
    for (const auto& e : enumerate_X(50881, 3'000'000)) {
        auto p = e.primes;
        const auto base = classify_and_rank(p[0], p[1], p[2]);
        std::sort(p.begin(), p.end());
        do {
            const auto c = classify_and_rank(p[0], p[1], p[2]);
            CHECK(c.four_rank == base.four_rank);
            CHECK(c.profile.case_label == base.profile.case_label);
            CHECK(c.profile.primes == e.primes);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("agreement with the symbol matrix and admissibility") {
    for (const auto& e : enumerate_X(50881, 20'000'000)) {
        const auto c = classify_and_rank(e.primes[0], e.primes[1], e.primes[2]);
        CHECK(is_admissible(c.profile.case_label, c.four_rank));
        CHECK(four_rank_with_v(factor_squarefree(e.d), c.profile.v).four_rank == c.four_rank);
        const auto minus = std::count(c.profile.edges.begin(), c.profile.edges.end(), Sign::Minus);
        CHECK(c.profile.case_label == 1 + minus);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(classify_and_rank(17, 17, 41), InvalidArgument);
    CHECK_THROWS_AS(classify_and_rank(7, 17, 41), InvalidArgument);
    CHECK_THROWS_AS(classify_and_rank(17, 41, 81), InvalidArgument);
}

TEST_CASE("theoretical densities") {
    const auto t = theoretical_densities();
    Fraction total(0);
    for (const auto& [rank, f] : t.by_rank) total += f;
    CHECK(total == Fraction(1));
    CHECK(t.by_rank.at(0) == Fraction(1, 4));
    CHECK(t.by_rank.at(1) == Fraction(17, 32));
    CHECK(t.by_rank.at(2) == Fraction(13, 64));
    CHECK(t.by_rank.at(3) == Fraction(1, 64));

    Fraction case_total(0);
    std::map<int, Fraction> rank_marginal;
    std::map<int, Fraction> case_marginal;
    for (const auto& [key, f] : t.by_case_rank) {
        case_total += f;
        rank_marginal[key.second] += f;
        case_marginal[key.first] += f;
        CHECK(is_admissible(key.first, key.second));
    }
    CHECK(case_total == Fraction(1));
    CHECK(rank_marginal == t.by_rank);
    CHECK(case_marginal.at(1) == Fraction(1, 8));
    CHECK(case_marginal.at(2) == Fraction(3, 8));
    CHECK(case_marginal.at(3) == Fraction(3, 8));
    CHECK(case_marginal.at(4) == Fraction(1, 8));
    CHECK(t.by_case_rank.at({3, 0}) + t.by_case_rank.at({4, 0}) == Fraction(1, 4));
}

TEST_CASE("admissible pairs") {
    int count = 0;
    for (int c = 0; c <= 5; ++c) {
        for (int r = -1; r <= 4; ++r) count += is_admissible(c, r) ? 1 : 0;
    }
    CHECK(count == 8);
    CHECK(is_admissible(1, 3));
    CHECK_FALSE(is_admissible(2, 3));
    CHECK_FALSE(is_admissible(4, 2));
}
