#include "k2rank/case_classifier.hpp"

#include <algorithm>
#include <string>

#include "k2rank/arith.hpp"
#include "k2rank/errors.hpp"
#include "k2rank/zsqrt2.hpp"

namespace k2rank {

Classification classify_and_rank(std::int64_t p1, std::int64_t p2, std::int64_t p3) {
    std::array<std::int64_t, 3> p{p1, p2, p3};
    for (auto q : p) {
        if (!is_prime(q) || q % 8 != 1) {
            throw InvalidArgument("classify_and_rank: " + std::to_string(q) + " is not a prime = 1 mod 8");
        }
    }
    std::sort(p.begin(), p.end());
    if (p[0] == p[1] || p[1] == p[2]) throw InvalidArgument("classify_and_rank: primes must be distinct");
    const int128 product = static_cast<int128>(p[0]) * p[1] * p[2];
    if (product > (static_cast<int128>(1) << 62)) throw InvalidArgument("classify_and_rank: product too large");
    const auto d = static_cast<std::int64_t>(product);

    Classification out;
    CaseProfile& prof = out.profile;
    prof.primes = p;
    prof.edges = {legendre_sign(p[1], p[0]), legendre_sign(p[2], p[0]), legendre_sign(p[2], p[1])};
    const auto minus_edges = std::count(prof.edges.begin(), prof.edges.end(), Sign::Minus);
    prof.case_label = 1 + static_cast<int>(minus_edges);

    prof.v = represent_norm(factor_squarefree(d)).v();
    const Sign s2 = hilbert_symbol(-d, prof.v, Place{2});
    prof.v_symbols = {s2, legendre_sign(prof.v, p[0]), legendre_sign(prof.v, p[1]), legendre_sign(prof.v, p[2])};

    const bool s_plus = s2 == Sign::Plus;
    switch (prof.case_label) {
        case 1: {
            const bool all_plus = std::all_of(prof.v_symbols.begin() + 1, prof.v_symbols.end(),
                                              [](Sign s) { return s == Sign::Plus; });
            out.four_rank = (s_plus && all_plus) ? 3 : 2;
            break;
        }
        case 2: {
            // Edge k joins the pair (i, j).
            static constexpr std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
            const auto k = std::find(prof.edges.begin(), prof.edges.end(), Sign::Minus) - prof.edges.begin();
            const auto [i, j] = pairs[static_cast<std::size_t>(k)];
            const bool agree = prof.v_symbols[1 + i] == prof.v_symbols[1 + j];
            out.four_rank = (s_plus && agree) ? 2 : 1;
            break;
        }
        default:
            out.four_rank = s_plus ? 1 : 0;
            break;
    }
    return out;
}

DensityTable theoretical_densities() {
    DensityTable t;
    t.by_case_rank = {
        {{1, 3}, Fraction(1, 64)}, {{1, 2}, Fraction(7, 64)}, {{2, 2}, Fraction(3, 32)}, {{2, 1}, Fraction(9, 32)},
        {{3, 1}, Fraction(3, 16)}, {{3, 0}, Fraction(3, 16)}, {{4, 1}, Fraction(1, 16)}, {{4, 0}, Fraction(1, 16)},
    };
    t.by_rank = {{0, Fraction(1, 4)}, {1, Fraction(17, 32)}, {2, Fraction(13, 64)}, {3, Fraction(1, 64)}};
    return t;
}

bool is_admissible(int case_label, int four_rank) {
    switch (case_label) {
        case 1: return four_rank == 2 || four_rank == 3;
        case 2: return four_rank == 1 || four_rank == 2;
        case 3:
        case 4: return four_rank == 0 || four_rank == 1;
        default: return false;
    }
}

}  // namespace k2rank
