#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>

#include <boost/rational.hpp>

#include "k2rank/sign.hpp"

namespace k2rank {

/// Symbol pattern of d = p1*p2*p3 (primes ascending).
/// edges = ((p2/p1), (p3/p1), (p3/p2)); by reciprocity the edge set is
/// symmetric because every prime is 1 mod 4.
/// v_symbols = ((-d,v)_2, (v/p1), (v/p2), (v/p3)).
struct CaseProfile {
    std::array<std::int64_t, 3> primes{};
    std::array<Sign, 3> edges{Sign::Plus, Sign::Plus, Sign::Plus};
    int case_label = 1;  // 1 + number of -1 edges
    std::array<Sign, 4> v_symbols{Sign::Plus, Sign::Plus, Sign::Plus, Sign::Plus};
    std::int64_t v = 0;
};

struct Classification {
    CaseProfile profile;
    int four_rank = 0;
};

/// Fast path for the 4-rank of K2 of Q(sqrt(p1 p2 p3)), primes distinct and
/// 1 mod 8, in any order:
///  case 1: 3 iff (-d,v)_2 = +1 and (v/p_i) = +1 for all i, else 2;
///  case 2: 2 iff (-d,v)_2 = +1 and (v/p_i) = (v/p_j) for the pair {p_i, p_j}
///          joined by the -1 edge, else 1;
///  cases 3, 4: 1 iff (-d,v)_2 = +1, else 0.
/// Throws InvalidArgument on precondition violations.
Classification classify_and_rank(std::int64_t p1, std::int64_t p2, std::int64_t p3);

using Fraction = boost::rational<std::int64_t>;

struct DensityTable {
    std::map<int, Fraction> by_rank;
    std::map<std::pair<int, int>, Fraction> by_case_rank;  // (case, rank)
};

/// Limiting densities of the 4-ranks 0..3 over X, overall and per case.
DensityTable theoretical_densities();

/// True iff (case_label, four_rank) is one of the eight attainable pairs.
bool is_admissible(int case_label, int four_rank);

}  // namespace k2rank
