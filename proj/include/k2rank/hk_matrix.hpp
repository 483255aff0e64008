#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "k2rank/arith.hpp"
#include "k2rank/f2_matrix.hpp"
#include "k2rank/sign.hpp"
#include "k2rank/zsqrt2.hpp"

namespace k2rank {

struct RowLabel {
    enum class Kind { Prime, V, MinusOne };
    Kind kind = Kind::Prime;
    std::int64_t prime = 0;  // only for Kind::Prime

    std::string to_string() const;
    friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

/// Labeled +-1 matrix together with its F2 image (+1 -> 0, -1 -> 1).
struct SymbolMatrix {
    std::vector<RowLabel> row_labels;
    std::vector<Place> col_labels;
    std::vector<std::vector<Sign>> entries;
    BitMatrix f2;

    /// True when every prime row and the (d,-1) row has entry product +1.
    bool row_products_hold() const;
};

/// The (t+1) x (t+1) matrix for Q(sqrt d): rows (-d, p_i) for i < t, the
/// v-row (-d, v), the row (d, -1); columns 2, p_1, ..., p_t. v = 2 when 2 is
/// not a norm from the field, otherwise u + w for the canonical
/// representation d = u^2 - 2w^2. For d = 2 (t = 0) only the (d, -1) row is
/// present. Requires d > 1 squarefree.
SymbolMatrix build_matrix(const Factorization& d);

/// Same layout with an explicit v.
SymbolMatrix build_matrix(const Factorization& d, std::int64_t v);

int f2_rank(const SymbolMatrix& m);

struct FourRankReport {
    std::int64_t d = 0;
    int t = 0;
    std::int64_t v = 0;
    std::optional<NormRepresentation> norm_rep;
    int a = 0;
    int a_prime = 0;
    SymbolMatrix matrix;
    int rank = 0;
    int four_rank = 0;
    std::optional<int> case_label;  // set for d in X
};

/// 4-rank of K2 of the ring of integers of Q(sqrt d), as
/// t - rank(M) + a' - a. For d in X the case-analysis fast path is run too and
/// a disagreement throws ConsistencyFailure.
FourRankReport four_rank_k2(std::int64_t d);
FourRankReport four_rank_k2(const Factorization& d);

/// Matrix route with a caller-supplied v (no cross-check).
FourRankReport four_rank_with_v(const Factorization& d, std::int64_t v);

/// The three primes of d when d = p1*p2*p3 with distinct primes = 1 mod 8.
std::optional<std::array<std::int64_t, 3>> x_triple(std::int64_t d);
inline bool is_in_X(std::int64_t d) { return x_triple(d).has_value(); }

/// True iff deleting the (d,-1) row leaves the rank unchanged. d in X.
bool last_row_deletion_check(std::int64_t d);

/// 3 - rank of the 3 x 4 matrix (rows p1, p2, v; columns 2, p1, p2, p3). d in X.
int reduced_matrix_four_rank(std::int64_t d);

struct RedeiResult {
    SymbolMatrix matrix;  // t x t, rows (-d, p_i), columns p_1..p_t
    int rank = 0;
    int four_rank_narrow = 0;
};

/// 4-rank of the narrow class group of Q(sqrt d) as t - 1 - rank(R) for odd
/// squarefree d > 1 all of whose primes are 1 mod 8.
RedeiResult redei_four_rank(const Factorization& d);

/// Recomputes the 4-rank with v taken from (u + w*sqrt2)(3 + 2*sqrt2)^k for
/// each k, and from the direct-search representation. True iff all agree
/// with four_rank_k2(d).
bool representation_invariance_check(std::int64_t d, std::span<const int> k_range);

}  // namespace k2rank
