#include "k2rank/hk_matrix.hpp"

#include <string>

#include "k2rank/case_classifier.hpp"
#include "k2rank/errors.hpp"

namespace k2rank {

namespace {

void require_real_quadratic(const Factorization& d) {
    if (d.value <= 1) throw InvalidArgument("need squarefree d > 1, got " + std::to_string(d.value));
}

SymbolMatrix assemble(std::vector<RowLabel> labels, std::vector<Place> cols, std::vector<std::vector<Sign>> entries) {
    SymbolMatrix m;
    m.f2 = BitMatrix(entries.size(), cols.size());
    for (std::size_t r = 0; r < entries.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) m.f2.set(r, c, to_bit(entries[r][c]));
    }
    m.row_labels = std::move(labels);
    m.col_labels = std::move(cols);
    m.entries = std::move(entries);
    return m;
}

std::vector<Sign> symbol_row(std::int64_t a, std::int64_t b, const std::vector<Place>& cols) {
    std::vector<Sign> row;
    row.reserve(cols.size());
    for (const auto& place : cols) row.push_back(hilbert_symbol(a, b, place));
    return row;
}

}  // namespace

std::string RowLabel::to_string() const {
    switch (kind) {
        case Kind::Prime: return "(-d," + std::to_string(prime) + ")";
        case Kind::V: return "(-d,v)";
        case Kind::MinusOne: return "(d,-1)";
    }
    return {};
}

bool SymbolMatrix::row_products_hold() const {
    for (std::size_t r = 0; r < entries.size(); ++r) {
        if (row_labels[r].kind == RowLabel::Kind::V) continue;
        Sign product = Sign::Plus;
        for (auto s : entries[r]) product *= s;
        if (product != Sign::Plus) return false;
    }
    return true;
}

SymbolMatrix build_matrix(const Factorization& d, std::int64_t v) {
    require_real_quadratic(d);
    if (v == 0) throw InvalidArgument("build_matrix: v must be nonzero");
    std::vector<Place> cols{Place{2}};
    for (auto p : d.odd_primes) cols.push_back(Place{p});

    std::vector<RowLabel> labels;
    std::vector<std::vector<Sign>> rows;
    for (int i = 0; i + 1 < d.t; ++i) {
        labels.push_back(RowLabel{RowLabel::Kind::Prime, d.odd_primes[i]});
        rows.push_back(symbol_row(-d.value, d.odd_primes[i], cols));
    }
    if (d.t > 0) {
        labels.push_back(RowLabel{RowLabel::Kind::V, 0});
        rows.push_back(symbol_row(-d.value, v, cols));
    }
    labels.push_back(RowLabel{RowLabel::Kind::MinusOne, 0});
    rows.push_back(symbol_row(d.value, -1, cols));
    return assemble(std::move(labels), std::move(cols), std::move(rows));
}

SymbolMatrix build_matrix(const Factorization& d) {
    require_real_quadratic(d);
    const NormTests nt = norm_tests(d);
    const std::int64_t v = nt.a == 1 ? 2 : represent_norm(d).v();
    return build_matrix(d, v);
}

int f2_rank(const SymbolMatrix& m) { return static_cast<int>(m.f2.rank()); }

FourRankReport four_rank_with_v(const Factorization& d, std::int64_t v) {
    require_real_quadratic(d);
    const NormTests nt = norm_tests(d);
    FourRankReport r;
    r.d = d.value;
    r.t = d.t;
    r.v = v;
    r.a = nt.a;
    r.a_prime = nt.a_prime;
    r.matrix = build_matrix(d, v);
    r.rank = f2_rank(r.matrix);
    r.four_rank = r.t - r.rank + r.a_prime - r.a;
    return r;
}

FourRankReport four_rank_k2(const Factorization& d) {
    require_real_quadratic(d);
    const NormTests nt = norm_tests(d);
    std::optional<NormRepresentation> rep;
    std::int64_t v = 2;
    if (nt.a == 0) {
        rep = represent_norm(d);
        v = rep->v();
    }
    FourRankReport r = four_rank_with_v(d, v);
    r.norm_rep = rep;
    if (r.four_rank < 0 || r.four_rank > r.t) {
        throw ConsistencyFailure("4-rank " + std::to_string(r.four_rank) + " outside [0, t] for d = " +
                                 std::to_string(d.value));
    }
    if (auto triple = x_triple(d.value)) {
        const Classification fast = classify_and_rank((*triple)[0], (*triple)[1], (*triple)[2]);
        r.case_label = fast.profile.case_label;
        if (fast.four_rank != r.four_rank) {
            throw ConsistencyFailure("case analysis gives 4-rank " + std::to_string(fast.four_rank) +
                                     " but the symbol matrix gives " + std::to_string(r.four_rank) +
                                     " for d = " + std::to_string(d.value));
        }
    }
    return r;
}

FourRankReport four_rank_k2(std::int64_t d) {
    if (d <= 1) throw InvalidArgument("need squarefree d > 1, got " + std::to_string(d));
    return four_rank_k2(factor_squarefree(d));
}

std::optional<std::array<std::int64_t, 3>> x_triple(std::int64_t d) {
    if (d < 50881 || d % 2 == 0) return std::nullopt;
    // Cheap rejection: every element of X is 1 mod 8.
    if (d % 8 != 1) return std::nullopt;
    Factorization f;
    try {
        f = factor_squarefree(d);
    } catch (const NotSquarefree&) {
        return std::nullopt;
    }
    if (f.t != 3) return std::nullopt;
    for (auto p : f.odd_primes) {
        if (p % 8 != 1) return std::nullopt;
    }
    return std::array<std::int64_t, 3>{f.odd_primes[0], f.odd_primes[1], f.odd_primes[2]};
}

bool last_row_deletion_check(std::int64_t d) {
    if (!is_in_X(d)) throw InvalidArgument(std::to_string(d) + " is not a product of three primes = 1 mod 8");
    const SymbolMatrix m = build_matrix(factor_squarefree(d));
    return m.f2.rank() == m.f2.without_row(m.f2.rows() - 1).rank();
}

int reduced_matrix_four_rank(std::int64_t d) {
    const auto triple = x_triple(d);
    if (!triple) throw InvalidArgument(std::to_string(d) + " is not a product of three primes = 1 mod 8");
    const std::int64_t v = represent_norm(factor_squarefree(d)).v();
    const std::vector<Place> cols{Place{2}, Place{(*triple)[0]}, Place{(*triple)[1]}, Place{(*triple)[2]}};
    BitMatrix m(3, 4);
    const std::array<std::int64_t, 3> second{(*triple)[0], (*triple)[1], v};
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 4; ++c) m.set(r, c, to_bit(hilbert_symbol(-d, second[r], cols[c])));
    }
    return 3 - static_cast<int>(m.rank());
}

RedeiResult redei_four_rank(const Factorization& d) {
    if (d.value <= 1 || d.m != 0) throw InvalidArgument("Redei matrix needs odd squarefree d > 1");
    for (auto p : d.odd_primes) {
        if (p % 8 != 1) throw InvalidArgument("Redei matrix needs every prime divisor = 1 mod 8");
    }
    std::vector<Place> cols;
    for (auto p : d.odd_primes) cols.push_back(Place{p});
    std::vector<RowLabel> labels;
    std::vector<std::vector<Sign>> rows;
    for (auto p : d.odd_primes) {
        labels.push_back(RowLabel{RowLabel::Kind::Prime, p});
        rows.push_back(symbol_row(-d.value, p, cols));
    }
    RedeiResult out;
    out.matrix = assemble(std::move(labels), std::move(cols), std::move(rows));
    out.rank = f2_rank(out.matrix);
    out.four_rank_narrow = d.t - 1 - out.rank;
    return out;
}

bool representation_invariance_check(std::int64_t d, std::span<const int> k_range) {
    const Factorization f = factor_squarefree(d);
    const FourRankReport base = four_rank_k2(f);
    if (!base.norm_rep) throw NotApplicable("2 is not a norm from Q(sqrt " + std::to_string(d) + ")");
    const QuadInt z = base.norm_rep->element();
    for (int k : k_range) {
        const QuadInt unit = k >= 0 ? power(kSquareUnit, static_cast<unsigned>(k))
                                    : power(kSquareUnitInverse, static_cast<unsigned>(-k));
        QuadInt moved = z * unit;
        if (moved.a < 0) moved = -moved;
        if (four_rank_with_v(f, moved.a + moved.b).four_rank != base.four_rank) return false;
    }
    return four_rank_with_v(f, represent_norm_direct(d).v()).four_rank == base.four_rank;
}

}  // namespace k2rank
