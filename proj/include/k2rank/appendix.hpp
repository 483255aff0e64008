#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k2rank/arith.hpp"
#include "k2rank/sign.hpp"
#include "k2rank/zsqrt2.hpp"

namespace k2rank {

/// Quadratic residue symbol of z modulo the prime ideal of rep: the Legendre
/// symbol of residue_mod_ideal(z, rep). Throws NotCoprime when z lies in the
/// ideal.
Sign symbol_over_ideal(const QuadInt& z, const PrimeRep& rep);

/// Element of norm exactly +p: the pinned generator for p = 1 mod 8, and
/// (1 + sqrt2) times it for p = 7 mod 8.
QuadInt positive_prime_element(std::int64_t p);

/// Symbols ((u_r + w_r)/l) where u_r + w_r*sqrt2 = (1+sqrt2)(x+y*sqrt2)*pi_r
/// and x + y*sqrt2 is the pinned element above l.
struct BaseSymbolSet {
    std::int64_t l = 0;
    Sign s_minus1 = Sign::Plus;          // pi = 1 + sqrt2
    Sign s_two = Sign::Plus;             // pi = 2 + sqrt2
    std::map<std::int64_t, Sign> s_p;    // pi = positive_prime_element(p)
    std::map<std::int64_t, Sign> pi_symbol;  // (pi_p / l) for the pinned generator of norm +-p
};

/// Every symbol is computed from u_r + w_r and again as symbol_over_ideal of
/// pi_r; a disagreement throws ConsistencyFailure. Throws InvalidArgument when
/// some p equals l or is not a prime = +-1 mod 8.
BaseSymbolSet base_symbols(std::int64_t l, std::span<const std::int64_t> primes);

/// (-d, u+w)_{p_k} assembled from base symbols at l = p_k:
/// s_{-1}^(n + (p_k+1)/2) * s_2^m * prod_{i != k} s_{p_i}.
/// Requires every odd prime of d to be +-1 mod 8 and p_k an odd prime of d.
Sign product_formula_symbol(const Factorization& d, std::int64_t pk);

/// The same product with the exponent n + (-1)^((p_k+1)/2) on s_{-1}. Agrees
/// with the direct symbol exactly when p_k = 1 mod 8.
Sign product_formula_literal(const Factorization& d, std::int64_t pk);

/// hilbert_symbol(-d, u + w, p_k) for the canonical representation of d.
Sign direct_symbol(const Factorization& d, std::int64_t pk);

/// Symbol of the composite element for r against
/// s_{-1}^(n+c) * s_2^m * prod (pi_p / l). Throws InvalidArgument when l | r.
bool remark_r2_check(const Factorization& r, std::int64_t l);

/// (-d, u+w)_l via r = d/l: ((u_r + w_r)/l) for l = 7 mod 8, and
/// s_{-1} * ((u_r + w_r)/l) for l = 1 mod 8.
Sign remark_r3_symbol(const Factorization& d, std::int64_t l);

struct LemmaRepResult {
    bool lemma1_ok = false;
    bool lemma2_ok = false;
    Sign s_minus1 = Sign::Plus;
    Sign s_two = Sign::Plus;
    std::optional<std::pair<std::int64_t, std::int64_t>> lemma1_witness;  // (a, b)
};

/// lemma2: s_2 = +1 iff l = +-1 mod 16.
/// lemma1: s_{-1} = +1 iff (-1)^((l-1)/2) l = a^2 - 32b^2 with a = 1 mod 4.
/// For l = 1 mod 8 the search is over a > 0; for l = 7 mod 8 over b > 0 with
/// a + 4b*sqrt2 in the conjugate of the pinned ideal. Both searches cover a
/// fundamental domain of the automorph 17 + 3*sqrt32 (|a| <= ceil(sqrt(34 l))),
/// so a negative answer is exact.
LemmaRepResult lemma_rep_checks(std::int64_t l);

/// s_p = (pi/l) for p = 1 mod 8 and s_p = s_{-1} (pi/l) for p = 7 mod 8, where
/// (pi/l) uses the pinned generator of norm +-p; also requires the symbol to
/// agree on the conjugate generator. Throws ConditionNotMet unless
/// ((-1)^((p-1)/2) p / l) = +1.
bool lemma3_check(std::int64_t l, std::int64_t p);

struct HplusReport {
    std::int64_t p = 0;
    std::int64_t l = 0;
    std::int64_t discriminant = 0;  // 8p for p = 1 mod 8, -8p for p = 7 mod 8
    std::int64_t class_number = 0;
    unsigned exponent = 0;          // class_number / 4
    Sign pi_symbol = Sign::Plus;
    bool principal_solvable = false;  // l^e = n^2 - 2p m^2 (p = 1) or n^2 + 2p m^2 (p = 7)
    std::string witness_n;
    std::string witness_m;
    bool variant_solvable = false;    // l^e = p n^2 - 2m^2 (p = 1) or 2n^2 + p m^2 (p = 7)
    bool clause_holds = false;        // (pi/l) = +1 iff principal_solvable
    bool variant_holds = false;       // (pi/l) = -1 iff variant_solvable
};

/// Decides representability of l^(h/4) through form classes: the prime form
/// above l raised to h/4 is tested for proper equivalence with the target
/// forms, and an explicit (n, m) with m != 0 mod l is recovered from the
/// equivalence and verified in arbitrary precision. Throws ConditionNotMet when
/// ((-1)^((p-1)/2) p / l) != +1 and NotApplicable when 4 does not divide h.
HplusReport hplus_report(std::int64_t l, std::int64_t p);

/// hplus_report(l, p).clause_holds
bool lemma_hplus_check(std::int64_t l, std::int64_t p);

struct Specialization {
    std::string label;   // "pl", "2pl", "-pl", "-2pl"
    std::int64_t d = 0;
    Sign displayed = Sign::Plus;  // closed form in terms of (1+sqrt2/l), (2+sqrt2/l), (pi/l)
    Sign formula = Sign::Plus;    // product_formula_symbol(d, l)
    Sign direct = Sign::Plus;     // direct_symbol(d, l)

    bool holds() const { return displayed == formula && formula == direct; }
};

/// Closed forms of (-d, u+w)_l for d = +-pl, +-2pl with p = 7 mod 8 (four
/// cases) or d = +-pl with p = 1 mod 8 (two cases); l = 1 mod 8 and
/// (l/p) = +1. Throws ConditionNotMet otherwise.
std::vector<Specialization> example_specializations(std::int64_t p, std::int64_t l);

}  // namespace k2rank
