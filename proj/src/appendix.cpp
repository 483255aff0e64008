#include "k2rank/appendix.hpp"

#include <string>

#include "k2rank/class_numbers.hpp"
#include "k2rank/errors.hpp"

namespace k2rank {

namespace {

bool is_pm1_mod_8(std::int64_t p) {
    const auto r = floor_mod(p, 8);
    return r == 1 || r == 7;
}

void require_split_prime(std::int64_t q, const char* what) {
    if (!is_prime(q) || !is_pm1_mod_8(q)) {
        throw InvalidArgument(std::string(what) + ": " + std::to_string(q) + " is not a prime = +-1 mod 8");
    }
}

Sign explicit_symbol(const QuadInt& pi, const PrimeRep& rep) {
    const QuadInt z = kFundamentalUnit * rep.element() * pi;
    return legendre_sign(floor_mod(z.a, rep.l) + floor_mod(z.b, rep.l), rep.l);
}

Sign dual_symbol(const QuadInt& pi, const PrimeRep& rep, const std::string& name) {
    const Sign via_sum = explicit_symbol(pi, rep);
    const Sign via_ideal = symbol_over_ideal(pi, rep);
    if (via_sum != via_ideal) {
        throw ConsistencyFailure("symbol of " + name + " at l = " + std::to_string(rep.l) +
                                 " differs between u+w and residue routes");
    }
    return via_sum;
}

void require_formula_domain(const Factorization& d, std::int64_t pk) {
    if (pk == 2) throw InvalidArgument("the product formula covers odd places only");
    bool found = false;
    for (auto p : d.odd_primes) {
        if (!is_pm1_mod_8(p)) throw InvalidArgument("prime " + std::to_string(p) + " of d is not +-1 mod 8");
        found = found || p == pk;
    }
    if (!found) throw InvalidArgument(std::to_string(pk) + " does not divide " + std::to_string(d.value));
}

std::vector<std::int64_t> others(const Factorization& d, std::int64_t pk) {
    std::vector<std::int64_t> out;
    for (auto p : d.odd_primes) {
        if (p != pk) out.push_back(p);
    }
    return out;
}

Sign assemble(const Factorization& d, std::int64_t pk, long long minus_one_exponent) {
    const auto rest = others(d, pk);
    const BaseSymbolSet base = base_symbols(pk, rest);
    Sign s = power(base.s_minus1, minus_one_exponent) * power(base.s_two, d.m);
    for (auto p : rest) s *= base.s_p.at(p);
    return s;
}

void require_well_defined(std::int64_t l, std::int64_t p) {
    const std::int64_t signed_p = p % 4 == 1 ? p : -p;
    if (legendre(signed_p, l) != 1) {
        throw ConditionNotMet("((-1)^((p-1)/2) p / l) != 1 for p = " + std::to_string(p) +
                              ", l = " + std::to_string(l));
    }
}

}  // namespace

Sign symbol_over_ideal(const QuadInt& z, const PrimeRep& rep) {
    const std::int64_t r = residue_mod_ideal(z, rep);
    if (r == 0) throw NotCoprime("element lies in the prime ideal above " + std::to_string(rep.l));
    return legendre_sign(r, rep.l);
}

QuadInt positive_prime_element(std::int64_t p) {
    const QuadInt pi = cached_prime_rep(p).element();
    return floor_mod(p, 8) == 7 ? kFundamentalUnit * pi : pi;
}

BaseSymbolSet base_symbols(std::int64_t l, std::span<const std::int64_t> primes) {
    require_split_prime(l, "base_symbols");
    const PrimeRep rep = cached_prime_rep(l);
    BaseSymbolSet out;
    out.l = l;
    out.s_minus1 = dual_symbol(kFundamentalUnit, rep, "1+sqrt2");
    out.s_two = dual_symbol(kPiTwo, rep, "2+sqrt2");
    for (auto p : primes) {
        if (p == l) throw InvalidArgument("base_symbols: p must differ from l");
        require_split_prime(p, "base_symbols");
        out.s_p[p] = dual_symbol(positive_prime_element(p), rep, "pi_" + std::to_string(p));
        out.pi_symbol[p] = symbol_over_ideal(cached_prime_rep(p).element(), rep);
    }
    return out;
}

Sign product_formula_symbol(const Factorization& d, std::int64_t pk) {
    require_formula_domain(d, pk);
    return assemble(d, pk, d.n + (pk + 1) / 2);
}

Sign product_formula_literal(const Factorization& d, std::int64_t pk) {
    require_formula_domain(d, pk);
    const long long sign_term = ((pk + 1) / 2) % 2 == 0 ? 1 : -1;
    return assemble(d, pk, d.n + sign_term);
}

Sign direct_symbol(const Factorization& d, std::int64_t pk) {
    require_formula_domain(d, pk);
    return hilbert_symbol(-d.value, represent_norm(d).v(), Place{pk});
}

bool remark_r2_check(const Factorization& r, std::int64_t l) {
    require_split_prime(l, "remark_r2_check");
    for (auto p : r.odd_primes) {
        if (p == l) throw InvalidArgument("remark_r2_check: l divides r");
    }
    const PrimeRep rep = cached_prime_rep(l);
    const Sign lhs = explicit_symbol(compose_norm_element(r), rep);
    const BaseSymbolSet base = base_symbols(l, r.odd_primes);
    Sign rhs = power(base.s_minus1, r.n + r.c) * power(base.s_two, r.m);
    for (auto p : r.odd_primes) rhs *= base.pi_symbol.at(p);
    return lhs == rhs;
}

Sign remark_r3_symbol(const Factorization& d, std::int64_t l) {
    require_formula_domain(d, l);
    if (d.value % l != 0) throw InvalidArgument("remark_r3_symbol: l does not divide d");
    const Factorization r = factor_squarefree(d.value / l);
    const PrimeRep rep = cached_prime_rep(l);
    const Sign s = explicit_symbol(compose_norm_element(r), rep);
    if (floor_mod(l, 8) == 7) return s;
    return explicit_symbol(kFundamentalUnit, rep) * s;
}

LemmaRepResult lemma_rep_checks(std::int64_t l) {
    require_split_prime(l, "lemma_rep_checks");
    const PrimeRep rep = cached_prime_rep(l);
    LemmaRepResult out;
    out.s_minus1 = symbol_over_ideal(kFundamentalUnit, rep);
    out.s_two = symbol_over_ideal(kPiTwo, rep);
    const auto l16 = l % 16;
    out.lemma2_ok = (out.s_two == Sign::Plus) == (l16 == 1 || l16 == 15);

    std::int64_t bound = isqrt(34 * l);
    if (bound * bound < 34 * l) ++bound;
    if (l % 8 == 1) {
        for (std::int64_t a = 1; a <= bound && !out.lemma1_witness; a += 4) {
            const std::int64_t diff = a * a - l;
            if (diff < 0 || diff % 32 != 0 || !is_square(diff / 32)) continue;
            out.lemma1_witness = std::make_pair(a, isqrt(diff / 32));
        }
    } else {
        const std::int64_t sqrt2 = rep.sqrt2_residue();
        for (std::int64_t a = -bound; a <= bound && !out.lemma1_witness; ++a) {
            if (floor_mod(a, 4) != 1) continue;
            const std::int64_t sum = a * a + l;
            if (sum % 32 != 0 || !is_square(sum / 32)) continue;
            const std::int64_t b = isqrt(sum / 32);
            if (b <= 0) continue;
            // a + 4b*sqrt2 vanishes modulo the conjugate ideal (sqrt2 -> -x/y).
            if (floor_mod(a - mul_mod(4 * b, sqrt2, l), l) == 0) out.lemma1_witness = std::make_pair(a, b);
        }
    }
    out.lemma1_ok = (out.s_minus1 == Sign::Plus) == out.lemma1_witness.has_value();
    return out;
}

bool lemma3_check(std::int64_t l, std::int64_t p) {
    require_split_prime(l, "lemma3_check");
    require_split_prime(p, "lemma3_check");
    if (l == p) throw InvalidArgument("lemma3_check: p must differ from l");
    require_well_defined(l, p);
    const std::int64_t ps[] = {p};
    const BaseSymbolSet base = base_symbols(l, ps);
    const PrimeRep rep = cached_prime_rep(l);
    const Sign pi = base.pi_symbol.at(p);
    if (symbol_over_ideal(conj(cached_prime_rep(p).element()), rep) != pi) return false;
    const Sign rhs = p % 8 == 1 ? pi : base.s_minus1 * pi;
    return base.s_p.at(p) == rhs;
}

HplusReport hplus_report(std::int64_t l, std::int64_t p) {
    require_split_prime(l, "lemma_hplus_check");
    require_split_prime(p, "lemma_hplus_check");
    if (l == p) throw InvalidArgument("lemma_hplus_check: p must differ from l");
    require_well_defined(l, p);

    HplusReport r;
    r.p = p;
    r.l = l;
    const bool one_mod_8 = p % 8 == 1;
    r.discriminant = one_mod_8 ? 8 * p : -8 * p;
    r.class_number = one_mod_8 ? narrow_class_number(r.discriminant).h_plus : definite_class_number(r.discriminant);
    if (r.class_number % 4 != 0) {
        throw NotApplicable("class number " + std::to_string(r.class_number) + " of discriminant " +
                            std::to_string(r.discriminant) + " is not divisible by 4");
    }
    r.exponent = static_cast<unsigned>(r.class_number / 4);
    r.pi_symbol = symbol_over_ideal(cached_prime_rep(p).element(), cached_prime_rep(l));

    const mpz_class pz(static_cast<long>(p));
    const FormZ principal = one_mod_8 ? FormZ{1, 0, mpz_class(-2 * pz)} : FormZ{1, 0, mpz_class(2 * pz)};
    const FormZ variant = one_mod_8 ? FormZ{pz, 0, -2} : FormZ{2, 0, pz};

    const FormZ F = prime_form_power(l, r.discriminant, r.exponent);
    const mpz_class lz(static_cast<long>(l));
    if (auto M = find_equivalence(F, principal)) {
        const mpz_class& n = M->m[0];
        const mpz_class& m = M->m[2];
        if (principal(n, m) != F.a || mpz_divisible_p(m.get_mpz_t(), lz.get_mpz_t()) != 0) {
            throw ConsistencyFailure("equivalence witness does not represent l^(h/4)");
        }
        r.principal_solvable = true;
        r.witness_n = n.get_str();
        r.witness_m = m.get_str();
    }
    r.variant_solvable = find_equivalence(F, variant).has_value();
    r.clause_holds = (r.pi_symbol == Sign::Plus) == r.principal_solvable;
    r.variant_holds = (r.pi_symbol == Sign::Minus) == r.variant_solvable;
    return r;
}

bool lemma_hplus_check(std::int64_t l, std::int64_t p) { return hplus_report(l, p).clause_holds; }

std::vector<Specialization> example_specializations(std::int64_t p, std::int64_t l) {
    require_split_prime(p, "example_specializations");
    if (!is_prime(l) || l % 8 != 1) throw ConditionNotMet("l must be a prime = 1 mod 8");
    if (p == l || legendre(l, p) != 1) throw ConditionNotMet("(l/p) must be +1");
    const PrimeRep rep = cached_prime_rep(l);
    const Sign pi = symbol_over_ideal(cached_prime_rep(p).element(), rep);
    const Sign unit = symbol_over_ideal(kFundamentalUnit, rep);
    const Sign two = symbol_over_ideal(kPiTwo, rep);

    struct Case {
        const char* label;
        std::int64_t factor;
        Sign displayed;
    };
    std::vector<Case> cases;
    if (p % 8 == 7) {
        cases = {{"pl", 1, pi}, {"2pl", 2, two * pi}, {"-pl", -1, unit * pi}, {"-2pl", -2, two * unit * pi}};
    } else {
        cases = {{"pl", 1, unit * pi}, {"-pl", -1, pi}};
    }
    std::vector<Specialization> out;
    for (const auto& c : cases) {
        Specialization s;
        s.label = c.label;
        s.d = c.factor * p * l;
        const Factorization f = factor_squarefree(s.d);
        s.displayed = c.displayed;
        s.formula = product_formula_symbol(f, l);
        s.direct = direct_symbol(f, l);
        out.push_back(s);
    }
    return out;
}

}  // namespace k2rank
