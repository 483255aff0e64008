#include "k2rank/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "k2rank/appendix.hpp"
#include "k2rank/arith.hpp"
#include "k2rank/errors.hpp"
#include "k2rank/zsqrt2.hpp"

namespace k2rank {

namespace {

constexpr std::size_t kMaxCounterexamples = 20;
constexpr std::int64_t kMaxAbsD = 10'000'000;

void record_failure(VerifyResult& r, const std::string& what) {
    ++r.failed;
    if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(what);
}

std::vector<std::int64_t> split_primes(std::int64_t limit) {
    std::vector<std::int64_t> out;
    for (auto p : sieve_primes(limit)) {
        if (p % 8 == 1 || p % 8 == 7) out.push_back(p);
    }
    return out;
}

std::int64_t pick(const std::vector<std::int64_t>& v, std::mt19937_64& rng) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

/// Random squarefree d = +-2^m * (1 to 4 primes = +-1 mod 8), |d| <= 10^7.
Factorization random_admissible(const std::vector<std::int64_t>& primes, std::mt19937_64& rng) {
    for (;;) {
        const int k = std::uniform_int_distribution<int>(1, 4)(rng);
        const int m = std::uniform_int_distribution<int>(0, 1)(rng);
        const int n = std::uniform_int_distribution<int>(0, 1)(rng);
        const double budget = static_cast<double>(kMaxAbsD >> m);
        const auto bound = static_cast<std::int64_t>(std::pow(budget, 1.0 / k));
        const auto end = std::upper_bound(primes.begin(), primes.end(), bound);
        if (end == primes.begin()) continue;
        std::vector<std::int64_t> chosen;
        std::int64_t value = m == 1 ? 2 : 1;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            const auto idx = std::uniform_int_distribution<std::ptrdiff_t>(0, end - primes.begin() - 1)(rng);
            const std::int64_t p = primes[static_cast<std::size_t>(idx)];
            ok = std::find(chosen.begin(), chosen.end(), p) == chosen.end() && value * p <= kMaxAbsD;
            chosen.push_back(p);
            value *= p;
        }
        if (!ok) continue;
        return factor_squarefree(n == 1 ? -value : value);
    }
}

void suite_product_formula(VerifyResult& r, std::mt19937_64& rng) {
    const auto primes = split_primes(kMaxAbsD);
    while (r.checked < r.limit) {
        const Factorization d = random_admissible(primes, rng);
        for (auto pk : d.odd_primes) {
            ++r.checked;
            const Sign direct = direct_symbol(d, pk);
            if (product_formula_symbol(d, pk) != direct) {
                record_failure(r, "d=" + std::to_string(d.value) + " p_k=" + std::to_string(pk));
            }
            if (product_formula_literal(d, pk) != direct) {
                ++r.stats[pk % 8 == 1 ? "literal_exponent_mismatch_pk_1_mod_8" : "literal_exponent_mismatch_pk_7_mod_8"];
            }
        }
    }
    const std::int64_t pairs = std::max<std::int64_t>(1, r.limit / 10);
    const auto small = split_primes(5000);
    std::vector<std::int64_t> one, seven;
    for (auto p : small) (p % 8 == 1 ? one : seven).push_back(p);
    for (const auto* family : {&seven, &one}) {
        const std::string tag = family == &seven ? "example_p7" : "example_p1";
        std::int64_t done = 0;
        while (done < pairs) {
            const std::int64_t p = pick(*family, rng);
            const std::int64_t l = pick(one, rng);
            if (p == l || legendre(l, p) != 1) continue;
            ++done;
            for (const auto& s : example_specializations(p, l)) {
                ++r.checked;
                ++r.stats[tag + "_checks"];
                if (!s.holds()) {
                    record_failure(r, "example d=" + s.label + " p=" + std::to_string(p) + " l=" + std::to_string(l));
                }
            }
        }
        r.stats[tag + "_pairs"] = done;
    }
}

void suite_lemma_rep(VerifyResult& r, bool first) {
    for (auto l : split_primes(r.limit)) {
        ++r.checked;
        const LemmaRepResult res = lemma_rep_checks(l);
        if (!(first ? res.lemma1_ok : res.lemma2_ok)) record_failure(r, "l=" + std::to_string(l));
    }
}

void suite_lemma3(VerifyResult& r) {
    const auto primes = split_primes(r.limit);
    for (auto l : primes) {
        for (auto p : primes) {
            if (p == l) continue;
            try {
                if (!lemma3_check(l, p)) record_failure(r, "l=" + std::to_string(l) + " p=" + std::to_string(p));
                ++r.checked;
            } catch (const ConditionNotMet&) {
                ++r.skipped;
            }
        }
    }
}

void suite_hplus(VerifyResult& r) {
    const auto primes = split_primes(r.limit);
    for (auto p : primes) {
        for (auto l : primes) {
            if (l == p || l % 8 != 1) continue;
            try {
                const HplusReport rep = hplus_report(l, p);
                ++r.checked;
                if (!rep.clause_holds) {
                    record_failure(r, "l=" + std::to_string(l) + " p=" + std::to_string(p));
                }
                if (!rep.variant_holds) ++r.stats["variant_clause_disagreements"];
                if (rep.principal_solvable) ++r.stats["explicit_witnesses"];
            } catch (const ConditionNotMet&) {
                ++r.skipped;
            } catch (const NotApplicable&) {
                ++r.not_applicable;
            }
        }
    }
}

void suite_r2(VerifyResult& r, std::mt19937_64& rng) {
    const auto small = split_primes(5000);
    const std::int64_t half = std::max<std::int64_t>(1, r.limit / 2);
    std::int64_t done = 0;
    while (done < half) {
        const int k = std::uniform_int_distribution<int>(0, 3)(rng);
        std::int64_t value = std::uniform_int_distribution<int>(0, 1)(rng) == 1 ? -1 : 1;
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) value *= 2;
        std::vector<std::int64_t> chosen;
        for (int i = 0; i < k; ++i) chosen.push_back(pick(small, rng));
        std::sort(chosen.begin(), chosen.end());
        if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) continue;
        for (auto p : chosen) value *= p;
        const std::int64_t l = pick(small, rng);
        if (std::find(chosen.begin(), chosen.end(), l) != chosen.end()) continue;
        ++done;
        ++r.checked;
        ++r.stats["composite_symbol_checks"];
        if (!remark_r2_check(factor_squarefree(value), l)) {
            record_failure(r, "r=" + std::to_string(value) + " l=" + std::to_string(l));
        }
    }
    const auto primes = split_primes(kMaxAbsD);
    for (std::int64_t i = 0; i < half; ++i) {
        const Factorization d = random_admissible(primes, rng);
        const std::int64_t l = pick(d.odd_primes, rng);
        ++r.checked;
        ++r.stats["quotient_decomposition_checks"];
        if (remark_r3_symbol(d, l) != direct_symbol(d, l)) {
            record_failure(r, "d=" + std::to_string(d.value) + " l=" + std::to_string(l));
        }
    }
}

void suite_reciprocity(VerifyResult& r, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(-1'000'000, 1'000'000);
    while (r.checked < r.limit) {
        const std::int64_t a = dist(rng);
        const std::int64_t b = dist(rng);
        if (a == 0 || b == 0) continue;
        ++r.checked;
        Sign product = Sign::Plus;
        for (const auto& place : relevant_places(a, b)) product *= hilbert_symbol(a, b, place);
        if (product != Sign::Plus) record_failure(r, "a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"product-formula", "lemma1", "lemma2", "lemma3",
                                                "hplus",           "r2",     "reciprocity"};
    return names;
}

std::int64_t default_verify_limit(const std::string& suite) {
    static const std::unordered_map<std::string, std::int64_t> defaults{
        {"product-formula", 1000}, {"lemma1", 100000}, {"lemma2", 100000}, {"lemma3", 2000},
        {"hplus", 500},            {"r2", 1000},       {"reciprocity", 10000}};
    auto it = defaults.find(suite);
    if (it == defaults.end()) throw InvalidArgument("unknown verify suite '" + suite + "'");
    return it->second;
}

VerifyResult run_verify(const std::string& suite, std::int64_t limit, std::uint64_t seed) {
    default_verify_limit(suite);
    if (limit <= 0) throw InvalidArgument("verify: limit must be positive");
    VerifyResult r;
    r.suite = suite;
    r.limit = limit;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    if (suite == "product-formula") {
        suite_product_formula(r, rng);
    } else if (suite == "lemma1") {
        suite_lemma_rep(r, true);
    } else if (suite == "lemma2") {
        suite_lemma_rep(r, false);
    } else if (suite == "lemma3") {
        suite_lemma3(r);
    } else if (suite == "hplus") {
        suite_hplus(r);
    } else if (suite == "r2") {
        suite_r2(r, rng);
    } else {
        suite_reciprocity(r, rng);
    }
    return r;
}

}  // namespace k2rank
