#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace k2rank {

/// Outcome of one property sweep. `checked` counts evaluated instances,
/// `failed` the ones contradicting the property (the first few are kept in
/// `counterexamples`), `skipped` instances outside a lemma's hypothesis and
/// `not_applicable` those with 4 not dividing the class number.
struct VerifyResult {
    std::string suite;
    std::int64_t limit = 0;
    std::uint64_t seed = 0;
    std::int64_t checked = 0;
    std::int64_t failed = 0;
    std::int64_t skipped = 0;
    std::int64_t not_applicable = 0;
    std::vector<std::string> counterexamples;
    std::map<std::string, std::int64_t> stats;

    bool passed() const { return failed == 0 && checked > 0; }
};

/// Suite names: product-formula, lemma1, lemma2, lemma3, hplus, r2,
/// reciprocity.
const std::vector<std::string>& verify_suites();

/// Meaning of `limit` per suite:
///  product-formula: random (d, p_k) instances with |d| <= 10^7, plus that
///                   many / 10 random (p, l) pairs for each example family;
///  lemma1, lemma2:  bound on l;
///  lemma3:          bound on l and p;
///  hplus:           bound on l and p (l = 1 mod 8);
///  r2:              random instances of the composite-symbol identity and
///                   of the r = d/l decomposition;
///  reciprocity:     random pairs (a, b) with |a|, |b| <= 10^6.
std::int64_t default_verify_limit(const std::string& suite);

/// Throws InvalidArgument for an unknown suite or a non-positive limit.
VerifyResult run_verify(const std::string& suite, std::int64_t limit, std::uint64_t seed = 1);

}  // namespace k2rank
