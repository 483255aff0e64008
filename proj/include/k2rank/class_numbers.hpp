#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <gmpxx.h>

#include "k2rank/arith.hpp"

namespace k2rank {

/// a x^2 + b x y + c y^2 with coefficients in T (std::int64_t or mpz_class).
template <class T>
struct BinaryForm {
    T a{};
    T b{};
    T c{};

    T discriminant() const { return T(b * b - 4 * a * c); }
    /// Value at (x, y).
    T operator()(const T& x, const T& y) const { return T(a * x * x + b * x * y + c * y * y); }
    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
    friend bool operator<(const BinaryForm& l, const BinaryForm& r) {
        if (l.a != r.a) return l.a < r.a;
        if (l.b != r.b) return l.b < r.b;
        return l.c < r.c;
    }
};

using Form64 = BinaryForm<std::int64_t>;
using FormZ = BinaryForm<mpz_class>;

/// Integer 2x2 matrix acting by substitution: (f o M)(X, Y) = f(M (X, Y)^T).
struct Transform {
    std::array<mpz_class, 4> m{1, 0, 0, 1};  // row-major [[m0, m1], [m2, m3]]

    Transform operator*(const Transform& rhs) const;
    Transform inverse() const;  // for determinant 1
    mpz_class determinant() const;
};

FormZ apply(const FormZ& f, const Transform& t);

namespace forms_detail {
inline std::int64_t int_sqrt(std::int64_t n) { return isqrt(n); }
inline mpz_class int_sqrt(const mpz_class& n) { return sqrt(n); }
inline std::int64_t abs_value(std::int64_t n) { return n < 0 ? -n : n; }
inline mpz_class abs_value(const mpz_class& n) { return abs(n); }
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return floor_mod(a, m); }
inline mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}
}  // namespace forms_detail

/// |sqrt D - 2|a|| < b < sqrt D, for non-square D > 0 with s = floor(sqrt D).
template <class T>
bool is_reduced_indefinite(const BinaryForm<T>& f, const T& s) {
    using namespace forms_detail;
    const T twice_a = T(2 * abs_value(f.a));
    return f.b > 0 && f.b <= s && twice_a + f.b >= s + 1 && twice_a - f.b <= s;
}

/// One reduction step (a, b, c) -> (c, r, (r^2 - D)/(4c)), realized by the
/// substitution [[0, -1], [1, k]] with r = -b + 2ck. On reduced forms it is a
/// permutation whose orbits are the proper equivalence classes.
template <class T>
BinaryForm<T> rho(const BinaryForm<T>& f, const T& D, const T& s, T* k_out = nullptr) {
    using namespace forms_detail;
    const T C = abs_value(f.c);
    const T two_c = T(2 * C);
    T r = mod_floor(T(-f.b), two_c);
    if (C > s) {
        if (r > C) r -= two_c;
    } else {
        r = T(s - mod_floor(T(s - r), two_c));
    }
    if (k_out != nullptr) *k_out = T((r + f.b) / (2 * f.c));
    return BinaryForm<T>{f.c, r, T((r * r - D) / (4 * f.c))};
}

/// Reduced primitive forms of discriminant D > 0 (non-square).
std::vector<Form64> reduced_indefinite_forms(std::int64_t D);

/// The rho-cycle starting at a reduced form.
std::vector<Form64> rho_cycle(const Form64& f);

struct FormClassGroupSummary {
    std::int64_t discriminant = 0;
    std::int64_t h_plus = 0;
    std::vector<std::size_t> cycle_sizes;  // one entry per class
};

bool is_fundamental_discriminant(std::int64_t D);

/// Narrow class number of the real quadratic field of discriminant D, as the
/// number of rho-cycles of reduced primitive forms. Throws InvalidArgument
/// unless D is a positive fundamental discriminant.
FormClassGroupSummary narrow_class_number(std::int64_t D);

/// Class number of the imaginary quadratic field of discriminant D < 0, by
/// counting reduced positive definite primitive forms.
std::int64_t definite_class_number(std::int64_t D);

/// Unique reduced form equivalent to a positive definite f, with the
/// transform: f o T = result.
FormZ reduce_definite(const FormZ& f, Transform* t = nullptr);

/// Reduced form in the cycle of an indefinite f, with f o T = result.
FormZ reduce_indefinite(const FormZ& f, Transform* t = nullptr);

/// M in SL2(Z) with f = g o M when f and g are properly equivalent (same
/// discriminant, positive definite or indefinite non-square), else nullopt.
std::optional<Transform> find_equivalence(const FormZ& f, const FormZ& g);

/// (l^k, B, C) with B^2 = D mod 4 l^k, B = D mod 2 and B Hensel-lifted from
/// a square root of D mod l; the k-th power of a prime form above l.
/// Requires l an odd prime with (D/l) = +1.
FormZ prime_form_power(std::int64_t l, std::int64_t D, unsigned k);

std::ostream& operator<<(std::ostream& os, const Form64& f);
std::ostream& operator<<(std::ostream& os, const FormZ& f);

}  // namespace k2rank
