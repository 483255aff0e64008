#include "k2rank/class_numbers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "k2rank/errors.hpp"

namespace k2rank {

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Transform step_transform(const mpz_class& k) {
    Transform t;
    t.m = {0, -1, 1, k};
    return t;
}

bool squarefree(std::int64_t n) {
    try {
        factor_squarefree(n);
        return true;
    } catch (const NotSquarefree&) {
        return false;
    }
}

void require_indefinite(const mpz_class& D) {
    if (D <= 0 || mpz_perfect_square_p(D.get_mpz_t()) != 0) {
        throw InvalidArgument("indefinite reduction needs a positive non-square discriminant");
    }
}

}  // namespace

Transform Transform::operator*(const Transform& r) const {
    Transform out;
    out.m = {m[0] * r.m[0] + m[1] * r.m[2], m[0] * r.m[1] + m[1] * r.m[3],
             m[2] * r.m[0] + m[3] * r.m[2], m[2] * r.m[1] + m[3] * r.m[3]};
    return out;
}

Transform Transform::inverse() const {
    Transform out;
    out.m = {m[3], -m[1], -m[2], m[0]};
    return out;
}

mpz_class Transform::determinant() const { return m[0] * m[3] - m[1] * m[2]; }

FormZ apply(const FormZ& f, const Transform& t) {
    const auto& [p, q, r, s] = t.m;
    // f(p X + q Y, r X + s Y)
    return FormZ{f(p, r), mpz_class(2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s), f(q, s)};
}

std::vector<Form64> reduced_indefinite_forms(std::int64_t D) {
    if (D <= 0 || is_square(D)) throw InvalidArgument("need a positive non-square discriminant");
    const std::int64_t s = isqrt(D);
    std::vector<Form64> out;
    for (std::int64_t b = 1; b <= s; ++b) {
        if ((b - D) % 2 != 0) continue;
        const std::int64_t ac = (b * b - D) / 4;  // negative
        // 2|a| < sqrt D + b bounds the divisor search.
        for (std::int64_t a = 1; 2 * a <= s + b; ++a) {
            if (ac % a != 0) continue;
            for (std::int64_t sa : {a, -a}) {
                const Form64 f{sa, b, ac / sa};
                if (std::gcd(std::gcd(a, b), f.c < 0 ? -f.c : f.c) != 1) continue;
                if (is_reduced_indefinite(f, s)) out.push_back(f);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Form64> rho_cycle(const Form64& f) {
    const std::int64_t D = f.discriminant();
    if (D <= 0 || is_square(D)) throw InvalidArgument("rho_cycle: need a positive non-square discriminant");
    const std::int64_t s = isqrt(D);
    if (!is_reduced_indefinite(f, s)) throw InvalidArgument("rho_cycle: form is not reduced");
    std::vector<Form64> cycle{f};
    for (Form64 g = rho(f, D, s); g != f; g = rho(g, D, s)) cycle.push_back(g);
    return cycle;
}

bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0 || D == 1) return false;
    const auto r = floor_mod(D, 4);
    if (r == 1) return squarefree(D);
    if (r != 0) return false;
    const std::int64_t m = D / 4;
    const auto rm = floor_mod(m, 4);
    return (rm == 2 || rm == 3) && squarefree(m);
}

FormClassGroupSummary narrow_class_number(std::int64_t D) {
    if (D <= 0 || is_square(D) || !is_fundamental_discriminant(D)) {
        throw InvalidArgument(std::to_string(D) + " is not a positive fundamental discriminant");
    }
    FormClassGroupSummary out;
    out.discriminant = D;
    std::set<Form64> seen;
    for (const auto& f : reduced_indefinite_forms(D)) {
        if (seen.contains(f)) continue;
        const auto cycle = rho_cycle(f);
        for (const auto& g : cycle) {
            if (!seen.insert(g).second) throw ConsistencyFailure("reduced form lies on two cycles");
        }
        out.cycle_sizes.push_back(cycle.size());
        ++out.h_plus;
    }
    return out;
}

std::int64_t definite_class_number(std::int64_t D) {
    if (D >= 0 || (floor_mod(D, 4) != 0 && floor_mod(D, 4) != 1)) {
        throw InvalidArgument(std::to_string(D) + " is not a negative discriminant");
    }
    std::int64_t h = 0;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a) != 0) continue;
            const std::int64_t c = (b * b - D) / (4 * a);
            if (c < a || (a == c && b < 0)) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

FormZ reduce_definite(const FormZ& f, Transform* t) {
    if (f.discriminant() >= 0 || f.a <= 0) throw InvalidArgument("reduce_definite: form is not positive definite");
    static const Transform swap = [] {
        Transform s;
        s.m = {0, -1, 1, 0};
        return s;
    }();
    FormZ g = f;
    Transform acc;
    for (;;) {
        if (g.a > g.c) {
            g = FormZ{g.c, mpz_class(-g.b), g.a};
            acc = acc * swap;
        }
        const mpz_class k = floor_div(mpz_class(g.a - g.b), mpz_class(2 * g.a));
        if (k != 0) {
            Transform shift;
            shift.m = {1, k, 0, 1};
            g = FormZ{g.a, mpz_class(g.b + 2 * g.a * k), mpz_class(g.a * k * k + g.b * k + g.c)};
            acc = acc * shift;
        }
        if (g.a > g.c) continue;
        if (g.a == g.c && g.b < 0) {
            g = FormZ{g.c, mpz_class(-g.b), g.a};
            acc = acc * swap;
        }
        break;
    }
    if (t != nullptr) *t = acc;
    return g;
}

FormZ reduce_indefinite(const FormZ& f, Transform* t) {
    const mpz_class D = f.discriminant();
    require_indefinite(D);
    const mpz_class s = sqrt(D);
    FormZ g = f;
    Transform acc;
    while (!is_reduced_indefinite(g, s)) {
        mpz_class k;
        g = rho(g, D, s, &k);
        acc = acc * step_transform(k);
    }
    if (t != nullptr) *t = acc;
    return g;
}

std::optional<Transform> find_equivalence(const FormZ& f, const FormZ& g) {
    const mpz_class D = f.discriminant();
    if (g.discriminant() != D) return std::nullopt;
    Transform A;
    Transform B;
    if (D < 0) {
        const FormZ fr = reduce_definite(f, &A);
        const FormZ gr = reduce_definite(g, &B);
        if (fr != gr) return std::nullopt;
        return B * A.inverse();
    }
    require_indefinite(D);
    const mpz_class s = sqrt(D);
    const FormZ fr = reduce_indefinite(f, &A);
    const FormZ gr = reduce_indefinite(g, &B);
    Transform C;
    FormZ cur = gr;
    for (;;) {
        if (cur == fr) return B * C * A.inverse();
        mpz_class k;
        cur = rho(cur, D, s, &k);
        C = C * step_transform(k);
        if (cur == gr) return std::nullopt;
    }
}

FormZ prime_form_power(std::int64_t l, std::int64_t D, unsigned k) {
    if (l <= 2 || !is_prime(l)) throw InvalidArgument("prime_form_power: l must be an odd prime");
    if (k == 0) throw InvalidArgument("prime_form_power: exponent must be positive");
    if (legendre(D, l) != 1) throw InvalidArgument("prime_form_power: D is not a nonzero square mod l");
    const mpz_class Dz(static_cast<long>(D));
    mpz_class B(static_cast<long>(sqrt_mod(floor_mod(D, l), l)));
    mpz_class modulus(static_cast<long>(l));
    const mpz_class lz(static_cast<long>(l));
    for (unsigned j = 1; j < k; ++j) {
        modulus *= lz;
        mpz_class inv;
        const mpz_class twice_b = 2 * B;
        mpz_invert(inv.get_mpz_t(), twice_b.get_mpz_t(), modulus.get_mpz_t());
        B = B - (B * B - Dz) * inv;
        mpz_fdiv_r(B.get_mpz_t(), B.get_mpz_t(), modulus.get_mpz_t());
    }
    if (mpz_odd_p(mpz_class(B - Dz).get_mpz_t()) != 0) B += modulus;
    const mpz_class c = (B * B - Dz) / (4 * modulus);
    FormZ out{modulus, B, c};
    if (out.discriminant() != Dz) throw ConsistencyFailure("prime_form_power: discriminant mismatch");
    return out;
}

std::ostream& operator<<(std::ostream& os, const Form64& f) {
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

std::ostream& operator<<(std::ostream& os, const FormZ& f) {
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

}  // namespace k2rank
