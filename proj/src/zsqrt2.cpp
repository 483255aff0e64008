#include "k2rank/zsqrt2.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unistd.h>

#include "k2rank/errors.hpp"

namespace k2rank {

namespace {

std::int64_t checked(int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("Z[sqrt2] arithmetic exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

bool is_plus_minus_one_mod_8(std::int64_t p) {
    const auto r = floor_mod(p, 8);
    return r == 1 || r == 7;
}

}  // namespace

QuadInt operator*(const QuadInt& lhs, const QuadInt& rhs) {
    const int128 a = static_cast<int128>(lhs.a) * rhs.a + 2 * static_cast<int128>(lhs.b) * rhs.b;
    const int128 b = static_cast<int128>(lhs.a) * rhs.b + static_cast<int128>(lhs.b) * rhs.a;
    return QuadInt{checked(a), checked(b)};
}

QuadInt operator-(const QuadInt& z) { return QuadInt{-z.a, -z.b}; }

QuadInt conj(const QuadInt& z) { return QuadInt{z.a, -z.b}; }

std::int64_t norm(const QuadInt& z) {
    return checked(static_cast<int128>(z.a) * z.a - 2 * static_cast<int128>(z.b) * z.b);
}

QuadInt power(const QuadInt& z, unsigned exponent) {
    QuadInt result{1, 0};
    for (unsigned i = 0; i < exponent; ++i) result = result * z;
    return result;
}

int embedding_sign(const QuadInt& z) {
    if (z.a >= 0 && z.b >= 0) return (z.a == 0 && z.b == 0) ? 0 : 1;
    if (z.a <= 0 && z.b <= 0) return -1;
    // Opposite signs: compare a^2 with 2b^2 (never equal for z != 0).
    const int128 a2 = static_cast<int128>(z.a) * z.a;
    const int128 b2 = 2 * static_cast<int128>(z.b) * z.b;
    if (z.a > 0) return a2 > b2 ? 1 : -1;
    return b2 > a2 ? 1 : -1;
}

QuadInt unit_reduce(const QuadInt& z) {
    const int s = embedding_sign(z);
    if (s == 0) throw InvalidArgument("unit_reduce: zero has no unit orbit");
    QuadInt cur = s > 0 ? z : -z;
    while (cur.b < 0 || cur.a <= 0) cur = cur * kSquareUnit;
    for (;;) {
        const QuadInt next = cur * kSquareUnitInverse;
        if (next.a > 0 && next.b >= 0 && next.a < cur.a) {
            cur = next;
        } else {
            return cur;
        }
    }
}

std::ostream& operator<<(std::ostream& os, const QuadInt& z) {
    return os << z.a << (z.b < 0 ? "-" : "+") << (z.b < 0 ? -z.b : z.b) << "*sqrt2";
}

std::int64_t PrimeRep::sqrt2_residue() const { return mul_mod(x, inverse_mod(y, l), l); }

bool PrimeRep::valid() const {
    if (l <= 2 || x <= 0 || y <= 0 || floor_mod(x, 4) != 1) return false;
    if (!is_prime(l) || !is_plus_minus_one_mod_8(l)) return false;
    const std::int64_t target = floor_mod(l, 8) == 1 ? l : -l;
    if (norm(element()) != target) return false;
    return legendre(y, l) == 1;
}

PrimeRep represent_prime(std::int64_t l) {
    if (!is_prime(l)) throw InvalidArgument("represent_prime: " + std::to_string(l) + " is not prime");
    if (!is_plus_minus_one_mod_8(l)) {
        throw NoRepresentation("represent_prime: " + std::to_string(l) + " is not +-1 mod 8");
    }
    const std::int64_t target = floor_mod(l, 8) == 1 ? l : -l;
    for (std::int64_t y = 1;; ++y) {
        const std::int64_t x2 = target + 2 * y * y;
        if (x2 <= 0 || !is_square(x2)) continue;
        std::int64_t x = isqrt(x2);
        std::int64_t yy = y;
        if (x % 4 == 3) {
            const QuadInt moved = QuadInt{x, yy} * kSquareUnit;
            x = moved.a;
            yy = moved.b;
        }
        return PrimeRep{l, x, yy};
    }
}

QuadInt compose_norm_element(const Factorization& D) {
    for (auto p : D.odd_primes) {
        if (!is_plus_minus_one_mod_8(p)) {
            throw NoRepresentation("no element of norm " + std::to_string(D.value) + ": prime " + std::to_string(p) +
                                   " is not +-1 mod 8");
        }
    }
    QuadInt z{1, 0};
    for (auto p : D.odd_primes) z = z * cached_prime_rep(p).element();
    if (D.m == 1) z = z * kPiTwo;
    if ((D.n + D.c) % 2 == 1) z = z * kFundamentalUnit;
    if (norm(z) != D.value) throw ConsistencyFailure("compose_norm_element: norm mismatch for " + std::to_string(D.value));
    return z;
}

NormRepresentation represent_norm(const Factorization& D) {
    const QuadInt z = unit_reduce(compose_norm_element(D));
    return NormRepresentation{D.value, z.a, z.b};
}

NormRepresentation represent_norm_direct(std::int64_t D) {
    if (D == 0) throw InvalidArgument("represent_norm_direct: D must be nonzero");
    // x^2 - 2y^2 = D is solvable iff every prime = +-3 mod 8 divides D to an even power.
    std::int64_t rest = D < 0 ? -D : D;
    for (std::int64_t p = 3; p * p <= rest; p += 2) {
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if ((k & 1) && !is_plus_minus_one_mod_8(p)) {
            throw NoRepresentation("no element of norm " + std::to_string(D));
        }
    }
    while (rest % 2 == 0) rest /= 2;
    if (rest > 1 && !is_plus_minus_one_mod_8(rest)) throw NoRepresentation("no element of norm " + std::to_string(D));

    if (D > 0) {
        std::int64_t u = isqrt(D);
        if (u * u < D) ++u;
        for (;; ++u) {
            const std::int64_t diff = u * u - D;
            if (diff % 2 != 0 || !is_square(diff / 2)) continue;
            return NormRepresentation{D, u, isqrt(diff / 2)};
        }
    }
    std::int64_t w = isqrt(-D / 2);
    if (2 * w * w < -D) ++w;
    for (;; ++w) {
        const std::int64_t u2 = D + 2 * w * w;
        if (u2 <= 0 || !is_square(u2)) continue;
        return NormRepresentation{D, isqrt(u2), w};
    }
}

std::int64_t residue_mod_ideal(const QuadInt& z, const PrimeRep& rep) {
    return floor_mod(floor_mod(z.a, rep.l) + mul_mod(z.b, rep.sqrt2_residue(), rep.l), rep.l);
}

PrimeRep PrimeRepCache::get(std::int64_t l) {
    {
        std::shared_lock lock(mutex_);
        if (auto it = table_.find(l); it != table_.end()) return it->second;
    }
    const PrimeRep rep = represent_prime(l);
    std::unique_lock lock(mutex_);
    return table_.emplace(l, rep).first->second;
}

std::size_t PrimeRepCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

void PrimeRepCache::clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
}

std::vector<PrimeRep> PrimeRepCache::entries() const {
    std::shared_lock lock(mutex_);
    std::vector<PrimeRep> out;
    out.reserve(table_.size());
    for (const auto& [l, rep] : table_) out.push_back(rep);
    return out;
}

bool PrimeRepCache::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "l,x,y") return false;

    std::map<std::int64_t, PrimeRep> loaded;
    std::int64_t previous = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::int64_t fields[3];
        const char* pos = line.data();
        const char* end = line.data() + line.size();
        for (int i = 0; i < 3; ++i) {
            auto [ptr, ec] = std::from_chars(pos, end, fields[i]);
            if (ec != std::errc{}) return false;
            pos = ptr;
            if (i < 2) {
                if (pos == end || *pos != ',') return false;
                ++pos;
            }
        }
        if (pos != end) return false;
        const PrimeRep rep{fields[0], fields[1], fields[2]};
        if (rep.l <= previous || !rep.valid()) return false;
        try {
            if (represent_prime(rep.l) != rep) return false;
        } catch (const DomainError&) {
            return false;
        }
        previous = rep.l;
        loaded.emplace(rep.l, rep);
    }
    std::unique_lock lock(mutex_);
    table_.merge(loaded);
    return true;
}

void PrimeRepCache::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << "l,x,y\n";
        for (const auto& rep : entries()) out << rep.l << ',' << rep.x << ',' << rep.y << '\n';
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

PrimeRepCache& prime_rep_cache() {
    static PrimeRepCache cache;
    return cache;
}

PrimeRep cached_prime_rep(std::int64_t l) { return prime_rep_cache().get(l); }

std::optional<std::filesystem::path> default_prime_rep_cache_path() {
    if (const char* env = std::getenv("K2RANK_PRIMEREP_CACHE"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
        return std::filesystem::path(xdg) / "k2rank" / "primerep.csv";
    }
    if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
        return std::filesystem::path(home) / ".cache" / "k2rank" / "primerep.csv";
    }
    return std::nullopt;
}

}  // namespace k2rank
