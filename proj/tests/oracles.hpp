#pragma once

// Brute-force oracles, written independently of the library's closed-form
// number theory. They work on small machine integers only.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

inline long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline int valuation(long n, long p)
{
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// x^2 = u (mod m) has a solution with x a unit mod m.
inline bool unit_square_mod(long u, long m)
{
    for (long x = 1; x < m; ++x) {
        if (std::gcd(x, m) == 1 && mod(x * x - u, m) == 0) {
            return true;
        }
    }
    return false;
}

/// Hilbert symbol (a, b)_p for nonzero integers by searching primitive
/// solutions of a x^2 + b y^2 = z^2 modulo p^k. A solution is accepted only
/// when Hensel's lemma certifies a lift: some coordinate has partial
/// derivative of valuation delta with 2 delta + 1 <= k. Returns -1 when no
/// primitive solution exists mod p^k. Throws if neither outcome is certain.
inline int hilbert(long a, long b, long p)
{
    // Remove square factors so that the search modulus stays small.
    auto reduce = [p](long x) {
        while (x % (p * p) == 0) {
            x /= p * p;
        }
        return x;
    };
    a = reduce(a);
    b = reduce(b);
    const int k = p == 2 ? 5 : 3;
    const long m = ipow(p, k);
    bool any_primitive = false;
    for (long x = 0; x < m; ++x) {
        for (long y = 0; y < m; ++y) {
            long rhs = mod(a * x % m * x + b * y % m * y, m);
            for (long z = 0; z < m; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) {
                    continue;
                }
                if (mod(z * z - rhs, m) != 0) {
                    continue;
                }
                any_primitive = true;
                // Partial derivatives: 2 a x, 2 b y, -2 z.
                long partial[3] = {2 * a * x, 2 * b * y, 2 * z};
                for (long d : partial) {
                    if (mod(d, m) == 0) {
                        continue;
                    }
                    int delta = valuation(mod(d, m), p);
                    if (2 * delta + 1 <= k) {
                        return 1;
                    }
                }
            }
        }
    }
    if (!any_primitive) {
        return -1;
    }
    throw std::runtime_error("hilbert oracle inconclusive");
}

/// Whether sum c_i x_i^2 = 0 has a primitive solution modulo p^k.
inline bool primitive_zero_mod(const std::vector<long>& c, long p, int k)
{
    const long m = ipow(p, k);
    std::vector<long> x(c.size(), 0);
    while (true) {
        bool primitive = false;
        long s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            primitive = primitive || x[i] % p != 0;
            s = mod(s + mod(c[i], m) * x[i] % m * x[i], m);
        }
        if (primitive && s == 0) {
            return true;
        }
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == m) {
            x[i++] = 0;
        }
        if (i == x.size()) {
            return false;
        }
    }
}

/// A primitive solution of sum c_i x_i^2 = 0 mod p^k with some partial
/// derivative of valuation <= 1 (p odd, k >= 3 certifies a p-adic zero).
inline std::optional<std::vector<long>> hensel_zero(const std::vector<long>& c, long p, int k)
{
    const long m = ipow(p, k);
    std::vector<long> x(c.size(), 0);
    while (true) {
        long s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            s = mod(s + mod(c[i], m) * x[i] % m * x[i], m);
        }
        if (s == 0) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                long d = mod(2 * c[i] * x[i], m);
                if (d != 0 && 2 * valuation(d, p) + 1 <= k) {
                    return x;
                }
            }
        }
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == m) {
            x[i++] = 0;
        }
        if (i == x.size()) {
            return std::nullopt;
        }
    }
}

inline bool is_perfect_square(long long n, long long* root = nullptr)
{
    if (n < 0) {
        return false;
    }
    auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(n))));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    if (root) {
        *root = r;
    }
    return r * r == n;
}

/// Integers x_1..x_m (one of them solved for) and t >= 1, all bounded by
/// `height`, with sum c_i x_i^2 = q t^2. The last coefficient is solved for.
inline bool represents_bruteforce(const std::vector<long>& c, long q, long height)
{
    const std::size_t m = c.size();
    const long last = c.back();
    std::vector<long> x(m - 1, 0);
    for (long t = 1; t <= height; ++t) {
        std::fill(x.begin(), x.end(), 0);
        while (true) {
            long long s = static_cast<long long>(q) * t * t;
            for (std::size_t i = 0; i + 1 < m; ++i) {
                s -= static_cast<long long>(c[i]) * x[i] * x[i];
            }
            long long w = 0;
            if (s % last == 0 && is_perfect_square(s / last, &w) && w <= height) {
                return true;
            }
            std::size_t i = 0;
            while (i < x.size() && ++x[i] > height) {
                x[i++] = 0;
            }
            if (i == x.size()) {
                break;
            }
        }
    }
    return false;
}

/// Nonzero integer vector with sum c_i x_i^2 = 0 and all |x_i| <= height;
/// the last coordinate is solved for.
inline bool isotropic_bruteforce(const std::vector<long>& c, long height)
{
    const std::size_t m = c.size();
    const long last = c.back();
    std::vector<long> x(m - 1, 0);
    while (true) {
        std::size_t i = 0;
        while (i < x.size() && ++x[i] > height) {
            x[i++] = 0;
        }
        if (i == x.size()) {
            return false;
        }
        long long s = 0;
        for (std::size_t j = 0; j + 1 < m; ++j) {
            s -= static_cast<long long>(c[j]) * x[j] * x[j];
        }
        long long w = 0;
        if (s % last == 0 && is_perfect_square(s / last, &w) && w <= height) {
            return true;
        }
    }
}

/// Sign of a + b sqrt(d) by 200-bit floating point, for comparison with the
/// exact routine away from zero.
inline int float_sign(const mpq_class& a, const mpq_class& b, long d, int conj)
{
    mpf_class root(d, 200);
    root = sqrt(root);
    mpf_class v(a, 200);
    mpf_class bb(b, 200);
    v += conj * bb * root;
    return sgn(v);
}

} // namespace oracle
