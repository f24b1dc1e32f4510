#include "qfe/quadform.hpp"

#include <cmath>

namespace qfe {

namespace {

using i128 = __int128;

// Coefficients are kept below 2^40 so that sum c_i x_i^2 with |x_i| <= 2^20
// stays far inside 128 bits.
constexpr long kMaxHeight = 1L << 20;

bool fits(const Integer& x)
{
    Integer bound = 1;
    bound <<= 40;
    return abs(x) < bound;
}

bool isqrt_exact(i128 n, i128& root)
{
    if (n < 0) {
        return false;
    }
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    root = r;
    return r * r == n;
}

// Visits every x in [0, h]^k with max x_i = h in lexicographic order, first
// coordinate slowest. Stops when `visit` returns true.
template <class Visit>
bool for_each_in_shell(std::size_t k, long h, Visit visit)
{
    std::vector<long> x(k, 0);
    while (true) {
        bool on_shell = false;
        for (long v : x) {
            on_shell = on_shell || v == h;
        }
        if (on_shell && visit(x)) {
            return true;
        }
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (x[i] < h) {
                ++x[i];
                break;
            }
            x[i] = 0;
            if (i == 0) {
                return false;
            }
        }
        if (k == 0) {
            return false;
        }
    }
}

} // namespace

std::optional<std::vector<Integer>> search_isotropic_vector(std::span<const Integer> coeffs,
                                                            long height)
{
    const std::size_t m = coeffs.size();
    if (m < 2 || height < 1 || height > kMaxHeight) {
        return std::nullopt;
    }
    std::vector<i128> c;
    for (const auto& x : coeffs) {
        if (!fits(x) || x == 0) {
            return std::nullopt;
        }
        c.push_back(static_cast<i128>(x.get_si()));
    }
    // Solve for the coordinate with the largest coefficient.
    std::size_t solve = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (abs(coeffs[i]) > abs(coeffs[solve])) {
            solve = i;
        }
    }
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < m; ++i) {
        if (i != solve) {
            free_idx.push_back(i);
        }
    }
    std::optional<std::vector<Integer>> found;
    for (long h = 1; h <= height && !found; ++h) {
        for_each_in_shell(free_idx.size(), h, [&](const std::vector<long>& x) {
            i128 s = 0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                s += c[free_idx[j]] * x[j] * x[j];
            }
            i128 num = -s;
            if (num % c[solve] != 0) {
                return false;
            }
            i128 y2 = num / c[solve];
            i128 y = 0;
            if (!isqrt_exact(y2, y) || y > height) {
                return false;
            }
            std::vector<Integer> w(m);
            for (std::size_t j = 0; j < x.size(); ++j) {
                w[free_idx[j]] = x[j];
            }
            w[solve] = static_cast<long>(y);
            found = std::move(w);
            return true;
        });
    }
    return found;
}

std::optional<std::vector<Rational>> search_representation(std::span<const Integer> coeffs,
                                                           const Integer& q, long height)
{
    const std::size_t m = coeffs.size();
    if (m == 0 || q == 0 || height < 1 || height > kMaxHeight || !fits(q)) {
        return std::nullopt;
    }
    std::vector<i128> c;
    for (const auto& x : coeffs) {
        if (!fits(x)) {
            return std::nullopt;
        }
        c.push_back(static_cast<i128>(x.get_si()));
    }
    const i128 qq = q.get_si();
    std::optional<std::vector<Rational>> found;
    for (long h = 1; h <= height && !found; ++h) {
        for_each_in_shell(m, h, [&](const std::vector<long>& x) {
            i128 s = 0;
            for (std::size_t j = 0; j < m; ++j) {
                s += c[j] * x[j] * x[j];
            }
            // s = q t^2  <=>  s q = (q t)^2
            i128 r = 0;
            if (s == 0 || !isqrt_exact(s * qq, r)) {
                return false;
            }
            // t = r / |q|, and x / t is the rational representation.
            Integer abs_q = abs(q);
            Integer root = static_cast<long>(r);
            std::vector<Rational> w;
            for (long v : x) {
                Rational e(Integer(v) * abs_q, root);
                e.canonicalize();
                w.push_back(e);
            }
            found = std::move(w);
            return true;
        });
    }
    return found;
}

} // namespace qfe
