#include "oracles.hpp"

#include "qfe/errors.hpp"
#include "qfe/localinv.hpp"

#include <doctest.h>

#include <random>

using namespace qfe;

namespace {

const Place inf = Place::infinity();
Place P(long p) { return Place::prime(p); }

std::vector<Rational> coeffs(std::initializer_list<long> xs)
{
    return {xs.begin(), xs.end()};
}

Rational random_nonzero(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 12);
    long n = 0;
    while (n == 0) {
        n = num(rng);
    }
    Rational r(n, den(rng));
    r.canonicalize();
    return r;
}

std::set<Place> places_of(const Rational& a, const Rational& b)
{
    std::vector<Rational> ab{a, b};
    return relevant_places(ab);
}

} // namespace

TEST_CASE("hilbert_symbol examples")
{
    CHECK(hilbert_symbol(21, -3, P(3)) == 1);
    CHECK(hilbert_symbol(-1, -1, inf) == -1);
    CHECK(hilbert_symbol(-1, -1, P(2)) == -1);
    CHECK(hilbert_symbol(-1, 3, P(3)) == -1);
    for (const auto& v : {inf, P(2), P(3), P(5), P(7)}) {
        CHECK(hilbert_symbol(1, -7, v) == 1);
        CHECK(hilbert_symbol(1, 5, v) == 1);
    }
    CHECK_THROWS_AS(hilbert_symbol(0, 1, P(2)), DomainError);
}

TEST_CASE("(-1,-1)_2 = -1: no primitive solution of x^2 + y^2 + z^2 = 0 mod 16")
{
    CHECK_FALSE(oracle::primitive_zero_mod({1, 1, 1}, 2, 4));
    CHECK(hilbert_symbol(-1, -1, P(2)) == -1);
}

TEST_CASE("hilbert_symbol matches the Hensel-certified search")
{
    for (long p : {2L, 3L, 5L}) {
        for (long a = -12; a <= 12; ++a) {
            for (long b = -12; b <= 12; ++b) {
                if (a == 0 || b == 0) {
                    continue;
                }
                INFO("(" << a << ", " << b << ")_" << p);
                CHECK(hilbert_symbol(a, b, P(p)) == oracle::hilbert(a, b, p));
            }
        }
    }
    for (auto [a, b] : std::vector<std::pair<long, long>>{{7, 3}, {-7, 3}, {14, -1}, {7, 7}, {3, -7}}) {
        CHECK(hilbert_symbol(a, b, P(7)) == oracle::hilbert(a, b, 7));
    }
}

TEST_CASE("hilbert_symbol algebraic identities")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        Rational a = random_nonzero(rng, 60);
        Rational b1 = random_nonzero(rng, 60);
        Rational b2 = random_nonzero(rng, 60);
        std::vector<Rational> all{a, b1, b2};
        for (const auto& v : relevant_places(all)) {
            CHECK(hilbert_symbol(a, Rational(b1 * b2), v)
                  == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v));
            CHECK(hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v));
            CHECK(hilbert_symbol(a, Rational(-a), v) == 1);
            if (a != 1) {
                CHECK(hilbert_symbol(a, Rational(1 - a), v) == 1);
            }
            // Scaling by a square changes nothing.
            CHECK(hilbert_symbol(Rational(a * 9 / 4), b1, v) == hilbert_symbol(a, b1, v));
        }
    }
}

TEST_CASE("symbols are trivial outside relevant_places")
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_nonzero(rng, 40);
        Rational b = random_nonzero(rng, 40);
        auto rel = places_of(a, b);
        for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
            if (!rel.contains(P(p))) {
                CHECK(hilbert_symbol(a, b, P(p)) == 1);
            }
        }
    }
}

TEST_CASE("Hilbert reciprocity")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_nonzero(rng, 500);
        Rational b = random_nonzero(rng, 500);
        int product = 1;
        for (const auto& v : places_of(a, b)) {
            product *= hilbert_symbol(a, b, v);
        }
        CHECK(product == 1);
    }
}

TEST_CASE("discriminant_class")
{
    CHECK(discriminant_class(coeffs({1, 1, 1, -7})).representative() == -7);
    CHECK(discriminant_class(coeffs({21, 1, 1, -3})).representative() == -7);
    CHECK(discriminant_class(coeffs({1, 1, 1, 1, -1})).representative() == -1);
    std::vector<Rational> fractional{Rational(1, 2), Rational(3)};
    CHECK(discriminant_class(fractional).representative() == 6);
    CHECK_THROWS_AS(discriminant_class(coeffs({})), DomainError);
    CHECK_THROWS_AS(discriminant_class(coeffs({1, 0})), DomainError);
}

TEST_CASE("hasse_invariant")
{
    for (const auto& v : {inf, P(2), P(3), P(7)}) {
        CHECK(hasse_invariant(coeffs({1, 1, 1, -7}), v) == 1);
        CHECK(hasse_invariant(coeffs({21, 1, 1, -3}), v) == 1);
    }
    CHECK(hasse_invariant(coeffs({5}), P(5)) == 1);
    // i<j convention: <-1,-1> gives (-1,-1).
    CHECK(hasse_invariant(coeffs({-1, -1}), P(2)) == -1);
    CHECK(hasse_invariant(coeffs({1, 1, -3}), P(3)) == 1);
    CHECK_THROWS_AS(hasse_invariant(coeffs({1, 0, 2}), P(2)), DomainError);
}

TEST_CASE("hasse_invariant is stable under permutation and square scaling")
{
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rational> c;
        std::uniform_int_distribution<int> len(1, 5);
        int n = len(rng);
        for (int k = 0; k < n; ++k) {
            c.push_back(random_nonzero(rng, 30));
        }
        auto places = relevant_places(c);
        std::vector<Rational> shuffled = c;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<Rational> scaled = c;
        scaled[0] *= Rational(49, 4);
        for (const auto& v : places) {
            CHECK(hasse_invariant(c, v) == hasse_invariant(shuffled, v));
            CHECK(hasse_invariant(c, v) == hasse_invariant(scaled, v));
        }
    }
}

TEST_CASE("relevant_places")
{
    auto r = relevant_places(coeffs({1, 1, 1, -7}));
    CHECK(r == std::set<Place>{inf, P(2), P(7)});
    r = relevant_places(coeffs({1, 1, -3}));
    CHECK(r == std::set<Place>{inf, P(2), P(3)});
    r = relevant_places(coeffs({21, 1, 1, -3}));
    CHECK(r == std::set<Place>{inf, P(2), P(3), P(7)});
    // 18 = 2 * 3^2 has square-free part 2: 3 is not relevant.
    r = relevant_places(coeffs({18, -1}));
    CHECK(r == std::set<Place>{inf, P(2)});
}

TEST_CASE("profile_of_diagonal")
{
    auto p = profile_of_diagonal(coeffs({1, 1, 1, -7}));
    CHECK(p.rank == 4);
    CHECK(p.signatures.at(0) == Signature{3, 1});
    CHECK(p.disc.representative() == -7);
    CHECK(p.hasse_product() == 1);
    CHECK(p.nontrivial_places().empty());
    std::vector<Place> extra{P(3)};
    auto q = profile_of_diagonal(coeffs({1, 1, 1, -7}), extra);
    CHECK(q.hasse.contains(P(3)));
    CHECK(q.hasse_at(P(11)) == 1);

    auto x = profile_of_diagonal(coeffs({1, 1, -3}));
    CHECK(x.hasse_at(P(3)) == 1);
    CHECK(x.hasse_at(P(2)) == 1);
    auto y = profile_of_diagonal(coeffs({-1, -1, 1}));
    CHECK(y.nontrivial_places() == std::vector<Place>{inf, P(2)});
}

TEST_CASE("SquareClass")
{
    CHECK(SquareClass(Rational(-63)).representative() == -7);
    CHECK(SquareClass(Rational(4, 9)).is_identity());
    CHECK((SquareClass(Rational(6)) * SquareClass(Rational(15))).representative() == 10);
    CHECK_THROWS_AS(SquareClass(Rational(0)), DomainError);
}
