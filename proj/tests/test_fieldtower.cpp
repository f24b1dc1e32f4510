#include "oracles.hpp"

#include "qfe/errors.hpp"
#include "qfe/field.hpp"

#include <doctest.h>

#include <random>

using namespace qfe;

namespace {

Rational q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational random_rational(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    long n = 0;
    while (n == 0) {
        n = num(rng);
    }
    return q(n, den(rng));
}

FieldElement sqrt2() { return generator(Field::real_quadratic(2)); }

} // namespace

TEST_CASE("squarefree_decompose")
{
    auto d = squarefree_decompose(-63);
    CHECK(d.s == -7);
    CHECK(d.t == 3);
    d = squarefree_decompose(1);
    CHECK(d.s == 1);
    CHECK(d.t == 1);
    d = squarefree_decompose(q(4, 9));
    CHECK(d.s == 1);
    CHECK(d.t == q(2, 3));
    CHECK_THROWS_AS(squarefree_decompose(0), DomainError);
}

TEST_CASE("squarefree_decompose round-trip on random rationals")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Rational r = random_rational(rng, 2000);
        auto d = squarefree_decompose(r);
        CHECK(r == d.s * d.t * d.t);
        CHECK(sgn(d.s) == sgn(r));
        // Trial division: no p^2 divides s.
        Integer s = abs(d.s);
        for (long p = 2; p * p <= s; ++p) {
            CHECK(s % (p * p) != 0);
        }
    }
}

TEST_CASE("padic_valuation")
{
    CHECK(padic_valuation(21, 3) == 1);
    CHECK(padic_valuation(q(1, 8), 2) == -3);
    CHECK(padic_valuation(7, 3) == 0);
    CHECK_THROWS_AS(padic_valuation(0, 3), DomainError);
}

TEST_CASE("is_square_in_Qp examples")
{
    CHECK(is_square_in_Qp(-7, Place::prime(2)));
    CHECK_FALSE(is_square_in_Qp(12, Place::prime(3)));
    CHECK_FALSE(is_square_in_Qp(2, Place::prime(5)));
    CHECK(is_square_in_Qp(q(1, 4), Place::infinity()));
    CHECK_FALSE(is_square_in_Qp(-1, Place::infinity()));
    CHECK(is_square_in_Qp(q(-7, 4), Place::prime(2)));
    CHECK_THROWS_AS(is_square_in_Qp(0, Place::prime(5)), DomainError);
}

TEST_CASE("is_square_in_Qp matches brute-force residues on units")
{
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        for (long u = -40; u <= 40; ++u) {
            if (u % p == 0) {
                continue;
            }
            CHECK(is_square_in_Qp(u, Place::prime(p)) == oracle::unit_square_mod(u, p));
        }
    }
    for (long u = -41; u <= 41; u += 2) {
        CHECK(is_square_in_Qp(u, Place::prime(2)) == oracle::unit_square_mod(u, 8));
    }
}

TEST_CASE("is_square_in_Qp on rationals with denominators")
{
    // u = n/d is a unit square iff n*d is.
    for (long p : {2L, 3L, 5L}) {
        for (long n = -30; n <= 30; ++n) {
            for (long d = 1; d <= 30; ++d) {
                if (n == 0) {
                    continue;
                }
                CHECK(is_square_in_Qp(q(n, d), Place::prime(p))
                      == is_square_in_Qp(Rational(n * d), Place::prime(p)));
            }
        }
    }
}

TEST_CASE("is_square_in_Q")
{
    CHECK(is_square_in_Q(q(4, 9)));
    CHECK_FALSE(is_square_in_Q(q(1, 5)));
    CHECK_FALSE(is_square_in_Q(-4));
    CHECK(is_square_in_Q(0));
}

TEST_CASE("global squares are local squares")
{
    std::mt19937_64 rng(5);
    std::vector<Place> places{Place::infinity(), Place::prime(2), Place::prime(3),
                              Place::prime(5), Place::prime(7), Place::prime(101)};
    for (int i = 0; i < 200; ++i) {
        Rational r = random_rational(rng, 300);
        Rational sq = r * r;
        CHECK(is_square_in_Q(sq));
        for (const auto& v : places) {
            CHECK(is_square_in_Qp(sq, v));
        }
    }
}

TEST_CASE("parse_rational")
{
    CHECK(parse_rational("-7/2") == q(-7, 2));
    CHECK(parse_rational("+6/4") == q(3, 2));
    CHECK(parse_rational("\xE2\x88\x92" "3") == -3);
    CHECK(format_rational(q(6, -4)) == "-3/2");
    CHECK(format_rational(5) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("places")
{
    CHECK(Place::infinity() < Place::prime(2));
    CHECK(Place::prime(3) < Place::prime(7));
    CHECK(Place::parse("inf").is_infinite());
    CHECK(Place::parse("7") == Place::prime(7));
    CHECK_THROWS_AS(Place::prime(9), DomainError);
    CHECK_THROWS_AS(Place::parse("x"), ParseError);
}

TEST_CASE("embedding_signs")
{
    FieldElement s = sqrt2();
    CHECK(embedding_signs(s) == std::pair{1, -1});
    CHECK(embedding_signs(3 + s) == std::pair{1, 1});
    CHECK(embedding_signs(1 - s) == std::pair{-1, 1});
    CHECK(embedding_signs(FieldElement(-2)) == std::pair{-1, -1});
    CHECK_THROWS_AS(embedding_signs(FieldElement::zero(Field::real_quadratic(2))), DomainError);
    CHECK_THROWS_AS(embedding_signs(gaussian(1, 1)), UnsupportedField);
}

TEST_CASE("embedding_signs agrees with 200-bit evaluation")
{
    std::mt19937_64 rng(3);
    for (long d : {2L, 3L, 5L, 7L, 13L}) {
        FieldPtr k = Field::real_quadratic(d);
        for (int i = 0; i < 100; ++i) {
            Rational a = random_rational(rng, 1000);
            Rational b = random_rational(rng, 1000);
            FieldElement x(k, a, b);
            auto [s1, s2] = embedding_signs(x);
            CHECK(s1 == oracle::float_sign(a, b, d, 1));
            CHECK(s2 == oracle::float_sign(a, b, d, -1));
        }
    }
}

TEST_CASE("is_algebraic_integer")
{
    FieldPtr q5 = Field::real_quadratic(5);
    CHECK(is_algebraic_integer(FieldElement(q5, q(1, 2), q(1, 2))));
    FieldPtr q2 = Field::real_quadratic(2);
    CHECK_FALSE(is_algebraic_integer(FieldElement(q2, q(1, 2), q(1, 2))));
    CHECK(is_algebraic_integer(gaussian(2, 1)));
    CHECK_FALSE(is_algebraic_integer(gaussian(q(1, 2), q(1, 2))));
    CHECK(is_algebraic_integer(FieldElement(Field::real_quadratic(3), 1, 1)));
    FieldPtr tower = Field::extend(Field::gaussian(), gaussian(2, 1));
    CHECK_THROWS_AS(is_algebraic_integer(generator(tower)), UnsupportedField);
}

TEST_CASE("field descriptors")
{
    CHECK_THROWS_AS(Field::real_quadratic(4), DomainError);
    CHECK_THROWS_AS(Field::real_quadratic(1), DomainError);
    CHECK_THROWS_AS(Field::extend(Field::gaussian(), gaussian(0, 2)), DomainError); // 2i = (1+i)^2
    FieldPtr tower = Field::extend(Field::gaussian(), gaussian(2, 1));
    CHECK(tower->height() == 2);
    CHECK_THROWS_AS(Field::extend(tower, generator(tower)), UnsupportedField);
    CHECK_THROWS_AS(Field::extend(Field::real_quadratic(2), FieldElement(3)), UnsupportedField);
}

TEST_CASE("tower arithmetic: s^2 = 2 + i")
{
    FieldPtr tower = Field::extend(Field::gaussian(), gaussian(2, 1));
    FieldElement s = generator(tower);
    FieldElement sq = s * s;
    CHECK(sq == gaussian(2, 1));
    CHECK(sq.lower().has_value());
    CHECK((s.inverse() * s) == FieldElement(1));
    // 1/s = s / (2+i)
    CHECK(s.inverse() == s * gaussian(2, 1).inverse());
}

TEST_CASE("field axioms on random elements")
{
    std::mt19937_64 rng(17);
    std::vector<FieldPtr> fields{Field::rationals(), Field::real_quadratic(2),
                                 Field::real_quadratic(5), Field::gaussian(),
                                 Field::extend(Field::gaussian(), gaussian(2, 1))};
    auto random_element = [&](const FieldPtr& k, auto&& self) -> FieldElement {
        if (k->is_rationals()) {
            return FieldElement(random_rational(rng, 50));
        }
        return FieldElement(k, self(k->base(), self), self(k->base(), self));
    };
    for (const auto& k : fields) {
        for (int i = 0; i < 40; ++i) {
            FieldElement x = random_element(k, random_element);
            FieldElement y = random_element(k, random_element);
            FieldElement z = random_element(k, random_element);
            CHECK((x * y) * z == x * (y * z));
            CHECK((x + y) * z == x * z + y * z);
            CHECK(x * y == y * x);
            if (!x.is_zero()) {
                CHECK(x * x.inverse() == FieldElement(1));
            }
            if (k->height() > 0) {
                CHECK((x * y).conj() == x.conj() * y.conj());
                CHECK(x * x.conj() == x.norm());
            }
        }
    }
}

TEST_CASE("mixed-field arithmetic lifts to the larger field")
{
    FieldElement s = sqrt2();
    FieldElement x = s + Rational(1, 2);
    CHECK(x.field()->is_real_quadratic());
    CHECK((s * s).to_rational() == Rational(2));
    CHECK_THROWS_AS(s + gaussian(0, 1), UnsupportedField);
    CHECK_THROWS_AS(FieldElement(0).inverse(), DomainError);
}
