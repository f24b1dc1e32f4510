#pragma once

// Rational arithmetic helpers and p-adic predicates on rationals.
//
// Square classes of Q* are represented by signed square-free integers.
// p-adic numbers are never materialised; every predicate here works on the
// exact rational input.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qfe {

using Integer = mpz_class;
using Rational = mpq_class;

/// A place of Q: the real place or a finite prime.
class Place {
public:
    static Place infinity() { return Place{}; }
    /// Throws DomainError unless p is a positive prime.
    static Place prime(const Integer& p);
    static Place prime(long p) { return prime(Integer(p)); }

    bool is_infinite() const { return p_ == 0; }
    bool is_finite() const { return p_ != 0; }
    /// The prime; 0 for the real place.
    const Integer& p() const { return p_; }

    /// "inf" or the decimal prime.
    std::string to_string() const;
    static Place parse(std::string_view text);

    /// Orders the real place first, then primes increasingly.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b)
    {
        int c = cmp(a.p_, b.p_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }

private:
    Place() = default;
    Integer p_ = 0;
};

// --- parsing / formatting -------------------------------------------------

/// Parses "n", "-n" or "p/q" (any sign placement accepted by GMP) and
/// canonicalises. Throws ParseError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);
/// "n" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

// --- elementary number theory ---------------------------------------------

bool is_prime(const Integer& n);
/// Prime factorisation of |n| by trial division, primes ascending with
/// multiplicity. n != 0.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);
/// Signed square-free part: n = s * m^2 with |s| square-free, sign(s) = sign(n).
Integer squarefree_part(const Integer& n);
bool is_squarefree(const Integer& n);

/// Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}.
int legendre(const Integer& a, const Integer& p);

struct SquarefreeDecomposition {
    Integer s;  // signed, |s| square-free
    Rational t; // positive
};

/// r = s * t^2 with |s| square-free, sign(s) = sign(r), t > 0.
/// Throws DomainError for r = 0.
SquarefreeDecomposition squarefree_decompose(const Rational& r);

/// v_p(r). Throws DomainError for r = 0.
long padic_valuation(const Rational& r, const Integer& p);

/// Splits r = p^v * u with u a p-adic unit. Throws DomainError for r = 0.
std::pair<long, Rational> padic_split(const Rational& r, const Integer& p);

/// Residue of a p-adic unit rational modulo m (m a power of p, or 8 for
/// p = 2). The denominator is inverted modulo m.
Integer unit_residue(const Rational& u, const Integer& m);

/// True iff r is a square in Q_v (v = infinity means r > 0).
/// Odd p: even valuation and unit part a quadratic residue mod p.
/// p = 2: even valuation and unit part = 1 (mod 8).
/// Throws DomainError for r = 0.
bool is_square_in_Qp(const Rational& r, const Place& place);

/// True iff r is the square of a rational (0 counts as a square).
bool is_square_in_Q(const Rational& r);
/// Exact rational square root when it exists.
std::optional<Rational> rational_sqrt(const Rational& r);

int sign(const Rational& r);

} // namespace qfe
