#pragma once

// Local invariants of diagonal rational quadratic forms.
//
// Hasse invariant convention: eps_v(<a_1,...,a_m>) = prod_{i<j} (a_i, a_j)_v.
// The other convention in the literature, prod_{i<=j}, differs by
// (d, d)_v-type factors; every value in this library uses i<j.

#include "qfe/padic.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qfe {

/// Element of Q*/(Q*)^2, stored as its signed square-free representative.
class SquareClass {
public:
    SquareClass() = default;
    /// Class of a nonzero rational. Throws DomainError on zero.
    explicit SquareClass(const Rational& r);

    const Integer& representative() const { return rep_; }
    bool is_identity() const { return rep_ == 1; }

    friend SquareClass operator*(const SquareClass& x, const SquareClass& y);
    friend bool operator==(const SquareClass& x, const SquareClass& y) { return x.rep_ == y.rep_; }
    friend bool operator<(const SquareClass& x, const SquareClass& y) { return x.rep_ < y.rep_; }

    std::string to_string() const { return rep_.get_str(); }

private:
    Integer rep_ = 1;
};

/// Hilbert symbol (a, b)_v in {-1, +1}. Throws DomainError if a or b is 0.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& place);

/// Square class of the product of the coefficients.
/// Throws DomainError on an empty list or a zero coefficient.
SquareClass discriminant_class(std::span<const Rational> coeffs);

/// prod_{i<j} (a_i, a_j)_v. A single coefficient gives +1.
int hasse_invariant(std::span<const Rational> coeffs, const Place& place);

/// {inf, 2} together with every odd prime dividing the square-free part of
/// some coefficient. All Hilbert symbols among the coefficients are +1 at
/// places outside this set.
std::set<Place> relevant_places(std::span<const Rational> coeffs);

struct Signature {
    int plus = 0;
    int minus = 0;
    int rank() const { return plus + minus; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Equivalence fingerprint of a rational form.
struct InvariantProfile {
    int rank = 0;
    std::vector<Signature> signatures; // one per real embedding
    SquareClass disc;
    std::map<Place, int> hasse; // relevant places only; +1 elsewhere

    /// Hasse value at any place (defaults to +1 outside the stored set).
    int hasse_at(const Place& place) const;
    /// Product of all stored Hasse values; +1 by Hilbert reciprocity.
    int hasse_product() const;
    /// Places where the Hasse invariant is -1, ascending.
    std::vector<Place> nontrivial_places() const;
};

/// Profile of the diagonal rational form <coeffs>, with Hasse values at
/// relevant_places(coeffs) plus any `extra_places`.
InvariantProfile profile_of_diagonal(std::span<const Rational> coeffs,
                                     std::span<const Place> extra_places = {});

} // namespace qfe
