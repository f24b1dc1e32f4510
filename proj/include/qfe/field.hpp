#pragma once

// Exact arithmetic in Q and in quadratic towers of height at most two.
//
// Supported fields:
//   Q
//   Q(sqrt d), d > 1 a square-free integer          (real quadratic)
//   Q(i)                                             (d = -1)
//   Q(i)(sqrt delta), delta in Q(i) a non-square     (e.g. delta = 2 + i)
//
// Totally real fields of degree > 2 are not modelled; every entry point that
// needs a real embedding rejects anything other than Q and Q(sqrt d).

#include "qfe/padic.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfe {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element a + b*sqrt(delta) of a quadratic extension, or a rational.
/// Coordinates a, b live in the base field of the element's field.
class FieldElement {
public:
    /// Rational zero.
    FieldElement();
    FieldElement(Rational q); // NOLINT: implicit on purpose
    FieldElement(long q) : FieldElement(Rational(q)) {} // NOLINT
    FieldElement(int q) : FieldElement(Rational(q)) {}  // NOLINT
    /// a + b*sqrt(delta) in `field`; a and b are lifted into the base field.
    FieldElement(FieldPtr field, const FieldElement& a, const FieldElement& b);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);

    /// Q is represented internally by a null pointer.
    FieldPtr field() const;
    int height() const;
    bool is_rational_field() const { return height() == 0; }

    /// The value when this is an element of Q; throws UnsupportedField otherwise.
    const Rational& rational() const;
    /// Coordinates over the base field; only for height >= 1.
    const FieldElement& a() const;
    const FieldElement& b() const;

    bool is_zero() const;
    /// True iff the value lies in Q (all irrational coordinates vanish).
    bool is_rational_value() const;
    /// Collapses to the value in Q, if it is one.
    std::optional<Rational> to_rational() const;
    /// Drops to the base field when b = 0.
    std::optional<FieldElement> lower() const;
    /// Same value, as an element of `target`, which must contain this field.
    FieldElement lift(const FieldPtr& target) const;

    /// a - b*sqrt(delta) (conjugation of the top layer).
    FieldElement conj() const;
    /// a^2 - delta*b^2, an element of the base field.
    FieldElement norm() const;
    /// Throws DomainError on zero.
    FieldElement inverse() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
    friend bool operator==(const FieldElement& x, const FieldElement& y);

    std::string to_string() const;

private:
    FieldPtr field_;
    Rational q_;                      // height 0
    std::vector<FieldElement> coords_; // height >= 1: {a, b}
};

/// Field descriptor. Shared and immutable.
class Field {
public:
    static FieldPtr rationals();
    /// Q(sqrt d) for a square-free integer d > 1.
    static FieldPtr real_quadratic(const Integer& d);
    /// Q(i).
    static FieldPtr gaussian();
    /// base(sqrt delta). Accepts Q as base (delta a square-free integer,
    /// delta > 1 or delta = -1) or Q(i) as base (delta a non-square of Q(i)).
    static FieldPtr extend(const FieldPtr& base, const FieldElement& delta);

    int height() const { return height_; }
    const FieldPtr& base() const { return base_; }
    /// Only meaningful for height >= 1.
    const FieldElement& delta() const { return delta_; }

    bool is_rationals() const { return height_ == 0; }
    bool is_real_quadratic() const;
    bool is_gaussian() const;
    /// Contains `other` as a subfield along the tower.
    bool contains(const Field& other) const;

    std::string to_string() const;

    friend bool operator==(const Field& x, const Field& y);

private:
    Field() = default;
    int height_ = 0;
    FieldPtr base_;
    FieldElement delta_;
};

/// sqrt(delta) as an element of `field` (height >= 1).
FieldElement generator(const FieldPtr& field);

bool same_field(const FieldPtr& a, const FieldPtr& b);
/// The larger of two tower-compatible fields; throws UnsupportedField if
/// neither contains the other.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

/// Square root inside a height <= 1 field, when one exists there.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

/// Signs of x under the two real embeddings of Q(sqrt d): sqrt d -> +sqrt d
/// and sqrt d -> -sqrt d. Exact: uses only sign(a), sign(b) and the
/// comparison of a^2 with d*b^2. For x in Q both signs are sign(x).
/// Throws DomainError for x = 0 and UnsupportedField for non-real fields.
std::pair<int, int> embedding_signs(const FieldElement& x);

enum class Embedding { identity, conjugate };

/// Sign of x at the given real embedding.
int sign_at(const FieldElement& x, Embedding embedding);

/// Membership in the maximal order. For height-1 fields this is the
/// trace/norm test: 2a and a^2 - d b^2 integral, which is Z[sqrt d] for
/// d = 2,3 (mod 4), Z[(1+sqrt d)/2] for d = 1 (mod 4) and Z[i] for d = -1.
/// Throws UnsupportedField on height-2 towers.
bool is_algebraic_integer(const FieldElement& x);

/// Gaussian rational a + b i as (a, b). Requires x in Q(i) (or Q).
std::pair<Rational, Rational> gaussian_parts(const FieldElement& x);
FieldElement gaussian(const Rational& re, const Rational& im);

} // namespace qfe
