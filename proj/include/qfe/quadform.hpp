#pragma once

// Quadratic forms given by Gram matrices, f(x) = x^T G x.
//
// Isotropy, representation and equivalence verdicts are over Q only; over a
// real quadratic field the library computes signatures and admissibility.

#include "qfe/localinv.hpp"
#include "qfe/matrix.hpp"

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qfe {

class QuadraticForm {
public:
    /// Throws DomainError unless `gram` is square and symmetric, and
    /// RankDeficient if it is singular. The field is the smallest one
    /// holding every entry unless `field` is given.
    explicit QuadraticForm(Matrix gram, FieldPtr field = nullptr);

    static QuadraticForm diagonal(std::span<const FieldElement> coeffs);
    static QuadraticForm diagonal(std::span<const Rational> coeffs);
    static QuadraticForm diagonal(std::initializer_list<long> coeffs);
    /// J_n = x_0^2 + ... + x_{n-1}^2 - x_n^2.
    static QuadraticForm lorentzian(std::size_t n);

    const Matrix& gram() const { return gram_; }
    const FieldPtr& field() const { return field_; }
    std::size_t dimension() const { return gram_.rows(); }
    bool is_rational() const { return field_->is_rationals(); }

    FieldElement operator()(const Vector& x) const;
    /// Polarised pairing B(u, v) = u^T G v, so that B(v, v) = f(v).
    FieldElement pairing(const Vector& u, const Vector& v) const;

    QuadraticForm scaled(const FieldElement& lambda) const;
    /// f (+) g on disjoint variables, f first.
    QuadraticForm direct_sum(const QuadraticForm& other) const;
    /// G -> T^T G T.
    QuadraticForm transformed(const Matrix& basechange) const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b)
    {
        return a.gram_ == b.gram_;
    }

private:
    Matrix gram_;
    FieldPtr field_;
};

/// T^T G T = diag(coeffs).
struct DiagonalForm {
    Vector coeffs;
    Matrix basechange;

    /// Coefficients as rationals; throws UnsupportedField outside Q.
    std::vector<Rational> rational_coeffs() const;
};

/// Symmetric Gaussian elimination, exact over the form's field. A zero
/// pivot with a nonzero off-diagonal partner is repaired by the basis change
/// (e_k, e_j) -> (e_k + e_j, e_k - e_j) (or a swap when e_j is anisotropic).
/// With `rng`, pivots and extra elementary column operations are chosen at
/// random, giving a different but equally valid diagonalisation.
DiagonalForm diagonalize(const QuadraticForm& f, std::mt19937_64* rng = nullptr);

/// Sign counts of the diagonal coefficients at a real embedding. Only Q and
/// real quadratic fields have real embeddings here.
Signature signature(const QuadraticForm& f, Embedding embedding = Embedding::identity);

/// Signature (n,1) at the identity embedding and (n+1,0) at the conjugate
/// one (vacuous over Q).
bool is_admissible(const QuadraticForm& f);

/// Admissible diagonal form with a_0 = 1: positive coefficients first, the
/// negative one last, then scaled by lambda = 1/a_0 and, over Q, reduced to
/// square-free integers. basechange^T (lambda G) basechange = diag(coeffs).
struct NormalizedDiagonal {
    Vector coeffs;
    Matrix basechange;
    FieldElement scale; // lambda
};

/// Requires an admissible form.
NormalizedDiagonal normalize(const QuadraticForm& f);

// --- verdicts over Q ---------------------------------------------------------

struct SearchOptions {
    long height_bound = 200;
    bool search_witness = true;
};

/// Local isotropy over Q_v of a rational form. Rank 1 is anisotropic; at
/// the real place isotropy is indefiniteness; at a prime p, rank 2 needs
/// -d a square, rank 3 needs (-1,-d) = eps, rank 4 fails only when d is a
/// square and eps = -(-1,-1), rank >= 5 is always isotropic.
bool is_isotropic_local(const QuadraticForm& f, const Place& place);

struct IsotropyResult {
    bool isotropic = false;
    std::vector<Place> places_checked;
    /// First place where the form is anisotropic, if any.
    std::optional<Place> obstruction;
    /// Primitive integer vector with f(w) = 0, when one was found.
    std::optional<std::vector<Integer>> witness;
};

/// Hasse-Minkowski: isotropic at infinity and at every relevant prime
/// (rank 2: -d a rational square). The witness search never changes the
/// verdict.
IsotropyResult is_isotropic_global(const QuadraticForm& f, const SearchOptions& options = {});

struct RepresentationResult {
    bool represents = false;
    std::vector<Place> places_checked;
    /// Places where q is not represented locally.
    std::vector<Place> failing_places;
    /// Rational vector x with f(x) = q, when one was found.
    std::optional<std::vector<Rational>> witness;
};

/// Whether f represents q over Q. Ternary forms use the local criteria
/// "q = -d and (-1,-d) != eps" directly; other ranks reduce to isotropy of
/// f (+) <-q>. q = 0 is isotropy.
RepresentationResult represents(const QuadraticForm& f, const Rational& q,
                                const SearchOptions& options = {});

/// Same question answered only through isotropy of f (+) <-q>.
bool represents_via_isotropy(const QuadraticForm& f, const Rational& q);

/// Invariant profile of a rational form; `extra_places` are added to the
/// Hasse map.
InvariantProfile invariant_profile(const QuadraticForm& f,
                                   std::span<const Place> extra_places = {});

struct EquivalenceReport {
    struct Item {
        std::string invariant;
        std::string left;
        std::string right;
        bool agree = false;
    };
    bool equivalent = false;
    std::vector<Item> items;
    std::vector<Place> places_checked;
};

/// Rank, real signature, discriminant class and Hasse invariants at every
/// relevant place of either form.
EquivalenceReport equivalent_over_Q(const QuadraticForm& a, const QuadraticForm& b);

// --- bounded searches --------------------------------------------------------

/// Nonzero integer vector with sum c_i x_i^2 = 0 and max |x_i| <= height,
/// searched shell by shell. Empty if none found or the coefficients are too
/// large for the 128-bit fast path.
std::optional<std::vector<Integer>> search_isotropic_vector(std::span<const Integer> coeffs,
                                                            long height);

/// Integer vector x and t > 0 with sum c_i x_i^2 = q t^2, as the rational
/// vector x / t.
std::optional<std::vector<Rational>> search_representation(std::span<const Integer> coeffs,
                                                           const Integer& q, long height);

} // namespace qfe
