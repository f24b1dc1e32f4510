#pragma once

// Group elements of orthogonal groups O(f) and the explicit constructions of
// congruence subgroups of SL(2, Z) and SL(2, Z[i]).
//
// Convention: column vectors throughout. X preserves f iff X^T G X = G.

#include "qfe/quadform.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qfe {

// --- orthogonal groups -----------------------------------------------------

/// Timelike vector v with f(v) < 0 at the identity embedding, chosen
/// deterministically: the basis vector of the negative coefficient for
/// diagonal forms, otherwise the diagonalising column of the negative
/// coefficient. Requires signature (n,1) at the identity embedding.
struct SheetWitness {
    Vector v;
};

SheetWitness sheet_witness(const QuadraticForm& f);

/// X^T G X = G exactly. Throws DomainError on a dimension mismatch.
bool is_isometry(const Matrix& x, const QuadraticForm& f);

/// Whether an isometry X keeps each component of the cone {f < 0}: true iff
/// B(v, Xv) < 0 for the pinned timelike witness v. Throws
/// PreconditionError when X is not an isometry of f.
bool preserves_positive_sheet(const Matrix& x, const QuadraticForm& f);

/// X in O+(f): isometry preserving the sheets.
bool in_o_plus(const Matrix& x, const QuadraticForm& f);
/// X in SO+(f): additionally det X = 1.
bool in_so_plus(const Matrix& x, const QuadraticForm& f);

/// phi(X) = det(X) X, an isomorphism O+(f) -> SO(f) when the matrix size
/// n + 1 is odd; identity on SO+(f). Throws PreconditionError for an even
/// matrix size or when X is not in O+(f).
Matrix det_twist(const Matrix& x, const QuadraticForm& f);

/// Reflection in a vector r with f(r) != 0: x -> x - 2 B(x, r)/f(r) r.
Matrix reflection(const QuadraticForm& f, const Vector& r);

// --- SL(2) over Q(i) and its towers ------------------------------------------

/// [[a, b], [c, d]] with ad - bc = 1, considered up to sign.
class MoebiusElement {
public:
    /// Throws DomainError unless ad - bc = 1.
    MoebiusElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

    static MoebiusElement identity() { return {1, 0, 0, 1}; }

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldElement& c() const { return c_; }
    const FieldElement& d() const { return d_; }

    FieldPtr field() const;
    MoebiusElement inverse() const;
    MoebiusElement negated() const;
    friend MoebiusElement operator*(const MoebiusElement& x, const MoebiusElement& y);

    /// Entry-wise equality (as SL(2) matrices).
    friend bool operator==(const MoebiusElement& x, const MoebiusElement& y);
    /// Equality in PSL(2): A ~ -A.
    bool projectively_equal(const MoebiusElement& y) const;

    /// Whether every entry lies in Q(i) (possibly after dropping a tower
    /// layer), and the element with its entries lowered there.
    std::optional<MoebiusElement> lowered_to_gaussian() const;

    std::string to_string() const;

private:
    FieldElement a_;
    FieldElement b_;
    FieldElement c_;
    FieldElement d_;
};

/// f = x0 x1 + x2^2 + x3^2.
QuadraticForm bianchi_form();

/// How the printed PSL(2, C) -> SO+(f) matrix is oriented to satisfy
/// Y^T F Y = F with column vectors: the image is its transpose.
inline constexpr const char* kPsl2Convention = "transpose";

/// The homomorphism PSL(2, Q(i)) -> SO+(x0 x1 + x2^2 + x3^2, Q). With
/// a = a0 + a1 i etc., the untransposed matrix has rows
///   d0^2+d1^2, -b0^2-b1^2, b0d0+b1d1, b1d0-b0d1
///   -c0^2-c1^2, a0^2+a1^2, -a0c0-a1c1, -a1c0+a0c1
///   2(c0d0+c1d1), -2(a0b0+a1b1), 2(b0c0+a1d1)+1, 2(b1c0-a0d1)
///   2(c0d1-c1d0), 2(a1b0-a0b1), 2(b1c0-a1d0), 2(a0d0-b0c0)-1
/// Entries outside Q(i) throw UnsupportedField.
Matrix psl2_to_so13(const MoebiusElement& x);

/// Lower-left entry divisible by the modulus in Z (rational modulus) or
/// Z[i] (Gaussian modulus). Throws DomainError if an entry is not integral.
bool gamma0_membership(const MoebiusElement& x, const FieldElement& modulus);

/// tau_n = [[0, 1/sqrt n], [-sqrt n, 0]] over Q(sqrt n).
MoebiusElement tau_n(const Integer& n);

struct TauConjugate {
    /// tau_n gamma tau_n^{-1} = [[d, -c/n], [-n b, a]], entries in Q.
    MoebiusElement conjugate;
    /// The same product evaluated in Q(sqrt n).
    MoebiusElement direct;
    bool paths_agree = false;
    /// conjugate lies in Gamma_0(n) (integral, lower-left divisible by n).
    bool member = false;
};

/// Conjugates an integral element of SL(2, Z) by tau_n. Elements outside
/// Gamma_0(n) are not rejected: `member` reports whether the result stays
/// in Gamma_0(n).
TauConjugate tau_conjugate(const MoebiusElement& gamma, const Integer& n);

struct Sl3Obstruction {
    Matrix gamma;     // blockdiag(tau_n, 1)
    Matrix x;         // elementary matrix with (1,3)-entry P
    Matrix conjugate; // gamma x gamma^{-1}
    FieldElement entry_23;
    bool integral = false;
};

/// Throws DomainError unless n > 1 is square-free.
Sl3Obstruction sl3_obstruction(const Integer& n, const Integer& p);

/// tau = [[0, 1/s], [-s, 0]] with s^2 = pi, over Q(i)(sqrt pi).
MoebiusElement bianchi_tau(const FieldElement& pi);

/// Sample elements of Gamma_0(pi) in SL(2, Z[i]).
std::vector<MoebiusElement> gamma0_samples(const FieldElement& pi);

struct TauEntryCertificate {
    Integer norm;            // N(pi) = a^2 + b^2
    Rational entry_squared;  // 1/N(pi)
    bool rational_square = false;
};

/// The image of the tau built from pi has (1,2)-entry -|1/sqrt pi|^2 in
/// the printed orientation; its square is 1/N(pi). Throws DomainError for
/// pi = 0 and PreconditionError unless pi is a Gaussian prime or a unit.
TauEntryCertificate tau_entry_certificate(const FieldElement& pi);

bool is_gaussian_prime(const FieldElement& z);

struct SquareSample {
    /// Letters: +k is generator k-1, -k its inverse.
    std::vector<int> word;
    MoebiusElement element;
    MoebiusElement square;
    /// Count mod 2 of letters whose entries lie outside Q(i).
    int tower_parity = 0;
    bool square_in_gaussian = false;
    std::optional<Matrix> image;
    bool image_rational = false;
    bool image_in_so_plus = false;
};

/// Enumerates reduced words of length 1..max_length in the generators and
/// their inverses (length-lexicographic, generator order as given, each
/// generator before its inverse), drops words equal up to sign to an earlier
/// one, squares each word, lowers the square to Q(i) and maps it with
/// psl2_to_so13. Generators must be entirely in Q(i) or entirely in
/// sqrt(pi) * Q(i) for a tower layer Q(i)(sqrt pi).
std::vector<SquareSample> mod2_squares_sample(std::span<const MoebiusElement> generators,
                                              int max_length);

} // namespace qfe
