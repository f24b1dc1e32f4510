#pragma once

// Extending an admissible form f of signature (n,1) to g = c y^2 + f of
// signature (n+1,1), so that O(f) embeds in O(g), and lifting isometries.
//
// Supported fields: Q and real quadratic Q(sqrt d). Over Q(sqrt d) no
// isotropy verdict is attempted.

#include "qfe/quadform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qfe {

/// Finite places p with (-1, -d)_p != eps_p for a rational ternary form:
/// the primes where some t is not represented locally.
std::vector<Place> obstruction_places(const QuadraticForm& f);

/// Why t is not represented by the ternary form f at `place`:
/// t/(-d) is a square in Q_p and (-1, -d)_p != eps_p.
struct ObstructionCertificate {
    Place place = Place::infinity();
    Rational t;
    SquareClass minus_d;
    bool same_class_as_minus_d = false;
    int hilbert_minus_one = 1; // (-1, -d)_p
    int epsilon = 1;           // eps_p(f)
};

/// The first obstruction place where t satisfies both local conditions, or
/// nothing if t is represented. Throws PreconditionError unless f is a
/// rational ternary form.
std::optional<ObstructionCertificate> validate_nonrepresented(const QuadraticForm& f,
                                                              const Rational& t);

/// A square-free integer of the requested sign (+1 or -1) not represented
/// by f. Candidates are t = s n with s the square-free class of -d and n a
/// p-adic unit square at an obstruction place p; the one with smallest |t|
/// wins, ties going to the smaller place. Throws PreconditionError unless f
/// is a rational, indefinite, anisotropic ternary form.
Rational find_nonrepresented(const QuadraticForm& f, int sign);

enum class ExtensionCase {
    real_quadratic,      // k != Q: q = 1
    binary,              // n = 1 over Q: q = 1
    isotropic_ternary,   // n = 2, f isotropic: q = 1
    anisotropic_ternary, // n = 2, f anisotropic: -q not represented
    meyer,               // n >= 3 over Q: q = 1
};

std::string to_string(ExtensionCase c);

struct ExtensionOptions {
    /// Use this q (for the normalised form) instead of the default choice.
    /// Must be totally positive; in the anisotropic ternary case -q must
    /// not be represented.
    std::optional<FieldElement> forced_q;
};

struct ExtensionResult {
    QuadraticForm f;
    NormalizedDiagonal normalized; // T^T (lambda F) T = f0
    FieldElement q;                // coefficient added to f0
    QuadraticForm g0;              // diag(q, f0)
    QuadraticForm g_scaled;        // blockdiag(q, lambda F)
    QuadraticForm g;               // blockdiag(q / lambda, F) = g_scaled / lambda
    Matrix that;                   // diag(1, T): that^T g_scaled that = g0
    ExtensionCase extension_case = ExtensionCase::meyer;
    bool field_is_Q = true;
    std::optional<bool> input_isotropic;  // not computed over Q(sqrt d)
    std::optional<bool> output_isotropic; // not computed over Q(sqrt d)
    std::optional<ObstructionCertificate> obstruction;
};

/// Throws PreconditionError for non-admissible input or an invalid forced q.
ExtensionResult extend_form(const QuadraticForm& f, const ExtensionOptions& options = {});

/// psi(M) = blockdiag(det M, M). Requires M in O+(f) and g = blockdiag(c, F);
/// the image lies in SO+(g). Throws PreconditionError otherwise.
Matrix lift_isometry(const Matrix& m, const QuadraticForm& f, const QuadraticForm& g);

} // namespace qfe
