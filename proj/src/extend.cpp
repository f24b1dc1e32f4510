#include "qfe/extend.hpp"

#include "qfe/errors.hpp"
#include "qfe/lattice.hpp"

#include <algorithm>

namespace qfe {

namespace {

struct TernaryData {
    std::vector<Rational> coeffs;
    Rational d;
};

TernaryData rational_ternary(const QuadraticForm& f, const char* what)
{
    if (!f.is_rational() || f.dimension() != 3) {
        throw PreconditionError(std::string(what) + " needs a rational ternary form; got dimension "
                                + std::to_string(f.dimension()) + " over "
                                + f.field()->to_string());
    }
    TernaryData out{diagonalize(f).rational_coeffs(), 1};
    for (const auto& c : out.coeffs) {
        out.d *= c;
    }
    return out;
}

std::vector<Place> obstruction_places_of(const TernaryData& t)
{
    std::vector<Place> out;
    for (const auto& p : relevant_places(t.coeffs)) {
        if (p.is_finite()
            && hilbert_symbol(-1, Rational(-t.d), p) != hasse_invariant(t.coeffs, p)) {
            out.push_back(p);
        }
    }
    return out;
}

bool is_unit_square(const Integer& n, const Integer& p)
{
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        return false;
    }
    return is_square_in_Qp(Rational(n), Place::prime(p));
}

bool totally_positive(const FieldElement& x)
{
    if (x.is_zero()) {
        return false;
    }
    auto [s1, s2] = embedding_signs(x);
    return s1 > 0 && s2 > 0;
}

} // namespace

std::vector<Place> obstruction_places(const QuadraticForm& f)
{
    return obstruction_places_of(rational_ternary(f, "obstruction_places"));
}

std::optional<ObstructionCertificate> validate_nonrepresented(const QuadraticForm& f,
                                                              const Rational& t)
{
    TernaryData data = rational_ternary(f, "validate_nonrepresented");
    if (t == 0) {
        throw DomainError("validate_nonrepresented: t = 0");
    }
    const Rational minus_d = -data.d;
    for (const auto& p : obstruction_places_of(data)) {
        if (is_square_in_Qp(Rational(t / minus_d), p)) {
            return ObstructionCertificate{p,
                                          t,
                                          SquareClass(minus_d),
                                          true,
                                          hilbert_symbol(-1, minus_d, p),
                                          hasse_invariant(data.coeffs, p)};
        }
    }
    return std::nullopt;
}

Rational find_nonrepresented(const QuadraticForm& f, int sign)
{
    if (sign != 1 && sign != -1) {
        throw DomainError("find_nonrepresented: sign must be +1 or -1");
    }
    TernaryData data = rational_ternary(f, "find_nonrepresented");
    bool pos = std::any_of(data.coeffs.begin(), data.coeffs.end(),
                           [](const Rational& c) { return c > 0; });
    bool neg = std::any_of(data.coeffs.begin(), data.coeffs.end(),
                           [](const Rational& c) { return c < 0; });
    if (!pos || !neg) {
        throw PreconditionError("find_nonrepresented: form is definite");
    }
    if (is_isotropic_global(f, {.search_witness = false}).isotropic) {
        throw PreconditionError("find_nonrepresented: form is isotropic and represents every rational");
    }
    const Integer s = SquareClass(Rational(-data.d)).representative();
    std::optional<Integer> best;
    for (const auto& place : obstruction_places_of(data)) {
        const Integer& p = place.p();
        for (Integer m = 1;; ++m) {
            if (best && abs(s) * m >= abs(*best)) {
                break;
            }
            Integer n = sign * sgn(s) > 0 ? m : Integer(-m);
            Integer t = s * n;
            if (is_unit_square(n, p) && is_squarefree(t)) {
                best = t;
                break;
            }
        }
    }
    if (!best) {
        throw std::logic_error("find_nonrepresented: anisotropic form without obstruction place");
    }
    return Rational(*best);
}

std::string to_string(ExtensionCase c)
{
    switch (c) {
    case ExtensionCase::real_quadratic: return "real_quadratic";
    case ExtensionCase::binary: return "binary";
    case ExtensionCase::isotropic_ternary: return "isotropic_ternary";
    case ExtensionCase::anisotropic_ternary: return "anisotropic_ternary";
    case ExtensionCase::meyer: return "meyer";
    }
    return "unknown";
}

ExtensionResult extend_form(const QuadraticForm& f, const ExtensionOptions& options)
{
    if (!is_admissible(f)) {
        throw PreconditionError("extend_form: form is not admissible (signature (n,1) at the "
                                "identity embedding, definite elsewhere)");
    }
    const std::size_t dim = f.dimension();
    const FieldPtr k = f.field();
    NormalizedDiagonal norm = normalize(f);
    Vector f0 = norm.coeffs;

    ExtensionCase which;
    std::optional<bool> input_isotropic;
    if (!f.is_rational()) {
        which = ExtensionCase::real_quadratic;
    } else {
        input_isotropic = is_isotropic_global(f, {.search_witness = false}).isotropic;
        if (dim == 2) {
            which = ExtensionCase::binary;
        } else if (dim == 3) {
            which = *input_isotropic ? ExtensionCase::isotropic_ternary
                                     : ExtensionCase::anisotropic_ternary;
        } else {
            which = ExtensionCase::meyer;
        }
    }

    QuadraticForm f0_form = QuadraticForm::diagonal(std::span<const FieldElement>(f0));
    FieldElement q = FieldElement::one(k);
    std::optional<ObstructionCertificate> obstruction;
    if (options.forced_q) {
        q = options.forced_q->lift(common_field(k, options.forced_q->field()));
        if (!totally_positive(q)) {
            throw PreconditionError("extend_form: q = " + q.to_string()
                                    + " is not totally positive");
        }
        if (which == ExtensionCase::anisotropic_ternary) {
            obstruction = validate_nonrepresented(f0_form, Rational(-q.rational()));
            if (!obstruction) {
                throw PreconditionError("extend_form: -" + q.to_string()
                                        + " is represented by the normalised form, so g "
                                          "would be isotropic");
            }
        }
    } else if (which == ExtensionCase::anisotropic_ternary) {
        q = FieldElement(Rational(-find_nonrepresented(f0_form, -1)));
        obstruction = validate_nonrepresented(f0_form, Rational(-q.rational()));
    }

    // g0 = diag(q, f0); g_scaled = blockdiag(q, lambda F); g = g_scaled / lambda.
    Vector g0_coeffs{q};
    g0_coeffs.insert(g0_coeffs.end(), f0.begin(), f0.end());
    Matrix q_block(1, 1, q);
    Matrix c_block(1, 1, q / norm.scale);
    Matrix that = Matrix::block_diagonal(Matrix::identity(1, k), norm.basechange);

    ExtensionResult out{
        f,
        norm,
        q,
        QuadraticForm::diagonal(std::span<const FieldElement>(g0_coeffs)),
        QuadraticForm(Matrix::block_diagonal(q_block, norm.scale * f.gram())),
        QuadraticForm(Matrix::block_diagonal(c_block, f.gram())),
        that,
        which,
        f.is_rational(),
        input_isotropic,
        std::nullopt,
        obstruction,
    };
    if (out.field_is_Q) {
        out.output_isotropic = is_isotropic_global(out.g, {.search_witness = false}).isotropic;
    }
    if (!(that.transpose() * out.g_scaled.gram() * that == out.g0.gram())) {
        throw std::logic_error("extend_form: congruence identity failed");
    }
    return out;
}

Matrix lift_isometry(const Matrix& m, const QuadraticForm& f, const QuadraticForm& g)
{
    const std::size_t n = f.dimension();
    if (g.dimension() != n + 1) {
        throw PreconditionError("lift_isometry: g must have one more variable than f");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.gram()(0, i + 1).is_zero()) {
            throw PreconditionError("lift_isometry: g is not c y^2 + f");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!(g.gram()(i + 1, j + 1) == f.gram()(i, j))) {
                throw PreconditionError("lift_isometry: g is not c y^2 + f");
            }
        }
    }
    if (!is_isometry(m, f)) {
        throw PreconditionError("lift_isometry: M is not an isometry of f");
    }
    if (!preserves_positive_sheet(m, f)) {
        throw PreconditionError("lift_isometry: M swaps the sheets of the cone");
    }
    return Matrix::block_diagonal(Matrix(1, 1, m.determinant()), m);
}

} // namespace qfe
