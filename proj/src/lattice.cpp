#include "qfe/lattice.hpp"

#include "qfe/errors.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace qfe {

// --- orthogonal groups -----------------------------------------------------

SheetWitness sheet_witness(const QuadraticForm& f)
{
    if (!f.field()->is_rationals() && !f.field()->is_real_quadratic()) {
        throw UnsupportedField("sheet witness needs a real embedding; got " + f.field()->to_string());
    }
    const std::size_t n = f.dimension();
    if (signature(f, Embedding::identity).minus != 1) {
        throw PreconditionError("sheets of the cone {f < 0} need signature (n,1)");
    }
    if (f.gram().is_diagonal()) {
        for (std::size_t i = 0; i < n; ++i) {
            if (sign_at(f.gram()(i, i), Embedding::identity) < 0) {
                Vector v(n, FieldElement::zero(f.field()));
                v[i] = FieldElement::one(f.field());
                return {v};
            }
        }
    }
    DiagonalForm diag = diagonalize(f);
    for (std::size_t i = 0; i < n; ++i) {
        if (sign_at(diag.coeffs[i], Embedding::identity) < 0) {
            return {diag.basechange.column(i)};
        }
    }
    throw std::logic_error("sheet_witness: no negative coefficient");
}

bool is_isometry(const Matrix& x, const QuadraticForm& f)
{
    if (x.rows() != f.dimension() || x.cols() != f.dimension()) {
        throw DomainError("is_isometry: matrix size " + std::to_string(x.rows()) + "x"
                          + std::to_string(x.cols()) + " does not match form dimension "
                          + std::to_string(f.dimension()));
    }
    return x.transpose() * f.gram() * x == f.gram();
}

bool preserves_positive_sheet(const Matrix& x, const QuadraticForm& f)
{
    if (!is_isometry(x, f)) {
        throw PreconditionError("preserves_positive_sheet: matrix is not an isometry of the form");
    }
    Vector v = sheet_witness(f).v;
    FieldElement b = f.pairing(v, x * v);
    return sign_at(b, Embedding::identity) < 0;
}

bool in_o_plus(const Matrix& x, const QuadraticForm& f)
{
    return is_isometry(x, f) && preserves_positive_sheet(x, f);
}

bool in_so_plus(const Matrix& x, const QuadraticForm& f)
{
    return in_o_plus(x, f) && x.determinant() == FieldElement(1);
}

Matrix det_twist(const Matrix& x, const QuadraticForm& f)
{
    if (f.dimension() % 2 == 0) {
        throw PreconditionError("det_twist needs an odd matrix size (n even); got size "
                                + std::to_string(f.dimension()));
    }
    if (!in_o_plus(x, f)) {
        throw PreconditionError("det_twist: matrix is not in O+(f)");
    }
    return x.determinant() * x;
}

Matrix reflection(const QuadraticForm& f, const Vector& r)
{
    FieldElement fr = f(r);
    if (fr.is_zero()) {
        throw DomainError("reflection in an isotropic vector");
    }
    const std::size_t n = f.dimension();
    Matrix m = Matrix::identity(n, f.field());
    // Column j is e_j - 2 B(e_j, r)/f(r) r.
    Vector gr = f.gram() * r;
    FieldElement scale = FieldElement(-2) / fr;
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement coef = scale * gr[j];
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) += coef * r[i];
        }
    }
    return m;
}

// --- MoebiusElement ----------------------------------------------------------

MoebiusElement::MoebiusElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
{
    if (!(a_ * d_ - b_ * c_ == FieldElement(1))) {
        throw DomainError("Moebius element is not unimodular: ad - bc = "
                          + (a_ * d_ - b_ * c_).to_string());
    }
}

FieldPtr MoebiusElement::field() const
{
    return common_field(common_field(a_.field(), b_.field()),
                        common_field(c_.field(), d_.field()));
}

MoebiusElement MoebiusElement::inverse() const
{
    return {d_, -b_, -c_, a_};
}

MoebiusElement MoebiusElement::negated() const
{
    return {-a_, -b_, -c_, -d_};
}

MoebiusElement operator*(const MoebiusElement& x, const MoebiusElement& y)
{
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
            x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

bool operator==(const MoebiusElement& x, const MoebiusElement& y)
{
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

bool MoebiusElement::projectively_equal(const MoebiusElement& y) const
{
    return *this == y || *this == y.negated();
}

namespace {

std::optional<FieldElement> lower_to_gaussian(FieldElement x)
{
    while (x.height() > 1) {
        auto low = x.lower();
        if (!low) {
            return std::nullopt;
        }
        x = *low;
    }
    if (x.height() == 1 && !x.field()->is_gaussian()) {
        return std::nullopt;
    }
    return x;
}

} // namespace

std::optional<MoebiusElement> MoebiusElement::lowered_to_gaussian() const
{
    auto a = lower_to_gaussian(a_);
    auto b = lower_to_gaussian(b_);
    auto c = lower_to_gaussian(c_);
    auto d = lower_to_gaussian(d_);
    if (!a || !b || !c || !d) {
        return std::nullopt;
    }
    return MoebiusElement(*a, *b, *c, *d);
}

std::string MoebiusElement::to_string() const
{
    return "[[" + a_.to_string() + ", " + b_.to_string() + "], [" + c_.to_string() + ", "
         + d_.to_string() + "]]";
}

// --- PSL(2, Q(i)) -> SO+(x0 x1 + x2^2 + x3^2) ----------------------------------

QuadraticForm bianchi_form()
{
    Rational h(1, 2);
    return QuadraticForm(Matrix{{0, h, 0, 0}, {h, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

Matrix psl2_to_so13(const MoebiusElement& x)
{
    auto low = x.lowered_to_gaussian();
    if (!low) {
        throw UnsupportedField("psl2_to_so13 needs entries in Q(i); got " + x.to_string());
    }
    auto [a0, a1] = gaussian_parts(low->a());
    auto [b0, b1] = gaussian_parts(low->b());
    auto [c0, c1] = gaussian_parts(low->c());
    auto [d0, d1] = gaussian_parts(low->d());
    auto q = [](const auto& e) { return FieldElement(Rational(e)); };
    Matrix printed{
        {q(d0 * d0 + d1 * d1), q(-b0 * b0 - b1 * b1), q(b0 * d0 + b1 * d1), q(b1 * d0 - b0 * d1)},
        {q(-c0 * c0 - c1 * c1), q(a0 * a0 + a1 * a1), q(-a0 * c0 - a1 * c1), q(-a1 * c0 + a0 * c1)},
        {q(2 * (c0 * d0 + c1 * d1)), q(-2 * (a0 * b0 + a1 * b1)), q(2 * (b0 * c0 + a1 * d1) + 1),
         q(2 * (b1 * c0 - a0 * d1))},
        {q(2 * (c0 * d1 - c1 * d0)), q(2 * (a1 * b0 - a0 * b1)), q(2 * (b1 * c0 - a1 * d0)),
         q(2 * (a0 * d0 - b0 * c0) - 1)},
    };
    return printed.transpose();
}

// --- congruence subgroups -------------------------------------------------------

namespace {

bool is_gaussian_integer(const FieldElement& x)
{
    auto low = lower_to_gaussian(x);
    if (!low) {
        return false;
    }
    auto [re, im] = gaussian_parts(*low);
    return re.get_den() == 1 && im.get_den() == 1;
}

} // namespace

bool gamma0_membership(const MoebiusElement& x, const FieldElement& modulus)
{
    for (const auto* e : {&x.a(), &x.b(), &x.c(), &x.d()}) {
        if (!is_gaussian_integer(*e)) {
            throw DomainError("gamma0_membership: entry " + e->to_string() + " is not integral");
        }
    }
    if (modulus.is_zero()) {
        throw DomainError("gamma0_membership: zero modulus");
    }
    return is_gaussian_integer(x.c() / modulus);
}

MoebiusElement tau_n(const Integer& n)
{
    FieldPtr k = Field::real_quadratic(n);
    FieldElement s = generator(k);
    return {FieldElement::zero(k), s.inverse(), -s, FieldElement::zero(k)};
}

TauConjugate tau_conjugate(const MoebiusElement& gamma, const Integer& n)
{
    for (const auto* e : {&gamma.a(), &gamma.b(), &gamma.c(), &gamma.d()}) {
        auto r = e->to_rational();
        if (!r || r->get_den() != 1) {
            throw DomainError("tau_conjugate needs an element of SL(2, Z); entry " + e->to_string());
        }
    }
    const Rational nq(n);
    MoebiusElement closed(gamma.d(), FieldElement(Rational(-gamma.c().rational() / nq)),
                          FieldElement(Rational(-nq * gamma.b().rational())), gamma.a());
    MoebiusElement t = tau_n(n);
    MoebiusElement product = t * gamma * t.inverse();
    auto lower = [](const FieldElement& e) {
        auto r = e.to_rational();
        if (!r) {
            throw std::logic_error("tau conjugate left Q: " + e.to_string());
        }
        return FieldElement(*r);
    };
    MoebiusElement direct(lower(product.a()), lower(product.b()), lower(product.c()),
                          lower(product.d()));
    TauConjugate out{closed, direct, closed == direct, false};
    bool integral = true;
    for (const auto* e : {&closed.a(), &closed.b(), &closed.c(), &closed.d()}) {
        integral = integral && e->rational().get_den() == 1;
    }
    out.member = integral && mpz_divisible_p(closed.c().rational().get_num().get_mpz_t(),
                                             n.get_mpz_t());
    return out;
}

Sl3Obstruction sl3_obstruction(const Integer& n, const Integer& p)
{
    if (n <= 1 || !is_squarefree(n)) {
        throw DomainError("sl3_obstruction needs a square-free n > 1, got " + n.get_str());
    }
    MoebiusElement t = tau_n(n);
    FieldPtr k = t.field();
    FieldElement zero = FieldElement::zero(k);
    FieldElement one = FieldElement::one(k);
    Sl3Obstruction out;
    out.gamma = Matrix{{t.a(), t.b(), zero}, {t.c(), t.d(), zero}, {zero, zero, one}};
    out.x = Matrix::identity(3, k);
    out.x(0, 2) = FieldElement(Rational(p));
    out.conjugate = out.gamma * out.x * out.gamma.inverse();
    out.entry_23 = out.conjugate(1, 2);
    out.integral = true;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            auto r = out.conjugate(i, j).to_rational();
            out.integral = out.integral && r && r->get_den() == 1;
        }
    }
    return out;
}

// --- the Bianchi example ----------------------------------------------------------

bool is_gaussian_prime(const FieldElement& z)
{
    if (!is_gaussian_integer(z)) {
        return false;
    }
    auto [a, b] = gaussian_parts(*lower_to_gaussian(z));
    if (a == 0 || b == 0) {
        Integer m = abs(a == 0 ? b.get_num() : a.get_num());
        return is_prime(m) && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3;
    }
    return is_prime(Integer(a.get_num() * a.get_num() + b.get_num() * b.get_num()));
}

MoebiusElement bianchi_tau(const FieldElement& pi)
{
    FieldPtr k = Field::extend(Field::gaussian(), pi);
    FieldElement s = generator(k);
    return {FieldElement::zero(k), s.inverse(), -s, FieldElement::zero(k)};
}

std::vector<MoebiusElement> gamma0_samples(const FieldElement& pi)
{
    FieldElement i = gaussian(0, 1);
    FieldElement p = pi.lift(Field::gaussian());
    return {
        {1, 1, 0, 1},
        {1, i, 0, 1},
        {1, 0, p, 1},
        {1, 0, i * p, 1},
        {i, 0, 0, -i},
    };
}

TauEntryCertificate tau_entry_certificate(const FieldElement& pi)
{
    if (pi.is_zero()) {
        throw DomainError("tau_entry_certificate: pi = 0");
    }
    auto low = lower_to_gaussian(pi);
    if (!low) {
        throw DomainError("tau_entry_certificate: pi must lie in Q(i)");
    }
    auto [a, b] = gaussian_parts(*low);
    Rational norm = a * a + b * b;
    bool unit = norm == 1 && is_gaussian_integer(pi);
    if (!unit && !is_gaussian_prime(pi)) {
        throw PreconditionError("tau_entry_certificate: " + pi.to_string()
                                + " is neither a Gaussian prime nor a unit");
    }
    TauEntryCertificate out;
    out.norm = norm.get_num();
    out.entry_squared = 1 / norm;
    out.rational_square = is_square_in_Q(out.entry_squared);
    return out;
}

// --- squares sampler ---------------------------------------------------------------

namespace {

int letter_parity(const MoebiusElement& g)
{
    if (g.lowered_to_gaussian()) {
        return 0;
    }
    for (const auto* e : {&g.a(), &g.b(), &g.c(), &g.d()}) {
        if (e->height() != 2 || !lower_to_gaussian(e->a()) || !e->a().is_zero()) {
            throw UnsupportedField("generator " + g.to_string()
                                   + " is neither in Q(i) nor in sqrt(pi) Q(i)");
        }
    }
    return 1;
}

SquareSample evaluate_word(std::vector<int> word, const std::vector<MoebiusElement>& letters,
                           const std::vector<int>& parity, MoebiusElement element)
{
    SquareSample s{std::move(word), element, element * element, 0, false, std::nullopt, false,
                   false};
    for (int l : s.word) {
        s.tower_parity ^= parity[static_cast<std::size_t>(std::abs(l) - 1)];
    }
    (void)letters;
    auto low = s.square.lowered_to_gaussian();
    s.square_in_gaussian = low.has_value();
    if (low) {
        Matrix y = psl2_to_so13(*low);
        s.image_rational = y.is_rational();
        s.image = y;
        s.image_in_so_plus = s.image_rational && in_so_plus(y, bianchi_form());
    }
    return s;
}

} // namespace

std::vector<SquareSample> mod2_squares_sample(std::span<const MoebiusElement> generators,
                                              int max_length)
{
    if (max_length < 1) {
        throw DomainError("mod2_squares_sample: word length bound must be >= 1");
    }
    if (generators.empty()) {
        throw DomainError("mod2_squares_sample: no generators");
    }
    std::vector<int> parity;
    for (const auto& g : generators) {
        parity.push_back(letter_parity(g));
    }
    std::vector<int> alphabet;
    std::vector<MoebiusElement> letters(generators.begin(), generators.end());
    for (int k = 1; k <= static_cast<int>(generators.size()); ++k) {
        alphabet.push_back(k);
        alphabet.push_back(-k);
    }
    auto letter = [&](int l) {
        const MoebiusElement& g = generators[static_cast<std::size_t>(std::abs(l) - 1)];
        return l > 0 ? g : g.inverse();
    };

    // Length-lexicographic reduced words, deduplicated up to sign.
    std::vector<std::pair<std::vector<int>, MoebiusElement>> kept;
    std::vector<std::pair<std::vector<int>, MoebiusElement>> frontier{{{}, MoebiusElement::identity()}};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::pair<std::vector<int>, MoebiusElement>> next;
        for (const auto& [w, e] : frontier) {
            for (int l : alphabet) {
                if (!w.empty() && w.back() == -l) {
                    continue;
                }
                std::vector<int> w2 = w;
                w2.push_back(l);
                next.emplace_back(std::move(w2), e * letter(l));
            }
        }
        for (const auto& [w, e] : next) {
            bool seen = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
                return k.second.projectively_equal(e);
            });
            if (!seen) {
                kept.emplace_back(w, e);
            }
        }
        frontier = std::move(next);
    }

    // Squares and images are independent per word; merge in enumeration order.
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
    const std::size_t chunk = (kept.size() + workers - 1) / workers;
    std::vector<std::future<std::vector<SquareSample>>> jobs;
    for (std::size_t start = 0; start < kept.size(); start += chunk) {
        std::size_t stop = std::min(kept.size(), start + chunk);
        jobs.push_back(std::async(std::launch::async, [&, start, stop] {
            std::vector<SquareSample> part;
            for (std::size_t i = start; i < stop; ++i) {
                part.push_back(evaluate_word(kept[i].first, letters, parity, kept[i].second));
            }
            return part;
        }));
    }
    std::vector<SquareSample> out;
    for (auto& job : jobs) {
        auto part = job.get();
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

} // namespace qfe
