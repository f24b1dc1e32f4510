#include "qfe/quadform.hpp"

#include "qfe/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qfe {

// --- QuadraticForm ----------------------------------------------------------

QuadraticForm::QuadraticForm(Matrix gram, FieldPtr field) : gram_(std::move(gram))
{
    if (!gram_.is_square() || gram_.rows() == 0) {
        throw DomainError("Gram matrix must be square and nonempty");
    }
    if (!gram_.is_symmetric()) {
        throw DomainError("Gram matrix must be symmetric");
    }
    field_ = field ? common_field(field, gram_.field()) : gram_.field();
    if (gram_.determinant().is_zero()) {
        throw RankDeficient("degenerate quadratic form (det G = 0)");
    }
}

QuadraticForm QuadraticForm::diagonal(std::span<const FieldElement> coeffs)
{
    return QuadraticForm(Matrix::diagonal(coeffs));
}

QuadraticForm QuadraticForm::diagonal(std::span<const Rational> coeffs)
{
    Vector v(coeffs.begin(), coeffs.end());
    return diagonal(std::span<const FieldElement>(v));
}

QuadraticForm QuadraticForm::diagonal(std::initializer_list<long> coeffs)
{
    Vector v;
    for (long c : coeffs) {
        v.emplace_back(c);
    }
    return diagonal(std::span<const FieldElement>(v));
}

QuadraticForm QuadraticForm::lorentzian(std::size_t n)
{
    Vector v(n + 1, FieldElement(1));
    v[n] = -1;
    return diagonal(std::span<const FieldElement>(v));
}

FieldElement QuadraticForm::operator()(const Vector& x) const
{
    return bilinear(gram_, x, x);
}

FieldElement QuadraticForm::pairing(const Vector& u, const Vector& v) const
{
    return bilinear(gram_, u, v);
}

QuadraticForm QuadraticForm::scaled(const FieldElement& lambda) const
{
    return QuadraticForm(lambda * gram_, field_);
}

QuadraticForm QuadraticForm::direct_sum(const QuadraticForm& other) const
{
    return QuadraticForm(Matrix::block_diagonal(gram_, other.gram_),
                         common_field(field_, other.field_));
}

QuadraticForm QuadraticForm::transformed(const Matrix& basechange) const
{
    return QuadraticForm(basechange.transpose() * gram_ * basechange, field_);
}

std::vector<Rational> DiagonalForm::rational_coeffs() const
{
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        auto r = c.to_rational();
        if (!r) {
            throw UnsupportedField("coefficient " + c.to_string() + " is not rational");
        }
        out.push_back(*r);
    }
    return out;
}

// --- diagonalisation --------------------------------------------------------

namespace {

// Column j of T becomes col_j + c * col_i.
void add_column(Matrix& t, std::size_t j, std::size_t i, const FieldElement& c)
{
    for (std::size_t r = 0; r < t.rows(); ++r) {
        t(r, j) += c * t(r, i);
    }
}

void swap_columns(Matrix& t, std::size_t a, std::size_t b)
{
    for (std::size_t r = 0; r < t.rows(); ++r) {
        std::swap(t(r, a), t(r, b));
    }
}

} // namespace

DiagonalForm diagonalize(const QuadraticForm& f, std::mt19937_64* rng)
{
    const Matrix& g = f.gram();
    const std::size_t n = f.dimension();
    Matrix t = Matrix::identity(n, f.field());
    auto current = [&] { return t.transpose() * g * t; };

    for (std::size_t k = 0; k < n; ++k) {
        Matrix a = current();
        if (rng != nullptr && k + 1 < n) {
            // Random elementary change e_k += c e_j, kept only if it leaves a usable pivot.
            std::uniform_int_distribution<std::size_t> pick(k + 1, n - 1);
            std::uniform_int_distribution<int> coin(0, 2);
            std::uniform_int_distribution<long> mult(-2, 2);
            if (coin(*rng) != 0) {
                std::size_t j = pick(*rng);
                long c = mult(*rng);
                if (c == 0) {
                    c = 1;
                }
                Matrix trial = t;
                add_column(trial, k, j, FieldElement(c));
                Matrix ta = trial.transpose() * g * trial;
                if (!ta(k, k).is_zero()) {
                    t = std::move(trial);
                    a = std::move(ta);
                }
            }
            std::vector<std::size_t> candidates;
            for (std::size_t i = k; i < n; ++i) {
                if (!a(i, i).is_zero()) {
                    candidates.push_back(i);
                }
            }
            if (!candidates.empty()) {
                std::uniform_int_distribution<std::size_t> which(0, candidates.size() - 1);
                std::size_t i = candidates[which(*rng)];
                if (i != k) {
                    swap_columns(t, i, k);
                    a = current();
                }
            }
        }
        if (a(k, k).is_zero()) {
            std::size_t j = k + 1;
            while (j < n && a(k, j).is_zero()) {
                ++j;
            }
            if (j == n) {
                throw RankDeficient("degenerate quadratic form");
            }
            if (!a(j, j).is_zero()) {
                swap_columns(t, j, k);
            } else {
                // Hyperbolic pair: (e_k, e_j) -> (e_k + e_j, e_k - e_j).
                Vector ek = t.column(k);
                Vector ej = t.column(j);
                for (std::size_t r = 0; r < n; ++r) {
                    t(r, k) = ek[r] + ej[r];
                    t(r, j) = ek[r] - ej[r];
                }
            }
            a = current();
        }
        FieldElement inv = a(k, k).inverse();
        for (std::size_t j = k + 1; j < n; ++j) {
            if (!a(k, j).is_zero()) {
                add_column(t, j, k, -(a(k, j) * inv));
            }
        }
    }

    Matrix d = current();
    if (!d.is_diagonal()) {
        throw std::logic_error("diagonalize: congruence did not produce a diagonal matrix");
    }
    DiagonalForm out;
    out.basechange = std::move(t);
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i).is_zero()) {
            throw RankDeficient("degenerate quadratic form");
        }
        out.coeffs.push_back(d(i, i));
    }
    return out;
}

// --- signatures ---------------------------------------------------------------

namespace {

void require_real(const QuadraticForm& f)
{
    if (!f.field()->is_rationals() && !f.field()->is_real_quadratic()) {
        throw UnsupportedField("real embeddings exist only for Q and real quadratic fields; got "
                               + f.field()->to_string());
    }
}

void require_rational(const QuadraticForm& f, const char* what)
{
    if (!f.is_rational()) {
        throw UnsupportedField(std::string(what) + " is only implemented over Q; got "
                               + f.field()->to_string());
    }
}

} // namespace

Signature signature(const QuadraticForm& f, Embedding embedding)
{
    require_real(f);
    Signature sig;
    for (const auto& c : diagonalize(f).coeffs) {
        (sign_at(c, embedding) > 0 ? sig.plus : sig.minus) += 1;
    }
    return sig;
}

bool is_admissible(const QuadraticForm& f)
{
    require_real(f);
    auto coeffs = diagonalize(f).coeffs;
    int minus_id = 0;
    int minus_conj = 0;
    for (const auto& c : coeffs) {
        auto [id, conj] = embedding_signs(c);
        minus_id += id < 0;
        minus_conj += conj < 0;
    }
    if (f.field()->is_rationals()) {
        return minus_id == 1;
    }
    return minus_id == 1 && minus_conj == 0;
}

NormalizedDiagonal normalize(const QuadraticForm& f)
{
    if (!is_admissible(f)) {
        throw PreconditionError("normalize: form is not admissible");
    }
    DiagonalForm diag = diagonalize(f);
    const std::size_t n = diag.coeffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
        return sign_at(diag.coeffs[i], Embedding::identity) > 0;
    });

    NormalizedDiagonal out;
    out.basechange = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            out.basechange(r, c) = diag.basechange(r, order[c]);
        }
        out.coeffs.push_back(diag.coeffs[order[c]]);
    }
    out.scale = out.coeffs[0].inverse();
    for (auto& c : out.coeffs) {
        c = out.scale * c;
    }
    if (f.is_rational()) {
        for (std::size_t c = 0; c < n; ++c) {
            auto [s, t] = squarefree_decompose(out.coeffs[c].rational());
            out.coeffs[c] = FieldElement(Rational(s));
            FieldElement inv_t(Rational(1 / t));
            for (std::size_t r = 0; r < n; ++r) {
                out.basechange(r, c) *= inv_t;
            }
        }
    }
    return out;
}

// --- local and global verdicts ------------------------------------------------

namespace {

std::vector<Rational> rational_diagonal(const QuadraticForm& f)
{
    return diagonalize(f).rational_coeffs();
}

Rational product(const std::vector<Rational>& c)
{
    Rational d = 1;
    for (const auto& x : c) {
        d *= x;
    }
    return d;
}

bool indefinite(const std::vector<Rational>& c)
{
    bool pos = std::any_of(c.begin(), c.end(), [](const Rational& x) { return x > 0; });
    bool neg = std::any_of(c.begin(), c.end(), [](const Rational& x) { return x < 0; });
    return pos && neg;
}

bool isotropic_local_diag(const std::vector<Rational>& c, const Place& place)
{
    const std::size_t m = c.size();
    if (m < 2) {
        return false;
    }
    if (place.is_infinite()) {
        return indefinite(c);
    }
    Rational d = product(c);
    switch (m) {
    case 2:
        return is_square_in_Qp(Rational(-d), place);
    case 3:
        return hilbert_symbol(-1, Rational(-d), place) == hasse_invariant(c, place);
    case 4:
        return !(is_square_in_Qp(d, place)
                 && hasse_invariant(c, place) == -hilbert_symbol(-1, -1, place));
    default:
        return true;
    }
}

Integer lcm_of_denominators(const std::vector<Rational>& c)
{
    Integer l = 1;
    for (const auto& x : c) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    }
    return l;
}

std::vector<Integer> integral_coeffs(const std::vector<Rational>& c, const Integer& scale)
{
    std::vector<Integer> out;
    for (const auto& x : c) {
        Rational y = x * scale;
        out.push_back(y.get_num());
    }
    return out;
}

std::vector<Integer> primitive(const std::vector<Rational>& v)
{
    Integer l = lcm_of_denominators(v);
    std::vector<Integer> w;
    Integer g = 0;
    for (const auto& x : v) {
        Rational y = x * l;
        w.push_back(y.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
    }
    if (g == 0) {
        return w;
    }
    int s = 0;
    for (const auto& x : w) {
        if (x != 0) {
            s = sgn(x);
            break;
        }
    }
    for (auto& x : w) {
        x = x / g * s;
    }
    return w;
}

} // namespace

bool is_isotropic_local(const QuadraticForm& f, const Place& place)
{
    require_rational(f, "local isotropy");
    return isotropic_local_diag(rational_diagonal(f), place);
}

IsotropyResult is_isotropic_global(const QuadraticForm& f, const SearchOptions& options)
{
    require_rational(f, "global isotropy");
    DiagonalForm diag = diagonalize(f);
    std::vector<Rational> c = diag.rational_coeffs();
    IsotropyResult res;
    auto places = relevant_places(c);
    res.places_checked.assign(places.begin(), places.end());
    if (c.size() == 1) {
        res.isotropic = false;
        res.obstruction = Place::infinity();
        return res;
    }
    if (c.size() == 2) {
        // Binary forms are isotropic iff -d is a square in Q, which is not
        // decided by finitely many places.
        res.isotropic = is_square_in_Q(Rational(-product(c)));
        if (!res.isotropic) {
            for (const auto& p : res.places_checked) {
                if (!isotropic_local_diag(c, p)) {
                    res.obstruction = p;
                    break;
                }
            }
        }
    } else {
        res.isotropic = true;
        for (const auto& p : res.places_checked) {
            if (!isotropic_local_diag(c, p)) {
                res.isotropic = false;
                res.obstruction = p;
                break;
            }
        }
    }
    if (res.isotropic && options.search_witness) {
        Integer l = lcm_of_denominators(c);
        auto found = search_isotropic_vector(integral_coeffs(c, l), options.height_bound);
        if (found) {
            Vector y(found->begin(), found->end());
            for (std::size_t i = 0; i < y.size(); ++i) {
                y[i] = FieldElement(Rational((*found)[i]));
            }
            Vector x = diag.basechange * y;
            std::vector<Rational> xr;
            for (const auto& e : x) {
                xr.push_back(*e.to_rational());
            }
            res.witness = primitive(xr);
        }
    }
    return res;
}

RepresentationResult represents(const QuadraticForm& f, const Rational& q,
                                const SearchOptions& options)
{
    require_rational(f, "representation");
    RepresentationResult res;
    if (q == 0) {
        IsotropyResult iso = is_isotropic_global(f, options);
        res.represents = iso.isotropic;
        res.places_checked = iso.places_checked;
        if (iso.obstruction) {
            res.failing_places.push_back(*iso.obstruction);
        }
        if (iso.witness) {
            res.witness.emplace();
            for (const auto& x : *iso.witness) {
                res.witness->push_back(Rational(x));
            }
        }
        return res;
    }
    DiagonalForm diag = diagonalize(f);
    std::vector<Rational> c = diag.rational_coeffs();
    std::vector<Rational> ext = c;
    ext.push_back(-q);
    auto places = relevant_places(ext);
    res.places_checked.assign(places.begin(), places.end());

    if (c.size() == 3) {
        Rational d = product(c);
        for (const auto& p : places) {
            bool fails = false;
            if (p.is_infinite()) {
                bool has_sign = std::any_of(c.begin(), c.end(),
                                            [&](const Rational& x) { return sgn(x) == sgn(q); });
                fails = !has_sign;
            } else {
                fails = is_square_in_Qp(Rational(-q * d), p)
                     && hilbert_symbol(-1, Rational(-d), p) != hasse_invariant(c, p);
            }
            if (fails) {
                res.failing_places.push_back(p);
            }
        }
        res.represents = res.failing_places.empty();
    } else {
        for (const auto& p : places) {
            if (!isotropic_local_diag(ext, p)) {
                res.failing_places.push_back(p);
            }
        }
        res.represents = represents_via_isotropy(f, q);
    }

    if (res.represents && options.search_witness) {
        std::vector<Rational> all = c;
        all.push_back(q);
        Integer l = lcm_of_denominators(all);
        Rational ql = q * l;
        auto found = search_representation(integral_coeffs(c, l), ql.get_num(),
                                           options.height_bound);
        if (found) {
            Vector y;
            for (const auto& x : *found) {
                y.emplace_back(x);
            }
            Vector x = diag.basechange * y;
            res.witness.emplace();
            for (const auto& e : x) {
                res.witness->push_back(*e.to_rational());
            }
        }
    }
    return res;
}

bool represents_via_isotropy(const QuadraticForm& f, const Rational& q)
{
    require_rational(f, "representation");
    if (q == 0) {
        return is_isotropic_global(f, {.search_witness = false}).isotropic;
    }
    std::vector<Rational> ext = rational_diagonal(f);
    ext.push_back(-q);
    return is_isotropic_global(QuadraticForm::diagonal(ext), {.search_witness = false}).isotropic;
}

InvariantProfile invariant_profile(const QuadraticForm& f, std::span<const Place> extra_places)
{
    require_rational(f, "invariant profile");
    return profile_of_diagonal(rational_diagonal(f), extra_places);
}

EquivalenceReport equivalent_over_Q(const QuadraticForm& a, const QuadraticForm& b)
{
    require_rational(a, "equivalence");
    require_rational(b, "equivalence");
    std::vector<Rational> ca = rational_diagonal(a);
    std::vector<Rational> cb = rational_diagonal(b);
    EquivalenceReport rep;
    auto add = [&](std::string what, std::string l, std::string r) {
        bool agree = l == r;
        rep.items.push_back({std::move(what), std::move(l), std::move(r), agree});
    };
    add("rank", std::to_string(ca.size()), std::to_string(cb.size()));
    auto sig_str = [](const std::vector<Rational>& c) {
        int plus = 0;
        for (const auto& x : c) {
            plus += x > 0;
        }
        return "(" + std::to_string(plus) + "," + std::to_string(c.size() - plus) + ")";
    };
    add("signature", sig_str(ca), sig_str(cb));
    add("disc", discriminant_class(ca).to_string(), discriminant_class(cb).to_string());
    auto places = relevant_places(ca);
    auto pb = relevant_places(cb);
    places.insert(pb.begin(), pb.end());
    rep.places_checked.assign(places.begin(), places.end());
    for (const auto& p : places) {
        add("hasse@" + p.to_string(), std::to_string(hasse_invariant(ca, p)),
            std::to_string(hasse_invariant(cb, p)));
    }
    rep.equivalent = std::all_of(rep.items.begin(), rep.items.end(),
                                 [](const EquivalenceReport::Item& i) { return i.agree; });
    return rep;
}

} // namespace qfe
