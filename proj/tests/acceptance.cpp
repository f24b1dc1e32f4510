// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fails.

#include "oracles.hpp"

#include "qfe/errors.hpp"
#include "qfe/extend.hpp"
#include "qfe/lattice.hpp"
#include "qfe/localinv.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>

using namespace qfe;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            if (ok) {
                notes << what;
            }
            ok = false;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds,
               const std::function<void(Check&)>& body)
{
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        std::ostringstream msg;
        msg << "over time budget " << budget_seconds << " s";
        c.require(false, msg.str());
    }
    std::printf("%s %2d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                c.ok ? "" : ": ", c.notes.str().c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
}

QuadraticForm diag(std::initializer_list<long> c) { return QuadraticForm::diagonal(c); }

Rational rational_entry(const FieldElement& x)
{
    auto r = x.to_rational();
    if (!r) {
        throw std::logic_error("expected a rational entry");
    }
    return *r;
}

std::vector<Rational> diagonal_of(const QuadraticForm& f)
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < f.dimension(); ++i) {
        out.push_back(rational_entry(f.gram()(i, i)));
    }
    return out;
}

// Whether a x^2 + b z^2 + c w^2 = q t^2 has a solution with 1 <= t <= h and
// 0 <= x, z, w <= h, via a table of the values a x^2 + b z^2.
bool ternary_bruteforce(long a, long b, long c, long q, long h)
{
    std::unordered_set<long long> left;
    left.reserve(static_cast<std::size_t>((h + 1) * (h + 1)));
    for (long long x = 0; x <= h; ++x) {
        for (long long z = 0; z <= h; ++z) {
            left.insert(a * x * x + b * z * z);
        }
    }
    for (long long t = 1; t <= h; ++t) {
        for (long long w = 0; w <= h; ++w) {
            if (left.contains(q * t * t - c * w * w)) {
                return true;
            }
        }
    }
    return false;
}

Rational random_nonzero(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 12);
    long n = 0;
    while (n == 0) {
        n = num(rng);
    }
    Rational r(n, den(rng));
    r.canonicalize();
    return r;
}

// Integral diagonal rank-5 form with both signs among coefficients in [-bound, bound] \ {0}.
std::vector<long> random_indefinite_rank5(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> coeff(-bound, bound);
    while (true) {
        std::vector<long> c;
        while (c.size() < 5) {
            long x = coeff(rng);
            if (x != 0) {
                c.push_back(x);
            }
        }
        bool pos = std::any_of(c.begin(), c.end(), [](long x) { return x > 0; });
        bool neg = std::any_of(c.begin(), c.end(), [](long x) { return x < 0; });
        if (pos && neg) {
            return c;
        }
    }
}

QuadraticForm from_longs(const std::vector<long>& c)
{
    std::vector<Rational> r(c.begin(), c.end());
    return QuadraticForm::diagonal(std::span<const Rational>(r));
}

Matrix random_o_plus_j2(std::mt19937_64& rng, int length)
{
    QuadraticForm j2 = QuadraticForm::lorentzian(2);
    std::vector<Vector> roots{{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {1, 1, 1}};
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    Matrix m = Matrix::identity(3);
    for (int i = 0; i < length; ++i) {
        m = m * reflection(j2, roots[pick(rng)]);
    }
    return m;
}

FieldElement random_gaussian(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 6);
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    return gaussian(a, b);
}

MoebiusElement random_sl2_gaussian(std::mt19937_64& rng)
{
    MoebiusElement m = MoebiusElement::identity();
    std::uniform_int_distribution<int> kind(0, 2);
    for (int i = 0; i < 4; ++i) {
        FieldElement x = random_gaussian(rng, 5);
        switch (kind(rng)) {
        case 0: m = m * MoebiusElement(1, x, 0, 1); break;
        case 1: m = m * MoebiusElement(1, 0, x, 1); break;
        default:
            if (!x.is_zero()) {
                m = m * MoebiusElement(x, 0, 0, x.inverse());
            }
        }
    }
    return m;
}

bool integral(const Matrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto r = m(i, j).to_rational();
            if (!r || r->get_den() != 1) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

int main()
{
    const Place inf = Place::infinity();

    criterion(1, "21y^2+x^2+z^2-3w^2 ~ x^2+y^2+z^2-7w^2: discriminants, Hasse invariants", 1.0, [&](Check& c) {
        QuadraticForm g_prime = diag({1, 1, 1, -7});
        QuadraticForm g = diag({21, 1, 1, -3});
        c.require(g_prime.gram().determinant() == FieldElement(-7), "det g' != -7");
        c.require(g.gram().determinant() == FieldElement(-63), "det g != -7 * 3^2");
        c.require(discriminant_class(diagonal_of(g_prime)).representative() == -7, "disc g' class");
        c.require(discriminant_class(diagonal_of(g)).representative() == -7, "disc g class");
        for (const Place& v : {inf, Place::prime(2), Place::prime(3), Place::prime(7)}) {
            c.require(hasse_invariant(diagonal_of(g_prime), v) == 1, "hasse g' at " + v.to_string());
            c.require(hasse_invariant(diagonal_of(g), v) == 1, "hasse g at " + v.to_string());
        }
        c.require(hilbert_symbol(21, -3, Place::prime(3)) == 1, "(21,-3)_3");
        c.require(hilbert_symbol(1, -7, Place::prime(7)) == 1, "(1,-7)_7");
        c.require(oracle::hilbert(21, -3, 3) == 1, "oracle (21,-3)_3");
        c.require(equivalent_over_Q(g, g_prime).equivalent, "not equivalent");
    });

    criterion(2, "anisotropy verdicts", 1.0, [&](Check& c) {
        c.require(!is_isotropic_global(diag({1, 1, 1, -7})).isotropic, "x^2+y^2+z^2-7w^2 isotropic");
        c.require(!is_isotropic_global(diag({1, 1, -3})).isotropic, "x^2+z^2-3w^2 isotropic");
        c.require(!represents(diag({1, 1, 1}), 7).represents, "x^2+y^2+z^2 represents 7");
        // Local obstructions, independently: no primitive zero mod 16 / mod 9.
        c.require(!oracle::primitive_zero_mod({1, 1, 1, -7}, 2, 4), "mod 16 zero of g'");
        c.require(!oracle::primitive_zero_mod({1, 1, -3}, 3, 2), "mod 9 zero");
        c.require(!oracle::represents_bruteforce({1, 1, 1}, 7, 40), "brute force represents 7");
    });

    criterion(3, "rank 5: indefinite forms isotropic with small witnesses", 30.0, [&](Check& c) {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 100; ++i) {
            auto coeffs = random_indefinite_rank5(rng, 50);
            QuadraticForm f = from_longs(coeffs);
            c.require(is_isotropic_global(f, {.search_witness = false}).isotropic, "anisotropic rank 5 form");
        }
        for (int i = 0; i < 100; ++i) {
            auto coeffs = random_indefinite_rank5(rng, 20);
            QuadraticForm f = from_longs(coeffs);
            IsotropyResult r = is_isotropic_global(f, {.height_bound = 200});
            c.require(r.isotropic, "anisotropic rank 5 form");
            if (!r.witness) {
                c.require(false, "no witness of height <= 200");
                continue;
            }
            Integer sum = 0;
            bool bounded = true;
            bool nonzero = false;
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                const Integer& w = (*r.witness)[k];
                sum += coeffs[k] * w * w;
                bounded = bounded && abs(w) <= 200;
                nonzero = nonzero || w != 0;
            }
            c.require(sum == 0 && nonzero, "witness is not a zero");
            c.require(bounded, "witness height > 200");
        }
    });

    criterion(4, "non-represented values for x^2 + z^2 - 3w^2", 5.0, [&](Check& c) {
        QuadraticForm f = diag({1, 1, -3});
        Rational neg = find_nonrepresented(f, -1);
        Rational pos = find_nonrepresented(f, +1);
        c.require(neg < 0 && pos > 0, "wrong signs");
        for (const Rational& t : {neg, pos, Rational(-21)}) {
            const std::string name = t.get_str();
            c.require(!represents(f, t).represents, name + " represented locally");
            c.require(validate_nonrepresented(f, t).has_value(), name + " not validated");
            c.require(t.get_den() == 1, name + " not integral");
            c.require(!ternary_bruteforce(1, 1, -3, t.get_num().get_si(), 500),
                      name + " found by brute force");
        }
        // The oracle itself finds represented values.
        c.require(ternary_bruteforce(1, 1, -3, 6, 50), "oracle misses 6");
        c.require(ternary_bruteforce(1, 1, -3, -2, 50), "oracle misses -2");
    });

    criterion(5, "extension contract", 1.0, [&](Check& c) {
        FieldPtr k = Field::real_quadratic(2);
        Vector sqrt2{FieldElement(1), FieldElement(1), -generator(k)};
        std::vector<QuadraticForm> inputs{QuadraticForm::lorentzian(2), diag({1, 1, -3}),
                                          diag({1, 1, 1, 1, -1}),
                                          QuadraticForm::diagonal(std::span<const FieldElement>(sqrt2))};
        for (const auto& f : inputs) {
            ExtensionResult r = extend_form(f);
            const int n1 = static_cast<int>(f.dimension());
            c.require(is_admissible(r.g), "output not admissible");
            c.require(signature(r.g) == Signature{n1, 1}, "output signature");
            c.require(r.that.transpose() * r.g_scaled.gram() * r.that == r.g0.gram(), "congruence identity");
            if (r.extension_case == ExtensionCase::anisotropic_ternary) {
                c.require(r.output_isotropic == false, "anisotropic input gave isotropic output");
                std::vector<long> coeffs;
                for (const auto& x : diagonal_of(r.g)) {
                    coeffs.push_back(x.get_num().get_si());
                }
                c.require(!oracle::isotropic_bruteforce(coeffs, 25), "brute force zero of output");
            }
        }
    });

    criterion(6, "isometry lift on O+(J_2, Z)", 1.0, [&](Check& c) {
        std::mt19937_64 rng(6);
        QuadraticForm j2 = QuadraticForm::lorentzian(2);
        ExtensionResult r = extend_form(j2);
        for (int i = 0; i < 100; ++i) {
            Matrix a = random_o_plus_j2(rng, 1 + i % 7);
            Matrix b = random_o_plus_j2(rng, 1 + (i * 5) % 6);
            Matrix la = lift_isometry(a, j2, r.g);
            c.require(la.determinant() == FieldElement(1), "det != 1");
            c.require(la.transpose() * r.g.gram() * la == r.g.gram(), "not invariant");
            c.require(preserves_positive_sheet(la, r.g), "sheet swapped");
            c.require(lift_isometry(a * b, j2, r.g) == la * lift_isometry(b, j2, r.g), "not a homomorphism");
        }
    });

    criterion(7, "PSL(2, Q(i)) -> SO+(x0 x1 + x2^2 + x3^2)", 10.0, [&](Check& c) {
        std::mt19937_64 rng(7);
        QuadraticForm f = bianchi_form();
        const Matrix& gram = f.gram();
        auto check_element = [&](const MoebiusElement& a) {
            Matrix y = psl2_to_so13(a);
            c.require(y.transpose() * gram * y == gram, "not invariant");
            c.require(y.determinant() == FieldElement(1), "det != 1");
            c.require(preserves_positive_sheet(y, f), "sheet swapped");
            c.require(psl2_to_so13(a.negated()) == y, "Phi(-A) != Phi(A)");
            return y;
        };
        for (int i = 0; i < 500; ++i) {
            MoebiusElement a = random_sl2_gaussian(rng);
            MoebiusElement b = random_sl2_gaussian(rng);
            Matrix ya = check_element(a);
            c.require(psl2_to_so13(a * b) == ya * psl2_to_so13(b), "not a homomorphism");
        }
        const FieldElement i = gaussian(0, 1);
        std::vector<MoebiusElement> gens{{1, 1, 0, 1}, {1, i, 0, 1}, {0, 1, -1, 0}, {i, 0, 0, -i}};
        for (const auto& a : gens) {
            c.require(integral(check_element(a)), "generator image not integral");
            for (const auto& b : gens) {
                Matrix yab = psl2_to_so13(a * b);
                c.require(yab == psl2_to_so13(a) * psl2_to_so13(b), "not a homomorphism on generators");
                c.require(integral(yab), "product image not integral");
            }
        }
    });

    criterion(8, "tau certificate and squares in SO+(f, Q)", 5.0, [&](Check& c) {
        const FieldElement pi = gaussian(2, 1);
        TauEntryCertificate cert = tau_entry_certificate(pi);
        c.require(cert.norm == 5, "norm != 5");
        c.require(cert.entry_squared == Rational(1, 5), "entry^2 != 1/5");
        c.require(!cert.rational_square, "1/5 flagged as a rational square");
        c.require(!oracle::is_perfect_square(5), "oracle: 5 is a square");
        std::vector<MoebiusElement> gens = gamma0_samples(pi);
        gens.push_back(bianchi_tau(pi));
        auto samples = mod2_squares_sample(gens, 2);
        c.require(!samples.empty(), "no samples");
        for (const auto& s : samples) {
            c.require(s.image_rational && s.image.has_value(), "image not rational");
            c.require(s.image_in_so_plus, "image not in SO+");
        }
    });

    criterion(9, "tau_n conjugation and the SL(3) obstruction", 1.0, [&](Check& c) {
        std::mt19937_64 rng(9);
        std::vector<MoebiusElement> gens{{1, 1, 0, 1}, {1, 0, 5, 1}, {-1, 0, 0, -1}};
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        std::uniform_int_distribution<int> flip(0, 1);
        for (int i = 0; i < 20; ++i) {
            MoebiusElement g = MoebiusElement::identity();
            for (int k = 0; k < 6; ++k) {
                const auto& x = gens[pick(rng)];
                g = g * (flip(rng) ? x.inverse() : x);
            }
            TauConjugate t = tau_conjugate(g, 5);
            c.require(t.paths_agree, "closed form differs from direct product");
            c.require(t.member, "conjugate left Gamma_0(5)");
        }
        Sl3Obstruction o = sl3_obstruction(2, 1);
        c.require(o.entry_23 == -generator(Field::real_quadratic(2)), "(2,3)-entry != -sqrt 2");
        c.require(!o.integral, "flagged integral");
    });

    criterion(10, "property suites", 60.0, [&](Check& c) {
        std::mt19937_64 rng(10);
        for (int i = 0; i < 1000; ++i) {
            Rational a = random_nonzero(rng, 500);
            Rational b = random_nonzero(rng, 500);
            std::vector<Rational> ab{a, b};
            int product = 1;
            for (const auto& v : relevant_places(ab)) {
                product *= hilbert_symbol(a, b, v);
            }
            c.require(product == 1, "reciprocity fails");
        }
        std::uniform_int_distribution<int> rank(1, 5);
        std::uniform_int_distribution<long> entry(-9, 9);
        for (int i = 0; i < 200;) {
            const int n = rank(rng);
            Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
                for (int s = r; s < n; ++s) {
                    FieldElement x(entry(rng));
                    m(r, s) = x;
                    m(s, r) = x;
                }
            }
            if (m.determinant().is_zero()) {
                continue;
            }
            ++i;
            QuadraticForm f(m);
            auto d1 = diagonalize(f).rational_coeffs();
            auto d2 = diagonalize(f, &rng).rational_coeffs();
            c.require(discriminant_class(d1) == discriminant_class(d2), "disc changed");
            std::vector<Rational> all = d1;
            all.insert(all.end(), d2.begin(), d2.end());
            for (const auto& v : relevant_places(all)) {
                c.require(hasse_invariant(d1, v) == hasse_invariant(d2, v), "hasse changed at " + v.to_string());
            }
        }
        std::uniform_int_distribution<long> coeff(-15, 15);
        for (int i = 0; i < 200;) {
            std::vector<Rational> cs;
            while (cs.size() < 3) {
                long x = coeff(rng);
                if (x != 0) {
                    cs.emplace_back(x);
                }
            }
            long q = coeff(rng);
            if (q == 0) {
                continue;
            }
            ++i;
            QuadraticForm f = QuadraticForm::diagonal(std::span<const Rational>(cs));
            bool direct = represents(f, q, {.search_witness = false}).represents;
            std::vector<Rational> ext = cs;
            ext.emplace_back(-q);
            bool via = is_isotropic_global(QuadraticForm::diagonal(std::span<const Rational>(ext)),
                                           {.search_witness = false})
                           .isotropic;
            c.require(direct == via, "represents disagrees with isotropy of f + <-q>");
        }
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
