#include "qfe/localinv.hpp"

#include "qfe/errors.hpp"

namespace qfe {

SquareClass::SquareClass(const Rational& r) : rep_(squarefree_decompose(r).s) {}

SquareClass operator*(const SquareClass& x, const SquareClass& y)
{
    return SquareClass(Rational(x.rep_ * y.rep_));
}

namespace {

// (u - 1)/2 mod 2 for an odd residue u mod 8.
int epsilon(const Integer& u8)
{
    return ((u8.get_ui() - 1) / 2) % 2;
}

// (u^2 - 1)/8 mod 2 for an odd residue u mod 8.
int omega(const Integer& u8)
{
    unsigned long u = u8.get_ui();
    return ((u * u - 1) / 8) % 2;
}

int legendre_of_unit(const Rational& u, const Integer& p)
{
    return legendre(u.get_num(), p) * legendre(u.get_den(), p);
}

} // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& place)
{
    if (a == 0 || b == 0) {
        throw DomainError("hilbert_symbol: arguments must be nonzero");
    }
    if (place.is_infinite()) {
        return (a < 0 && b < 0) ? -1 : 1;
    }
    const Integer& p = place.p();
    auto [alpha, u] = padic_split(a, p);
    auto [beta, v] = padic_split(b, p);
    if (p == 2) {
        Integer u8 = unit_residue(u, Integer(8));
        Integer v8 = unit_residue(v, Integer(8));
        int e = epsilon(u8) * epsilon(v8) + (alpha & 1) * omega(v8) + (beta & 1) * omega(u8);
        return e % 2 == 0 ? 1 : -1;
    }
    // (-1)^(alpha beta eps(p)) (u/p)^beta (v/p)^alpha
    int s = 1;
    bool p_is_3_mod_4 = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3;
    if ((alpha & 1) && (beta & 1) && p_is_3_mod_4) {
        s = -s;
    }
    if (beta & 1) {
        s *= legendre_of_unit(u, p);
    }
    if (alpha & 1) {
        s *= legendre_of_unit(v, p);
    }
    return s;
}

namespace {

void require_nonzero(std::span<const Rational> coeffs)
{
    if (coeffs.empty()) {
        throw DomainError("empty coefficient list");
    }
    for (const auto& c : coeffs) {
        if (c == 0) {
            throw DomainError("zero coefficient in a diagonal form");
        }
    }
}

} // namespace

SquareClass discriminant_class(std::span<const Rational> coeffs)
{
    require_nonzero(coeffs);
    Rational d = 1;
    for (const auto& c : coeffs) {
        d *= c;
    }
    return SquareClass(d);
}

int hasse_invariant(std::span<const Rational> coeffs, const Place& place)
{
    require_nonzero(coeffs);
    int e = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = i + 1; j < coeffs.size(); ++j) {
            e *= hilbert_symbol(coeffs[i], coeffs[j], place);
        }
    }
    return e;
}

std::set<Place> relevant_places(std::span<const Rational> coeffs)
{
    require_nonzero(coeffs);
    std::set<Place> places{Place::infinity(), Place::prime(2)};
    for (const auto& c : coeffs) {
        Integer s = squarefree_decompose(c).s;
        for (const auto& [p, e] : factorize(s)) {
            places.insert(Place::prime(p));
        }
    }
    return places;
}

int InvariantProfile::hasse_at(const Place& place) const
{
    auto it = hasse.find(place);
    return it == hasse.end() ? 1 : it->second;
}

int InvariantProfile::hasse_product() const
{
    int prod = 1;
    for (const auto& [place, value] : hasse) {
        prod *= value;
    }
    return prod;
}

std::vector<Place> InvariantProfile::nontrivial_places() const
{
    std::vector<Place> out;
    for (const auto& [place, value] : hasse) {
        if (value == -1) {
            out.push_back(place);
        }
    }
    return out;
}

InvariantProfile profile_of_diagonal(std::span<const Rational> coeffs,
                                     std::span<const Place> extra_places)
{
    require_nonzero(coeffs);
    InvariantProfile prof;
    prof.rank = static_cast<int>(coeffs.size());
    Signature sig;
    for (const auto& c : coeffs) {
        (c > 0 ? sig.plus : sig.minus) += 1;
    }
    prof.signatures = {sig};
    prof.disc = discriminant_class(coeffs);
    auto places = relevant_places(coeffs);
    places.insert(extra_places.begin(), extra_places.end());
    for (const auto& place : places) {
        prof.hasse[place] = hasse_invariant(coeffs, place);
    }
    return prof;
}

} // namespace qfe
