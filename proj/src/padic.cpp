#include "qfe/padic.hpp"

#include "qfe/errors.hpp"

#include <cctype>

namespace qfe {

Place Place::prime(const Integer& p)
{
    if (p < 2 || !is_prime(p)) {
        throw DomainError("place must be a positive prime, got " + p.get_str());
    }
    Place place;
    place.p_ = p;
    return place;
}

std::string Place::to_string() const
{
    return is_infinite() ? std::string("inf") : p_.get_str();
}

Place Place::parse(std::string_view text)
{
    if (text == "inf" || text == "infinity" || text == "oo") {
        return infinity();
    }
    Integer p;
    if (text.empty() || p.set_str(std::string(text), 10) != 0) {
        throw ParseError("bad place '" + std::string(text) + "'");
    }
    return prime(p);
}

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    // Accept a leading '+' and the unicode minus sign.
    if (s.rfind("\xE2\x88\x92", 0) == 0) {
        s.replace(0, 3, "-");
    }
    if (!s.empty() && s[0] == '+') {
        s.erase(0, 1);
    }
    auto slash = s.find('/');
    Integer num;
    Integer den = 1;
    std::string num_text = s.substr(0, slash);
    if (num_text.empty() || num.set_str(num_text, 10) != 0) {
        throw ParseError("bad rational '" + std::string(text) + "'");
    }
    if (slash != std::string::npos) {
        std::string den_text = s.substr(slash + 1);
        if (den_text.empty() || den_text[0] == '-' || den.set_str(den_text, 10) != 0) {
            throw ParseError("bad rational '" + std::string(text) + "'");
        }
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_prime(const Integer& n)
{
    if (n < 2) {
        return false;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n)
{
    if (n == 0) {
        throw DomainError("factorize: zero");
    }
    std::vector<std::pair<Integer, unsigned>> out;
    Integer m = abs(n);
    auto pull = [&](const Integer& p) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        if (e > 0) {
            out.emplace_back(p, e);
        }
    };
    pull(Integer(2));
    if (m > 1 && !is_prime(m)) {
        for (Integer p = 3; p * p <= m; p += 2) {
            if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
                pull(p);
                if (m > 1 && is_prime(m)) {
                    break;
                }
            }
        }
    }
    if (m > 1) {
        out.emplace_back(m, 1);
    }
    return out;
}

Integer squarefree_part(const Integer& n)
{
    if (n == 0) {
        throw DomainError("squarefree_part: zero");
    }
    Integer s = sgn(n) < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e % 2 == 1) {
            s *= p;
        }
    }
    return s;
}

bool is_squarefree(const Integer& n)
{
    if (n == 0) {
        return false;
    }
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) {
            return false;
        }
    }
    return true;
}

int legendre(const Integer& a, const Integer& p)
{
    Integer r = a % p;
    if (r < 0) {
        r += p;
    }
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

SquarefreeDecomposition squarefree_decompose(const Rational& r)
{
    if (r == 0) {
        throw DomainError("squarefree_decompose: zero has no square class");
    }
    // r = n/d = (n*d) / d^2, so the class of r is the class of n*d.
    Integer nd = r.get_num() * r.get_den();
    Integer s = squarefree_part(nd);
    Rational t2 = r / Rational(s);
    auto t = rational_sqrt(t2);
    return {s, *t};
}

std::pair<long, Rational> padic_split(const Rational& r, const Integer& p)
{
    if (r == 0) {
        throw DomainError("p-adic valuation of zero is not represented");
    }
    long v = 0;
    Integer num = r.get_num();
    Integer den = r.get_den();
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    Rational u(num, den);
    u.canonicalize();
    return {v, u};
}

long padic_valuation(const Rational& r, const Integer& p)
{
    return padic_split(r, p).first;
}

Integer unit_residue(const Rational& u, const Integer& m)
{
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
        throw DomainError("unit_residue: denominator not invertible");
    }
    Integer res = (u.get_num() * inv) % m;
    if (res < 0) {
        res += m;
    }
    return res;
}

bool is_square_in_Qp(const Rational& r, const Place& place)
{
    if (r == 0) {
        throw DomainError("is_square_in_Qp: zero");
    }
    if (place.is_infinite()) {
        return r > 0;
    }
    const Integer& p = place.p();
    auto [v, u] = padic_split(r, p);
    if (v % 2 != 0) {
        return false;
    }
    if (p == 2) {
        return unit_residue(u, Integer(8)) == 1;
    }
    return legendre(u.get_num(), p) * legendre(u.get_den(), p) == 1;
}

std::optional<Rational> rational_sqrt(const Rational& r)
{
    if (r < 0) {
        return std::nullopt;
    }
    if (!mpz_perfect_square_p(r.get_num().get_mpz_t())
        || !mpz_perfect_square_p(r.get_den().get_mpz_t())) {
        return std::nullopt;
    }
    Rational out(sqrt(r.get_num()), sqrt(r.get_den()));
    out.canonicalize();
    return out;
}

bool is_square_in_Q(const Rational& r)
{
    return rational_sqrt(r).has_value();
}

int sign(const Rational& r)
{
    return sgn(r);
}

} // namespace qfe
