#include "qfe/field.hpp"

#include "qfe/errors.hpp"

namespace qfe {

// --- FieldElement ---------------------------------------------------------

FieldElement::FieldElement() : q_(0) {}

FieldElement::FieldElement(Rational q) : q_(std::move(q)) {}

FieldElement::FieldElement(FieldPtr field, const FieldElement& a, const FieldElement& b)
{
    if (!field || field->height() == 0) {
        if (!b.is_zero()) {
            throw UnsupportedField("Q has no sqrt(delta) coordinate");
        }
        *this = a.lift(Field::rationals());
        return;
    }
    const FieldPtr& base = field->base();
    coords_ = {a.lift(base), b.lift(base)};
    field_ = std::move(field);
}

FieldElement FieldElement::zero(const FieldPtr& field)
{
    return FieldElement(0).lift(field);
}

FieldElement FieldElement::one(const FieldPtr& field)
{
    return FieldElement(1).lift(field);
}

FieldPtr FieldElement::field() const
{
    return field_ ? field_ : Field::rationals();
}

int FieldElement::height() const
{
    return field_ ? field_->height() : 0;
}

const Rational& FieldElement::rational() const
{
    if (height() != 0) {
        throw UnsupportedField("element " + to_string() + " is not in Q");
    }
    return q_;
}

const FieldElement& FieldElement::a() const
{
    if (coords_.empty()) {
        throw UnsupportedField("rational element has no tower coordinates");
    }
    return coords_[0];
}

const FieldElement& FieldElement::b() const
{
    if (coords_.empty()) {
        throw UnsupportedField("rational element has no tower coordinates");
    }
    return coords_[1];
}

bool FieldElement::is_zero() const
{
    if (coords_.empty()) {
        return q_ == 0;
    }
    return coords_[0].is_zero() && coords_[1].is_zero();
}

bool FieldElement::is_rational_value() const
{
    return to_rational().has_value();
}

std::optional<Rational> FieldElement::to_rational() const
{
    if (coords_.empty()) {
        return q_;
    }
    if (!coords_[1].is_zero()) {
        return std::nullopt;
    }
    return coords_[0].to_rational();
}

std::optional<FieldElement> FieldElement::lower() const
{
    if (coords_.empty() || !coords_[1].is_zero()) {
        return std::nullopt;
    }
    return coords_[0];
}

FieldElement FieldElement::lift(const FieldPtr& target) const
{
    FieldPtr own = field();
    if (same_field(own, target)) {
        return *this;
    }
    if (!target || target->height() <= height() || !target->contains(*own)) {
        throw UnsupportedField("cannot lift " + to_string() + " from " + own->to_string()
                               + " to " + (target ? target->to_string() : "Q"));
    }
    const FieldPtr& base = target->base();
    FieldElement out;
    out.field_ = target;
    out.coords_ = {lift(base), zero(base)};
    return out;
}

FieldElement FieldElement::conj() const
{
    if (coords_.empty()) {
        return *this;
    }
    FieldElement out = *this;
    out.coords_[1] = -coords_[1];
    return out;
}

FieldElement FieldElement::norm() const
{
    if (coords_.empty()) {
        return Rational(q_ * q_);
    }
    const auto& a = coords_[0];
    const auto& b = coords_[1];
    return a * a - field_->delta() * b * b;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero()) {
        throw DomainError("division by zero in " + field()->to_string());
    }
    if (coords_.empty()) {
        return Rational(1 / q_);
    }
    FieldElement n_inv = norm().inverse();
    FieldElement out = *this;
    out.coords_ = {coords_[0] * n_inv, -(coords_[1] * n_inv)};
    return out;
}

FieldElement FieldElement::operator-() const
{
    FieldElement out = *this;
    if (coords_.empty()) {
        out.q_ = -q_;
    } else {
        out.coords_ = {-coords_[0], -coords_[1]};
    }
    return out;
}

namespace {

template <class Op>
FieldElement combine(const FieldElement& x, const FieldElement& y, Op op)
{
    FieldPtr k = common_field(x.field(), y.field());
    return op(k, x.lift(k), y.lift(k));
}

} // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y)
{
    if (x.coords_.empty() && y.coords_.empty()) {
        return Rational(x.q_ + y.q_);
    }
    return combine(x, y, [](const FieldPtr& k, const FieldElement& u, const FieldElement& v) {
        return FieldElement(k, u.coords_[0] + v.coords_[0], u.coords_[1] + v.coords_[1]);
    });
}

FieldElement operator-(const FieldElement& x, const FieldElement& y)
{
    if (x.coords_.empty() && y.coords_.empty()) {
        return Rational(x.q_ - y.q_);
    }
    return combine(x, y, [](const FieldPtr& k, const FieldElement& u, const FieldElement& v) {
        return FieldElement(k, u.coords_[0] - v.coords_[0], u.coords_[1] - v.coords_[1]);
    });
}

FieldElement operator*(const FieldElement& x, const FieldElement& y)
{
    if (x.coords_.empty() && y.coords_.empty()) {
        return Rational(x.q_ * y.q_);
    }
    return combine(x, y, [](const FieldPtr& k, const FieldElement& u, const FieldElement& v) {
        const FieldElement& a = u.coords_[0];
        const FieldElement& b = u.coords_[1];
        const FieldElement& c = v.coords_[0];
        const FieldElement& d = v.coords_[1];
        return FieldElement(k, a * c + k->delta() * b * d, a * d + b * c);
    });
}

FieldElement operator/(const FieldElement& x, const FieldElement& y)
{
    return x * y.inverse();
}

bool operator==(const FieldElement& x, const FieldElement& y)
{
    if (x.coords_.empty() && y.coords_.empty()) {
        return x.q_ == y.q_;
    }
    FieldPtr k = common_field(x.field(), y.field());
    FieldElement u = x.lift(k);
    FieldElement v = y.lift(k);
    return u.coords_[0] == v.coords_[0] && u.coords_[1] == v.coords_[1];
}

std::string FieldElement::to_string() const
{
    if (coords_.empty()) {
        return format_rational(q_);
    }
    std::string root = "sqrt(" + field_->delta().to_string() + ")";
    if (coords_[1].is_zero()) {
        return coords_[0].to_string();
    }
    std::string b = coords_[1].height() == 0 ? coords_[1].to_string()
                                             : "(" + coords_[1].to_string() + ")";
    if (coords_[0].is_zero()) {
        return b + "*" + root;
    }
    std::string a = coords_[0].height() == 0 ? coords_[0].to_string()
                                             : "(" + coords_[0].to_string() + ")";
    return a + " + " + b + "*" + root;
}

// --- Field ----------------------------------------------------------------

FieldPtr Field::rationals()
{
    static const FieldPtr q = std::shared_ptr<const Field>(new Field());
    return q;
}

FieldPtr Field::real_quadratic(const Integer& d)
{
    if (d <= 1) {
        throw DomainError("real quadratic field needs d > 1, got " + d.get_str());
    }
    return extend(rationals(), FieldElement(Rational(d)));
}

FieldPtr Field::gaussian()
{
    static const FieldPtr qi = extend(rationals(), FieldElement(-1));
    return qi;
}

FieldPtr Field::extend(const FieldPtr& base, const FieldElement& delta)
{
    if (!base) {
        throw UnsupportedField("null base field");
    }
    auto field = std::shared_ptr<Field>(new Field());
    field->height_ = base->height() + 1;
    field->base_ = base;
    if (base->height() == 0) {
        auto d = delta.to_rational();
        if (!d || d->get_den() != 1) {
            throw DomainError("quadratic extension of Q needs an integer delta");
        }
        const Integer& n = d->get_num();
        if (n != -1 && (n <= 1 || !is_squarefree(n))) {
            throw DomainError("delta must be -1 or a square-free integer > 1, got " + n.get_str());
        }
        field->delta_ = FieldElement(*d);
    } else if (base->height() == 1) {
        if (!base->is_gaussian()) {
            throw UnsupportedField("height-2 towers are only supported over Q(i)");
        }
        FieldElement d = delta.lift(base);
        if (d.is_zero() || sqrt_in_field(d)) {
            throw DomainError("delta " + d.to_string() + " is a square in " + base->to_string());
        }
        field->delta_ = d;
    } else {
        throw UnsupportedField("tower height is capped at 2");
    }
    return field;
}

bool Field::is_real_quadratic() const
{
    if (height_ != 1) {
        return false;
    }
    return delta_.rational() > 0;
}

bool Field::is_gaussian() const
{
    return height_ == 1 && delta_.rational() == -1;
}

bool Field::contains(const Field& other) const
{
    if (other.height_ > height_) {
        return false;
    }
    const Field* walk = this;
    while (walk->height_ > other.height_) {
        walk = walk->base_.get();
    }
    return *walk == other;
}

FieldElement generator(const FieldPtr& field)
{
    if (!field || field->height() == 0) {
        throw UnsupportedField("Q has no generator");
    }
    return FieldElement(field, FieldElement::zero(field->base()), FieldElement::one(field->base()));
}

std::string Field::to_string() const
{
    if (height_ == 0) {
        return "Q";
    }
    return base_->to_string() + "(sqrt(" + delta_.to_string() + "))";
}

bool operator==(const Field& x, const Field& y)
{
    if (&x == &y) {
        return true;
    }
    if (x.height_ != y.height_) {
        return false;
    }
    if (x.height_ == 0) {
        return true;
    }
    return *x.base_ == *y.base_ && x.delta_ == y.delta_;
}

bool same_field(const FieldPtr& a, const FieldPtr& b)
{
    const Field& x = a ? *a : *Field::rationals();
    const Field& y = b ? *b : *Field::rationals();
    return x == y;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b)
{
    if (a->contains(*b)) {
        return a;
    }
    if (b->contains(*a)) {
        return b;
    }
    throw UnsupportedField("incompatible fields " + a->to_string() + " and " + b->to_string());
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& x)
{
    if (x.height() == 0) {
        auto r = rational_sqrt(x.rational());
        if (!r) {
            return std::nullopt;
        }
        return FieldElement(*r);
    }
    if (x.height() > 1) {
        throw UnsupportedField("sqrt_in_field: height-2 towers");
    }
    FieldPtr k = x.field();
    const Rational& d = k->delta().rational();
    const Rational& a = x.a().rational();
    const Rational& b = x.b().rational();
    auto c = rational_sqrt(a * a - d * b * b);
    if (!c) {
        return std::nullopt;
    }
    // (u + v r)^2 = u^2 + d v^2 + 2uv r, so u^2 = (a +- c)/2 when u != 0.
    for (const Rational& u2 : {Rational((a + *c) / 2), Rational((a - *c) / 2)}) {
        auto u = rational_sqrt(u2);
        if (u && *u != 0) {
            FieldElement cand(k, FieldElement(*u), FieldElement(Rational(b / (2 * *u))));
            if (cand * cand == x) {
                return cand;
            }
        }
    }
    // u = 0: x = d v^2.
    if (b == 0) {
        auto v = rational_sqrt(a / d);
        if (v) {
            return FieldElement(k, FieldElement(0), FieldElement(*v));
        }
    }
    if (x.is_zero()) {
        return x;
    }
    return std::nullopt;
}

std::pair<int, int> embedding_signs(const FieldElement& x)
{
    if (x.is_zero()) {
        throw DomainError("embedding_signs: zero has no sign");
    }
    if (x.height() == 0) {
        int s = sgn(x.rational());
        return {s, s};
    }
    if (!x.field()->is_real_quadratic()) {
        throw UnsupportedField("embedding_signs needs Q or a real quadratic field, got "
                               + x.field()->to_string());
    }
    const Rational& a = x.a().rational();
    const Rational& b = x.b().rational();
    const Rational& d = x.field()->delta().rational();
    auto sign_of = [&](const Rational& bb) {
        int sa = sgn(a);
        int sb = sgn(bb);
        if (sb == 0) {
            return sa;
        }
        if (sa == 0 || sa == sb) {
            return sb;
        }
        int c = cmp(Rational(a * a), Rational(d * bb * bb));
        return c > 0 ? sa : sb;
    };
    return {sign_of(b), sign_of(-b)};
}

int sign_at(const FieldElement& x, Embedding embedding)
{
    auto [plus, minus] = embedding_signs(x);
    return embedding == Embedding::identity ? plus : minus;
}

bool is_algebraic_integer(const FieldElement& x)
{
    if (x.height() == 0) {
        return x.rational().get_den() == 1;
    }
    if (x.height() > 1) {
        throw UnsupportedField("is_algebraic_integer: height-2 towers are not supported");
    }
    const Rational& a = x.a().rational();
    Rational trace = 2 * a;
    Rational n = x.norm().rational();
    return trace.get_den() == 1 && n.get_den() == 1;
}

std::pair<Rational, Rational> gaussian_parts(const FieldElement& x)
{
    if (x.height() == 0) {
        return {x.rational(), Rational(0)};
    }
    if (!x.field()->is_gaussian()) {
        throw UnsupportedField("expected an element of Q(i), got " + x.field()->to_string());
    }
    return {x.a().rational(), x.b().rational()};
}

FieldElement gaussian(const Rational& re, const Rational& im)
{
    return FieldElement(Field::gaussian(), FieldElement(re), FieldElement(im));
}

} // namespace qfe
