#pragma once

#include <stdexcept>
#include <string>

namespace qfe {

/// Input outside an operation's mathematical domain (zero where a unit is
/// required, non-prime place, non-square-free modulus, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated a documented precondition (non-admissible form,
/// non-isometry passed to a group-element routine, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The field descriptor is outside what an operation supports. Only Q,
/// real quadratic fields Q(sqrt d), Q(i) and one quadratic layer over Q(i)
/// exist in this library; totally real fields of degree > 2 are not modelled.
class UnsupportedField : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gram matrix is singular.
class RankDeficient : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed JSON input or certificate.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qfe
