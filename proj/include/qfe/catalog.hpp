#pragma once

// Append-only JSON-lines catalog of rational forms, grouped by their
// equivalence fingerprint, plus extension edges f -> g.
//
// Record types:
//   {"type": "form", "key": .., "form": {..}}
//   {"type": "link", "from": .., "to": .., "q": .., "from_form": {..}, "to_form": {..}}

#include "qfe/io.hpp"

#include <stdexcept>
#include <string>

namespace qfe::cli {

/// Two forms share a key but are not equivalent: the key is incomplete.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "rank=R;sig=P,M;disc=D;eps-=p1,p2" with the places where the Hasse
/// invariant is -1. Rational forms only.
std::string catalog_key(const QuadraticForm& f);

class Catalog {
public:
    explicit Catalog(std::string path);

    /// $QFE_CATALOG, or "qfe_catalog.jsonl" in the working directory.
    static std::string default_path();

    const std::string& path() const { return path_; }

    /// Stores f under its key. Throws IntegrityError if a stored form with
    /// the same key is not equivalent to f.
    io::Json add(const QuadraticForm& f);
    /// Stored forms in the class of f and the edges touching that class.
    io::Json query(const QuadraticForm& f) const;
    /// Records f -> g with coefficient q, adding both forms.
    io::Json link(const QuadraticForm& f, const QuadraticForm& g, const FieldElement& q);

private:
    std::vector<io::Json> read_records() const;
    io::Json add_locked(const QuadraticForm& f, std::vector<io::Json>& records, int fd);

    std::string path_;
};

} // namespace qfe::cli
