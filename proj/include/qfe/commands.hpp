#pragma once

// Command dispatch shared by the CLI and `verify`.
//
// A certificate is
//   {"schema_version": "1", "command", "inputs", "verdicts", "witnesses",
//    "places_checked", "provenance": {"timestamp", "version"}}
// and its mathematical payload is everything except provenance (and the
// side-channel "catalog" block of catalog commands). run_command recomputes
// the payload from the inputs alone.

#include "qfe/errors.hpp"
#include "qfe/io.hpp"

#include <stdexcept>
#include <string>

namespace qfe::cli {

using Json = io::Json;

inline constexpr const char* kSchemaVersion = "1";

/// Raised for certificates whose schema_version this build cannot read.
class UnsupportedSchema : public ParseError {
public:
    using ParseError::ParseError;
};

/// A recomputed or checked verdict disagrees with a stored one.
class MismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"verdicts", "witnesses", "places_checked"} for `command` applied to
/// `inputs`. Throws ParseError for unknown commands or malformed inputs.
Json run_command(const std::string& command, const Json& inputs);

Json provenance();

/// Wraps a payload from run_command into a full certificate.
Json make_certificate(const std::string& command, const Json& inputs, const Json& payload);

struct VerifyOutcome {
    bool ok = false;
    /// JSON patch from the stored payload to the recomputed one.
    Json diff;
};

/// Recomputes the payload of a certificate and compares it exactly.
/// Throws UnsupportedSchema for an unknown schema_version.
VerifyOutcome verify_certificate(const Json& certificate);

} // namespace qfe::cli
