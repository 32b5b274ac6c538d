#pragma once

#include <stdexcept>
#include <string>

namespace tamesym {

// Base for all library errors. Everything thrown on purpose derives from this,
// so callers can distinguish "bad input" from a genuine bug (std::logic_error).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A required root or factorization does not exist over the supported ground
// field; the input would need a field extension the library does not model.
struct ExtensionRequired : Error {
    explicit ExtensionRequired(const std::string& msg) : Error(msg) {}
};

// Input exceeds a documented bound (factorization degree, unsupported ground
// field shape, malformed job data). Maps to CLI exit code 2.
struct Unsupported : Error {
    explicit Unsupported(const std::string& msg) : Error(msg) {}
};

// An internal invariant failed (e.g. a modulus advertised as irreducible
// turned out not to be during an inversion). Indicates inconsistent input.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

} // namespace tamesym
