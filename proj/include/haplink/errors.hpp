#pragma once

#include <stdexcept>
#include <string>

namespace haplink {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical input lies outside the model's domain (negative visibility,
/// elevation outside (0, 90], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Degenerate optical configuration (e.g. f1 + f2 - d = 0).
class SingularConfigError : public Error {
public:
    using Error::Error;
};

/// Table lookup for a key that has no entry.
class MissingEntryError : public Error {
public:
    using Error::Error;
};

/// Scenario / configuration problem: parse failure, unknown key, or an
/// invariant violation. The message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace haplink
