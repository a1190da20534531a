#pragma once

#include <stdexcept>
#include <string>

namespace spintangle {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

// A density matrix or state failed its invariants (trace, hermiticity, positivity).
class InvalidState : public Error {
public:
    using Error::Error;
};

class InvalidOrbit : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

// A numerical invariant that must hold by construction was violated.
class NumericalViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace spintangle
