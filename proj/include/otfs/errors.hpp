#pragma once

#include <stdexcept>
#include <string>

namespace otfs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Frame geometry cannot support the requested delay/Doppler spread.
class FrameTooSmall : public Error {
public:
    using Error::Error;
};

/// Configuration file is malformed or violates an invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Channel spectrum contains a (near-)zero eigenvalue; ZF is undefined.
class SingularChannel : public Error {
public:
    using Error::Error;
};

/// Characteristic function does not decay; inversion cannot be tuned.
class NonDecayingCf : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace otfs
