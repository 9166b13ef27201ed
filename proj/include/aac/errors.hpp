#pragma once

#include <stdexcept>
#include <string>

namespace aac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class SingularGain : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class WrongScenarioKind : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A derivative evaluation produced NaN/Inf. Carries the time of the
/// offending sub-evaluation.
class NonFiniteDerivative : public Error {
public:
    NonFiniteDerivative(const std::string& msg, double t) : Error(msg), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

/// Integrated state left the finite domain.
class NonFinite : public Error {
public:
    NonFinite(const std::string& msg, double t) : Error(msg), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

/// Adaptation state exceeded its configured hard cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& msg, double t) : Error(msg), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

}  // namespace aac
