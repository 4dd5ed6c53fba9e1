#pragma once

#include <stdexcept>
#include <string>

namespace hyperclass {

/// Base class for every error raised by the library. `kind()` is the stable
/// machine-readable tag used by the CLI's structured error output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// An argument lies outside the domain of the function.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

/// An index lies outside the representable range (e.g. past the last slope).
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error("range_error", what) {}
};

/// A malformed or inconsistent argument (bad type tag, unparsable string).
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error("argument_error", what) {}
};

/// A computed result contradicts a proven identity or an independent oracle.
/// Always indicates an implementation bug, never a data condition.
class TheoremViolation : public Error {
public:
    explicit TheoremViolation(const std::string& what) : Error("theorem_violation", what) {}
    TheoremViolation(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

/// The continuity construction produced a junction gap above tolerance.
class ConstructionFailure : public TheoremViolation {
public:
    ConstructionFailure(const std::string& what, long k0)
        : TheoremViolation("construction_failure", what), k0_(k0) {}

    long k0() const noexcept { return k0_; }

private:
    long k0_;
};

/// Adaptive quadrature did not reach the requested accuracy.
class QuadratureError : public Error {
public:
    explicit QuadratureError(const std::string& what) : Error("quadrature_error", what) {}
};

}  // namespace hyperclass
