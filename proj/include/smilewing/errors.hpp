#pragma once

#include <stdexcept>
#include <string>

namespace smilewing {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructor or configuration argument violated its documented constraint.
/// The message names the violated constraint.
class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

/// An evaluation was requested outside a function's mathematical domain
/// (strip violation, explosion point reached, arbitrage bound breached).
class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& what) : Error(what) {}
};

/// A numerical procedure failed to converge or produced an unusable result
/// (quadrature non-convergence, root bracketing failure).
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what) : Error(what) {}
};

} // namespace smilewing
