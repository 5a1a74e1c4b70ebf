#pragma once

#include <stdexcept>
#include <string>

namespace confspace {

// Root of the library's exception hierarchy. Every failure that a caller can
// act on derives from this, so the CLI can map them onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition did not hold (nonpositive radicand in the scale
// factor, det g >= 0, singular chart, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Iterative numerics that did not reach the requested accuracy.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace confspace
