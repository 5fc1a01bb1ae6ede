#pragma once

#include <stdexcept>
#include <string>

namespace qmob {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroDivision : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside the documented domain policy.
class BadParameter : public Error {
public:
    using Error::Error;
};

/// An evaluation point (or finite-difference stencil) leaves the unit ball.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotInvertibleAtZero : public Error {
public:
    using Error::Error;
};

/// Matrix fails the Sp(1,1) membership test.
class NotInGroup : public Error {
public:
    using Error::Error;
};

/// Matrix entries do not fit a single Sp(1)-fiber of the lift.
class InconsistentFiber : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

}  // namespace qmob
