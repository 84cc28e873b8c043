#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperroot {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is not a generalized Cartan matrix (bad diagonal, positive
// off-diagonal entry, or asymmetric zero pattern).
struct NotGCMError : Error {
    using Error::Error;
};

// An operation needed the invariant bilinear form but no symmetrizer exists.
struct NotSymmetrizableError : Error {
    using Error::Error;
};

// extend/overextend applied to input of the wrong type.
struct WrongTypeError : Error {
    using Error::Error;
};

// A valid input outside an operation's domain (vector not in Q+, decomposable
// matrix fed to an engine, bound parameter out of range, ...).
struct DomainError : Error {
    using Error::Error;
};

// Bound argument 1 - (a|a)/2 is not a nonnegative integer.
struct OddNormError : Error {
    using Error::Error;
};

// Niemann's bound asked for an algebra it is not defined on.
struct WrongAlgebraError : Error {
    using Error::Error;
};

// The recursion hit (b|b) - 2(rho|b) = 0 at a root, where the multiplicity
// cannot be solved for.  Carries the offending coordinates.
struct DegenerateDivisorError : Error {
    std::vector<long long> at;
    DegenerateDivisorError(const std::string& msg, std::vector<long long> coords)
        : Error(msg), at(std::move(coords)) {}
};

// Internal consistency failure: a quantity that must be a nonnegative integer
// came out otherwise.  Always a bug or corrupted state, never user error.
struct IntegralityError : Error {
    using Error::Error;
};

struct CacheError : Error {
    using Error::Error;
};

}  // namespace hyperroot
