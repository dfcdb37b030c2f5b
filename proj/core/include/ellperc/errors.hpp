#pragma once

#include <stdexcept>
#include <string>

namespace ellperc {

/// Base of every error the library throws.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated. The message names the
/// precondition and the offending parameter.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The expected number of grains hitting a window is infinite for the
/// requested law (ellipses with tail exponent <= 1, disks with <= 2).
class InfiniteIntensity : public Error {
  public:
    using Error::Error;
};

/// A rejection sampler fell below its acceptance floor.
class RejectionStall : public Error {
  public:
    using Error::Error;
};

/// Adaptive quadrature could not reach its tolerance within the interval cap.
class QuadratureError : public Error {
  public:
    using Error::Error;
};

/// A configured memory or work budget would be exceeded.
class ResourceLimit : public Error {
  public:
    using Error::Error;
};

}  // namespace ellperc
