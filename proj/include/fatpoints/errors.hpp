#pragma once

#include <stdexcept>
#include <string>

namespace fatpoints {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (point files, rational literals).
struct ParseError : Error {
  using Error::Error;
};

/// A precondition on caller-supplied values was violated.
struct InvalidInput : Error {
  using Error::Error;
};

/// The modulus is unusable: not an admissible prime, or a matrix entry
/// has a denominator divisible by it.
struct BadPrime : Error {
  using Error::Error;
};

/// A chart pivot coordinate vanishes at the point being normalized.
struct ChartInvalid : Error {
  using Error::Error;
};

/// The requested divisor class has no sections.
struct NotEffective : Error {
  using Error::Error;
};

/// The plane point coincides with the blow-up center.
struct CenterPoint : Error {
  using Error::Error;
};

/// A randomized generator drew values violating general position;
/// callers retry with a fresh seed.
struct DegenerateSeed : Error {
  using Error::Error;
};

/// Two input points coincide up to torus rescaling.
struct DuplicatePoint : Error {
  using Error::Error;
};

}  // namespace fatpoints
