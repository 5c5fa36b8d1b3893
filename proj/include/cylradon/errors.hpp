#pragma once

#include <stdexcept>
#include <string>

namespace cylradon {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operator is defined or
/// where the supplied data provides coverage.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A semi-infinite integral was requested on a profile with no tail descriptor.
class TailError : public Error {
 public:
  using Error::Error;
};

/// Direction on the equator passed where only the ellipse parametrization applies.
class EquatorUndefined : public Error {
 public:
  using Error::Error;
};

/// Equator value requested for a field with neither a limit function nor decay.
class MissingBoundaryData : public Error {
 public:
  using Error::Error;
};

/// Null-space generator requested for an order where the operator is injective.
class NullSpaceEmpty : public Error {
 public:
  using Error::Error;
};

/// The dual transform is only defined on even sphere fields.
class OddInputError : public Error {
 public:
  using Error::Error;
};

/// Kernel growth near the origin overwhelms the quadrature of an inversion integral.
class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace cylradon
