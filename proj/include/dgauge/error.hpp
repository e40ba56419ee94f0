#pragma once

#include <stdexcept>
#include <string>

namespace dgauge {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A shift or path leaves the lattice along an open axis, or a periodic-only
// operation was handed a lattice with open axes.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

// Lattices, fiber dimensions or matrix shapes of two operands disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be invertible (link transport, gauge element) is not.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Wrong form degree for the requested operation.
class DegreeError : public Error {
 public:
  using Error::Error;
};

// Invalid argument combination (e.g. non-Abelian input to an Abelian-only
// routine, malformed path).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Config file problems. Subclasses give each diagnostic its own type.
class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncationError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ConsistencyError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace dgauge
