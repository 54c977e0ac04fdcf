#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace soa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A table entry out of range or a table of the wrong length.
class InvalidMap : public Error {
  public:
    using Error::Error;
};

class CompositionError : public Error {
  public:
    using Error::Error;
};

/// Colimit input whose edges do not match its vertices, or a diagram that is
/// not functorial.
class DiagramError : public Error {
  public:
    using Error::Error;
};

/// A requested mediating map does not exist (the supplied cocone does not
/// coequalise the diagram).
class UniversalityError : public Error {
  public:
    using Error::Error;
};

/// A square whose two paths disagree.
class NonCommutingSquare : public Error {
  public:
    using Error::Error;
};

class InvalidPresentation : public Error {
  public:
    using Error::Error;
};

class SizeBudgetExceeded : public Error {
  public:
    using Error::Error;
};

/// A proposed lifting operation that does not fill its squares.
class LiftingError : public Error {
  public:
    using Error::Error;
};

/// A lifting operation whose fillers are not natural in generator squares, so
/// its cocone does not descend to the density colimit.
class NonNaturalLifting : public LiftingError {
  public:
    using LiftingError::LiftingError;
};

class ProblemMismatch : public Error {
  public:
    using Error::Error;
};

/// Raised when a chain is asked for its free algebra but has not been
/// observed to stabilise. Carries the per-stage carrier sizes.
class NotStabilised : public Error {
  public:
    struct StageSize {
        std::size_t top;
        std::size_t bot;
    };

    NotStabilised(const std::string& what, std::vector<StageSize> growth)
        : Error(what), growth_(std::move(growth)) {}

    const std::vector<StageSize>& growth() const { return growth_; }

  private:
    std::vector<StageSize> growth_;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace soa
