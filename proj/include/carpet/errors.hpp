#pragma once

#include <stdexcept>
#include <string>

namespace carpet {

// Base for every failure raised by the engine. Callers that only need a
// message can catch this; the CLI maps the concrete types to exit codes.
class CarpetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class InvalidArgument : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class DegenerateLattice : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class NotPrime : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class NonIntegralReflection : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class WrongSignature : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class ConvergenceFailure : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class DegenerateRegion : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

class FrameMismatch : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

}  // namespace carpet
