#pragma once

#include <stdexcept>
#include <string>

namespace maclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define MACLAB_DECLARE_ERROR(Name)                                  \
  class Name : public Error {                                       \
  public:                                                           \
    explicit Name(const std::string& what) : Error(what) {}         \
    const char* kind() const noexcept override { return #Name; }    \
  };

MACLAB_DECLARE_ERROR(UnsupportedCartanType)
MACLAB_DECLARE_ERROR(DimensionError)
MACLAB_DECLARE_ERROR(DominanceError)
MACLAB_DECLARE_ERROR(SymmetryError)
MACLAB_DECLARE_ERROR(NotAUnit)
MACLAB_DECLARE_ERROR(DomainError)
MACLAB_DECLARE_ERROR(FlipPairingError)
MACLAB_DECLARE_ERROR(SupportError)
MACLAB_DECLARE_ERROR(CapacityError)
MACLAB_DECLARE_ERROR(NotAComplex)
MACLAB_DECLARE_ERROR(OperatorDomainError)
MACLAB_DECLARE_ERROR(DegreeError)
MACLAB_DECLARE_ERROR(LacingError)
MACLAB_DECLARE_ERROR(OverflowError)
MACLAB_DECLARE_ERROR(UsageError)

#undef MACLAB_DECLARE_ERROR

} // namespace maclab
