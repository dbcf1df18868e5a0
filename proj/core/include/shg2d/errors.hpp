#pragma once

#include <stdexcept>
#include <string>

namespace shg2d {

// Base of every library error. kind() is a stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SHG2D_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

SHG2D_DECLARE_ERROR(InvalidArgument)
SHG2D_DECLARE_ERROR(NonpositiveRadius)
SHG2D_DECLARE_ERROR(InvalidMode)
SHG2D_DECLARE_ERROR(SingularGrid)
SHG2D_DECLARE_ERROR(ResolutionLoss)
SHG2D_DECLARE_ERROR(TooCloseToBoundary)
SHG2D_DECLARE_ERROR(MeanZeroViolation)
SHG2D_DECLARE_ERROR(ResonantPermittivity)
SHG2D_DECLARE_ERROR(UnsupportedRegime)
SHG2D_DECLARE_ERROR(DegenerateRelativeSymmetry)
SHG2D_DECLARE_ERROR(DegenerateFit)
SHG2D_DECLARE_ERROR(EmptySpectrum)
SHG2D_DECLARE_ERROR(ConfigError)

#undef SHG2D_DECLARE_ERROR

// Raised by the dense second-kind solves when the system is numerically
// singular (plasmon resonance proximity).
class NearSingularSystem : public Error {
 public:
  NearSingularSystem(const std::string& what, double condition_number)
      : Error("NearSingularSystem", what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

}  // namespace shg2d
