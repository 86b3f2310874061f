#pragma once

#include <stdexcept>
#include <string>

namespace histq {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotSquareError : public Error {
public:
  using Error::Error;
};

class NotHermitianError : public Error {
public:
  NotHermitianError(const std::string& what, double asymmetry)
      : Error(what), max_asymmetry(asymmetry) {}
  double max_asymmetry = 0.0;
};

class DimensionMismatchError : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class NumericalFailureError : public Error {
public:
  using Error::Error;
};

class UnknownOutcomeError : public Error {
public:
  using Error::Error;
};

class InconsistentFamilyError : public Error {
public:
  using Error::Error;
};

class ZeroConditioningEventError : public Error {
public:
  using Error::Error;
};

class NonOrthonormalBasisError : public Error {
public:
  using Error::Error;
};

class PointerMismatchError : public Error {
public:
  PointerMismatchError(const std::string& what, int image, int pointer)
      : Error(what), image_index(image), pointer_index(pointer) {}
  int image_index = -1;
  int pointer_index = -1;
};

class ClosureViolationError : public Error {
public:
  ClosureViolationError(const std::string& what, double defect)
      : Error(what), closure_defect(defect) {}
  double closure_defect = 0.0;
};

class ProbabilityDeficitError : public Error {
public:
  using Error::Error;
};

class CoarseGrainMismatchError : public Error {
public:
  using Error::Error;
};

}  // namespace histq
