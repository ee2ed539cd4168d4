#pragma once

#include <stdexcept>
#include <string>

namespace nearplane {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice parameters outside 1 <= rho, 0 < rho*cos(theta) < 1/2.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A point or coordinate outside the zero-centered Babai cell.
class OutOfCell : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A formula needs a non-empty interval (L1 > 0) that is empty.
class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

/// Rate budget smaller than the rate of the coarsest quantizer.
class BudgetTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace nearplane
