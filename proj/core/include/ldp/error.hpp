#pragma once

#include <stdexcept>
#include <string>

namespace ldp {

/// Root of every error raised by the framework.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Component or site index outside the field it addresses.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Mismatched descriptors, mask lengths, array dimensions or input lengths.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid framework configuration (zero VVL, zero workers, bad backend name).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Target arena could not satisfy an allocation.
class AllocationError : public Error {
 public:
  using Error::Error;
};

/// Use of a buffer outside its malloc/free window, or freeing it mid-launch.
class LifecycleError : public Error {
 public:
  using Error::Error;
};

/// Copy or constant update issued while a launch is in flight.
class ConcurrencyError : public Error {
 public:
  using Error::Error;
};

/// Constant key re-set with a different type or shape.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Launch plan inconsistent with itself or with its bound buffers.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// Buffer bound to a launch on a device that does not own it.
class DeviceError : public Error {
 public:
  using Error::Error;
};

/// Kernel broke the disjoint-write contract (detected by write checking).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Non-positive density encountered where a physical state is required.
class SingularStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldp
