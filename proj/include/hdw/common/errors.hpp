#pragma once

#include <stdexcept>
#include <string>

namespace hdw {

/// Invalid or inconsistent configuration. Message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor/vector dimensions do not line up.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// API called in the wrong order (e.g. backward before forward).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A physical constraint of the scenario was violated during a rollout.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdw

namespace hdw {

/// Malformed input file (metrics, checkpoints). Message carries file context.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdw
