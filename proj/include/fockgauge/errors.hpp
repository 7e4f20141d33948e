#pragma once

#include <stdexcept>
#include <string>

namespace fockgauge {

// Base for every error raised by the library. Each subclass names a distinct
// failure class so callers (and the CLI exit-code mapping) can branch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested moment a^{+j} a^k with j or k above the supported order.
class OrderTooHighError : public Error {
 public:
  using Error::Error;
};

// Auto-chosen cutoff would exceed the configured ceiling.
class CutoffExplosionError : public Error {
 public:
  using Error::Error;
};

// A superposition cancelled to (numerically) nothing.
class ZeroNormError : public Error {
 public:
  using Error::Error;
};

// Moments that no physical state can have (e.g. lambda_-^2 <= 0).
class NonphysicalMomentError : public Error {
 public:
  using Error::Error;
};

// Coherent-state calibration anchors disagree.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Input violates a state invariant (hermiticity, trace, positivity).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-schema input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockgauge
