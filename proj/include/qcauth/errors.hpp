#pragma once

#include <stdexcept>
#include <string>

namespace qcauth {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or parameter value; messages name the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Keystream index range outside the configured stream length, or empty range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Not enough distilled key bits to refresh the shared secret.
class InsufficientMaterialError : public Error {
 public:
  using Error::Error;
};

// Two bit sequences that must have equal length do not.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// Classical messages arrived in an order the protocol does not allow.
class ProtocolViolationError : public Error {
 public:
  using Error::Error;
};

// Too little data to compute the requested statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// No closed-form QBER prediction exists for the requested attack/policy pair.
class NoPredictionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcauth
