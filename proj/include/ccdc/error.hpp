#pragma once

#include <stdexcept>
#include <string>

namespace ccdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a combinatorial or stage-level operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// SystemConfig violates a divisibility or range condition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bit strings of mismatched or unaligned length.
class PayloadError : public Error {
 public:
  using Error::Error;
};

// A node touched a file it does not store.
class PlacementError : public Error {
 public:
  using Error::Error;
};

// Malformed message, contribution set or shuffle state.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class IncompleteShuffleError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

}  // namespace ccdc
