#pragma once

#include <stdexcept>
#include <string>

namespace byzsgd {

// Invalid parameters or mismatched dimensions. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unreadable dataset files. Maps to CLI exit code 2.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not defined for the selected loss model.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace byzsgd
