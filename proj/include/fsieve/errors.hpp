#pragma once

#include <stdexcept>

namespace fsieve {

// Error taxonomy mirrors the CLI exit codes: schema problems exit 2,
// data-consistency problems exit 3, configuration problems exit 4.

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fsieve
