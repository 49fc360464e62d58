#pragma once

#include <stdexcept>
#include <string>

namespace ramix {

// Error categories map onto CLI exit codes: config_error -> 1,
// data_error -> 2, numeric_error -> 3.

struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct data_error : std::runtime_error {
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ramix
