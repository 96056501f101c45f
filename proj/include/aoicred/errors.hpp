#pragma once

#include <stdexcept>
#include <string>

namespace aoicred {

// Error hierarchy mapped to CLI exit codes:
//   config_error    -> 2  (bad flags, malformed config file)
//   infeasible_error-> 3  (constraint cannot be met by any policy)
//   numerical_error -> 4  (iteration failed to converge / invalid state)
//   io_error        -> 5  (filesystem problems writing outputs)
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aoicred
