#pragma once

#include <stdexcept>
#include <string>

namespace refgp {

// Base class for all library failures.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration or data (bad flags, malformed CSV,
// inconsistent dimensions).  CLI maps this to exit code 2.
class config_error : public error {
 public:
  using error::error;
};

// Numerical failure at run time (factorization breakdown, optimizer failure,
// degenerate geometry).  CLI maps this to exit code 3.
class numeric_error : public error {
 public:
  using error::error;
};

}  // namespace refgp
