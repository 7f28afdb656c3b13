#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Invalid or inconsistent inputs (bad shapes, out-of-range parameters, malformed configs).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative scheme failed to converge or lost too much precision to continue.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A measure turned out not to be supported on the half-line / unit interval
// required by the requested decomposition.
class support_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmt
