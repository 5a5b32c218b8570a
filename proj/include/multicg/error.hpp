#ifndef MULTICG_ERROR_HPP_
#define MULTICG_ERROR_HPP_

#include <stdexcept>

namespace multicg {

// Bad or missing input data. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values or a failed solve. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multicg

#endif  // MULTICG_ERROR_HPP_
