#pragma once

#include <stdexcept>
#include <string>

namespace zdim {

// Malformed user input: bad tables, bad matrix text, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or search would exceed its configured cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zdim
