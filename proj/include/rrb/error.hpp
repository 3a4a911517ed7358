#pragma once

#include <stdexcept>
#include <string>

namespace rrb {

/// Malformed input or a violated precondition. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace rrb
