#pragma once

#include <stdexcept>
#include <string>

namespace tidehaz {

/// Malformed input data or a record/pattern that cannot support the
/// requested computation. Argument precondition violations throw
/// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tidehaz
