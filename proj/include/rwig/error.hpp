#pragma once

#include <stdexcept>
#include <string>

namespace rwig {

/// Bad input: malformed files, violated preconditions, unsupported sizes.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two routes that must agree did not. Signals a bug rather than bad input.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rwig
