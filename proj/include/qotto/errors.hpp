#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

// Thrown when a computation produces a non-finite intermediate (overflow or
// invalid operation), as opposed to a precondition violation which raises
// std::domain_error.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qotto
