#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

/// Raised when an operation is called outside its documented domain
/// (out-of-range exponent, coincident points where a radius is needed, ...).
class PreconditionError : public std::domain_error {
public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace grushin
