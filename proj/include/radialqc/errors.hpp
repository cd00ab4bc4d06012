#pragma once

#include <stdexcept>
#include <string>

namespace radialqc {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Pointwise distortion requested at a breakpoint, where the map has no derivative.
class NotDifferentiableError : public std::domain_error {
 public:
  explicit NotDifferentiableError(const std::string& what) : std::domain_error(what) {}
};

/// The target value of the intermediate-value sampler is not bracketed.
class NoBracketError : public std::domain_error {
 public:
  explicit NoBracketError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace radialqc
