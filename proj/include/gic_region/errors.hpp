#pragma once

#include <stdexcept>
#include <string>

namespace gic {

/// Invalid channel parameters, power splits or command options.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested quantity does not exist for this channel regime
/// (e.g. sum-rate front queried with P1 < T1).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root finder failed to bracket or converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gic
