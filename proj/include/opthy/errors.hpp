#pragma once

#include <stdexcept>
#include <string>

namespace opthy {

/// Structural problem with a value being constructed (non-normalized mass,
/// broken downward closure, zero denominator, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reference to a measurement, preparation, outcome or variable that does
/// not exist.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A precondition of an analysis is not met (disturbing input to
/// trivialization, missing conjunction for a correlator, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace opthy
