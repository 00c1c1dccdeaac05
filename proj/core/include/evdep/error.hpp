#pragma once

#include <stdexcept>
#include <string>

namespace evdep {

// Malformed or inconsistent input data: non-finite entries, bad CSV, ties
// where a continuous sample is required.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that cannot produce a meaningful number, e.g. a zero
// jackknife variance or a bootstrap with identical replicates.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evdep
