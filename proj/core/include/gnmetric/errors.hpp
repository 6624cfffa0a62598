#pragma once

#include <stdexcept>
#include <string>

namespace gnmetric {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data: bad distance matrices, arity
/// mismatches, out-of-range parameters, points that do not belong to the
/// space they are used with. Maps to a usage/config failure at the CLI.
class validation_error : public error {
public:
  using error::error;
};

/// A solver or estimator hypothesis failed at runtime: non-commuting map
/// pair, preimage residual breach, an estimate with no usable denominator.
class hypothesis_error : public error {
public:
  using error::error;
};

}  // namespace gnmetric
