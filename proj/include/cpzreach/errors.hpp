#pragma once

#include <stdexcept>
#include <string>

namespace cpzreach {

/// Operand shapes are incompatible (ambient dimension, matrix shape, list lengths).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An evaluation was asked for a factor the assignment does not cover.
class MissingFactorError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Reshaping a vectorized constraint block would not produce a whole number of columns.
class ConvertError : public DimensionError {
 public:
  using DimensionError::DimensionError;
};

/// The stacked data matrix [X-; U-] does not have full row rank.
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No factor assignment in the unit box satisfies the set's constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reach step would exceed the configured generator ceiling.
class GeneratorLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed configuration document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpzreach
