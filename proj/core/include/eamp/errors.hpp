#pragma once

#include <stdexcept>
#include <string>

namespace eamp {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonFinite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidThreshold : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidFraction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroSignal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularSubmatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eamp
