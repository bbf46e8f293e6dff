#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tcdirac {

// Scalar type of the whole pipeline. 64-bit IEEE is the baseline; switching
// this typedef (e.g. to a compensated double-double type) upgrades every
// module at once.
using Real = double;

using Index = std::int64_t;

// CODATA 2018 inverse fine-structure constant.
inline constexpr Real kAlphaCodata2018 = 1.0 / 137.035999084;

// Errors ---------------------------------------------------------------

struct invalid_parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct branch_domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation exactly on top of a nucleus.
struct singular_point_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct assembly_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct insufficient_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tcdirac
