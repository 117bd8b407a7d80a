#pragma once

#include <stdexcept>
#include <string>

namespace sleeptop {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// vee() applied to a matrix that is not antisymmetric within tolerance.
struct not_antisymmetric final : error {
  using error::error;
};

/// Physical parameters or command options violate a stated invariant.
struct invalid_parameters final : error {
  using error::error;
};

/// An integrator stage produced non-finite values or failed to converge.
struct step_rejected final : error {
  using error::error;
};

}  // namespace sleeptop
