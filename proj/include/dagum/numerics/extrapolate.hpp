#pragma once

#include <span>

namespace dagum::numerics {

struct Extrapolation {
  double value;
  double err_estimate;
};

/// Wynn's epsilon algorithm applied to a sequence ordered towards its limit.
///
/// Returns the last even-column diagonal entry together with the change
/// from the previous one.  Columns whose construction would divide by a
/// difference at rounding level are not built.
Extrapolation wynn_epsilon(std::span<const double> sequence);

}  // namespace dagum::numerics
