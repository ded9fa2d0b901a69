#pragma once

namespace rspa {

/// Lower branch W_{-1} of the Lambert W function on [-1/e, 0).
/// Returns the unique w <= -1 with w*exp(w) = x; |w*exp(w) - x| <= 1e-12.
/// Throws std::domain_error outside [-1/e, 0).
double lambert_w_minus1(double x);

}  // namespace rspa
