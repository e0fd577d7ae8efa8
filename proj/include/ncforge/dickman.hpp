#pragma once

namespace ncforge {

// Dickman's function: rho(u) = 1 on [0,1], u rho'(u) = -rho(u - 1) for u > 1.
// Absolute error below 1e-9 for u <= 20. Returns 0 (with a diagnostic on
// stderr) for u > 500; throws DomainError for u < 0.
double dickman_rho(double u);

}  // namespace ncforge
