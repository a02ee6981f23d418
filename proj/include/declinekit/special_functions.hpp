#pragma once

namespace declinekit {

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x, by bisection; exact endpoints for p in {0, 1}.
double incomplete_beta_inv(double a, double b, double p);

}  // namespace declinekit
