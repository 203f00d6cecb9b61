#pragma once

// Arbitrary-precision reference evaluations (MPFR), used only by tests.
// These deliberately take a different mathematical route than the library:
// the Erlang/Poisson CDF goes through the regularized incomplete gamma
// function, the hop success probability through high-precision erfc.

namespace v2vq::oracle {

// Regularized lower incomplete gamma P(a, x) = 1 - Gamma(a,x)/Gamma(a),
// evaluated at 2048-bit precision.
double reg_lower_gamma(double a, double x);

// erf(x) at 1024-bit precision.
double erf_hp(double x);

// 0.5 * erfc(-eta / (sqrt(2) * sigma)) at 1024-bit precision.
double hop_success(double eta_db, double sigma_db);

// Poisson pmf lambda^n e^-lambda / n! at 1024-bit precision.
double poisson_pmf(unsigned n, double lambda);

} // namespace v2vq::oracle
