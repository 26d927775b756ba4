#pragma once

#include <complex>
#include <cstdint>

#include "smoothcircle/primes.hpp"

namespace smoothcircle {

// Euler's constant to 16 digits.
inline constexpr double kEulerGamma = 0.5772156649015329;

struct PrimeSumReport {
    double x = 0;
    double value = 0;
    double main_term = 0;
    double deviation = 0;  // value - main_term
};

// Sum of log p over p <= x.
double theta(const PrimeTable& table, std::uint64_t x);
// Sum of chi_4(p) log p over p <= x.
double theta_chi4(const PrimeTable& table, std::uint64_t x);

// Sum over p <= x of (chi_4(p) if twist) log p / p^sigma against the integral of
// u^-sigma over [1, x] (0 when twisted). Requires 0 <= sigma <= 1 + c/log x.
PrimeSumReport weighted_prime_sum(const PrimeTable& table, std::uint64_t x, double sigma, bool twist,
                                  double c = 2.0);

// prod_{p <= x} (1 - 1/p)^-1 (1 - chi_4(p)/p)^-1 against (pi/4) e^gamma log x.
PrimeSumReport mertens_product(const PrimeTable& table, std::uint64_t x);

struct LambdaSum {
    std::complex<double> value;
    std::complex<double> main_term;  // y^(beta - it) / (beta - it)
};

// Sum over n <= y of Lambda(n) (chi_4(n) if twist) / n^s with s = 1 - beta + it.
LambdaSum lambda_partial_sum(const PrimeTable& table, std::uint64_t y, double beta, double t, bool twist);

struct LambdaCosSum {
    double value = 0;
    // (y^beta / beta)(1 - beta cos(eta) / sqrt(beta^2 + t^2)), eta = t log y - atan(t / beta);
    // the real part of the untwisted Lambda-sum main term, so it vanishes at t = 0
    double main_term = 0;
};

// Sum over n <= y of Lambda(n)(1 + chi_4(n)) n^(beta-1) (1 - cos(t log n)).
LambdaCosSum lambda_cos_sum(const PrimeTable& table, std::uint64_t y, double beta, double t);

}  // namespace smoothcircle
