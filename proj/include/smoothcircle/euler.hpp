#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "smoothcircle/primes.hpp"

namespace smoothcircle {

// log H(s, G; y) = sum_{p <= y} -log(1 - p^-s) - log(1 - chi_4(p) p^-s),
// principal branch per factor. Requires Re s > 0.
std::complex<double> log_h(const PrimeTable& table, std::complex<double> s, std::uint64_t y);

// H(s, G; y) itself; may overflow for large y and small Re s, prefer log_h.
std::complex<double> h_value(const PrimeTable& table, std::complex<double> s, std::uint64_t y);

struct PhiDerivatives {
    double sigma = 0;
    std::uint64_t y = 0;
    double phi = 0;                // log H(sigma, G; y)
    std::array<double, 4> d{};     // phi_1 .. phi_4
    double truncation_error_bound = 0;
};

// phi and its first kmax sigma-derivatives from the prime-power series
//   phi_k = sum_p sum_nu (1 + chi_4(p)^nu) (-nu log p)^k p^(-nu sigma) / nu.
PhiDerivatives phi_derivatives(const PrimeTable& table, double sigma, std::uint64_t y, int kmax = 4);

// Closed form of phi_2 used as an independent check on the series:
//   sum_p p^s (log p)^2 / (p^s - 1)^2 + chi p^s (log p)^2 / (p^s - chi)^2.
double phi2_closed_form(const PrimeTable& table, double sigma, std::uint64_t y);

// (t, |H(alpha + it) / H(alpha)|) at the saddle point of (x, y).
std::vector<std::pair<double, double>> h_ratio_profile(const PrimeTable& table, double x, std::uint64_t y,
                                                       std::span<const double> t_grid);

}  // namespace smoothcircle
