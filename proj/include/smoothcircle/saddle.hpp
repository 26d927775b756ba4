#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "smoothcircle/primes.hpp"

namespace smoothcircle {

struct SaddleOptions {
    double residual_tol = 1e-10;  // relative to log x
    int max_iters = 200;
};

struct SaddleResult {
    double x = 0;
    std::uint64_t y = 0;
    double u = 0;
    double alpha = 0;
    double residual = 0;  // log x + phi_1(alpha)
    int iters = 0;
    std::pair<double, double> bracket;
};

// Root of log x + phi_1(alpha, G; y) = 0 by bracketed Newton with bisection
// fallback. Requires x >= y >= 2.
SaddleResult solve_alpha(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts = {});

// Same root from log x directly; only needs log x > 0. Used where x is huge or x < y.
SaddleResult solve_alpha_log(const PrimeTable& table, double log_x, std::uint64_t y,
                             const SaddleOptions& opts = {});

struct AlphaBoundsReport {
    double alpha = 0;
    double u = 0;
    bool y_large_enough = false;     // y >= configured floor
    bool lower_applicable = false;   // 1 <= u <= y / (8 log y)
    bool lower_holds = false;        // alpha >= 2 / log y
    bool upper_applicable = false;   // u >= 14
    bool upper_holds = false;        // alpha <= 1 - 4 / log y
};

AlphaBoundsReport alpha_bounds_check(const PrimeTable& table, double x, std::uint64_t y, double y_floor = 1e3);

struct AlphaApprox {
    double alpha = 0;
    double approx = 0;                 // 1 - xi(u) / log y
    double gap = 0;                    // alpha - approx
    std::optional<double> loglog;      // 1 - log(u log u) / log y, u >= 3
    double log_ratio = 0;              // log(1 + y / log x) / log y
};

AlphaApprox alpha_xi_approx(const PrimeTable& table, double x, std::uint64_t y);

}  // namespace smoothcircle
