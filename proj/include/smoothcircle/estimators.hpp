#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothcircle/arith.hpp"
#include "smoothcircle/primes.hpp"
#include "smoothcircle/saddle.hpp"

namespace smoothcircle {

// A positive quantity kept in log space; value() is +inf when it overflows a double.
struct LogValue {
    double log = 0;
    double value() const;
    bool overflows() const;
};

// 4 x^alpha H(alpha) / (alpha sqrt(2 pi phi_2(alpha))) at the saddle point.
LogValue thm1_main_term(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts = {});
LogValue thm1_main_term(const PrimeTable& table, const SaddleResult& saddle);

// pi x rho_saddle_form(u).
LogValue thm2_estimate(double x, std::uint64_t y);

// pi rho(u) x.  `clamped` is set when rho underflowed to 0.
LogValue goswami_estimate(double x, std::uint64_t y, bool* clamped = nullptr);

// 4 x^alpha H(alpha, G; y); for x = 1 the infimum over sigma, which is 4.
LogValue rankin_bound(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts = {});

// Applicability windows; epsilon0 is the fixed margin in both theorems.
bool in_thm1_range(double x, std::uint64_t y, double epsilon0);
bool in_thm2_range(double x, std::uint64_t y, double epsilon0);

struct PerronOptions {
    double abs_tol = 1e-10;   // per panel
    unsigned max_depth = 18;  // Gauss-Kronrod bisection depth per panel
};

struct PerronResult {
    double x = 0;
    std::uint64_t y = 0;
    double T = 0;
    double alpha = 0;
    double integral = 0;
    BigInt exact;
    double error = 0;  // |integral - exact|
};

// Re (4/2pi) int_{-T}^{T} H(alpha + it) x^(alpha + it) / (alpha + it) dt, against Psi_G(floor x, y).
// Throws ConvergenceError when a panel misses its tolerance at max_depth.
PerronResult perron_verify(const PrimeTable& table, double x, std::uint64_t y, double T,
                           const ExactOptions& exact_opts = {}, const PerronOptions& opts = {});

struct DifferenceReport {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    double z = 0;
    double alpha = 0;
    BigInt lhs;      // Psi_G(x + x/z, y) - Psi_G(x, y)
    double scale = 0;  // x^alpha H(alpha) / z
    double ratio = 0;  // lhs / scale
};

// Requires 1 <= z <= exp((log y)^(3/2 - lambda)).
DifferenceReport difference_check(const PrimeTable& table, std::uint64_t x, std::uint64_t y, double z,
                                  double lambda = 0.25, const ExactOptions& exact_opts = {});

struct ComparisonRow {
    double x = 0;
    std::uint64_t y = 0;
    double u = 0;
    double alpha = 0;
    double residual = 0;
    std::optional<BigInt> exact;
    LogValue thm1, thm2, goswami, rankin;
    std::optional<double> ratio_thm1, ratio_thm2, ratio_goswami;
    std::vector<std::string> flags;
    bool ok = true;  // false when the cell's estimates could not be computed
};

struct CompareOptions {
    bool with_exact = false;
    double epsilon0 = 0.1;
    SaddleOptions saddle;
    ExactOptions exact;
    unsigned threads = 1;
};

ComparisonRow compare_cell(const PrimeTable& table, double x, std::uint64_t y, const CompareOptions& opts);

// Rows for every (x, y) in x_list x y_list, x-major, in input order.
std::vector<ComparisonRow> compare_grid(const PrimeTable& table, std::span<const double> x_list,
                                        std::span<const std::uint64_t> y_list, const CompareOptions& opts);

}  // namespace smoothcircle
