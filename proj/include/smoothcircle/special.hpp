#pragma once

#include <vector>

namespace smoothcircle {

// Nonzero root of e^xi = 1 + u xi for u > 1; xi(1) = 0.
double xi(double u);

// xi'(u) = xi / (1 + u xi - u), u > 1.
double xi_prime(double u);

// Integral of (e^s - 1)/s over [0, xi].
double exp_integral(double xi_val);

// (xi'(u) / 2pi)^(1/2) exp(gamma - u xi(u) + exp_integral(xi(u))), the saddle
// point approximation to the Dickman function; u > 1.
double rho_saddle_form(double u);
double log_rho_saddle_form(double u);

struct RhoValue {
    double value = 0;
    bool clamped = false;  // true when rho fell below kRhoFloor and was set to 0
};

inline constexpr double kRhoFloor = 1e-300;

// Dickman rho on the grid u = j * step over [0, ceil(u_max)], from the
// integrated form u rho(u) = integral_{u-1}^{u} rho(t) dt of u rho'(u) = -rho(u-1).
// Values below kRhoFloor are stored as 0.
class DickmanTable {
public:
    // 1/step must be an integer >= 8.
    DickmanTable(double step, double u_max);

    double step() const { return step_; }
    double u_max() const { return u_max_; }
    const std::vector<double>& values() const { return values_; }

    // rho(u) for 0 <= u <= u_max; off-grid points use 8-point interpolation
    // inside the unit interval holding u (rho is smooth between integers).
    RhoValue eval(double u) const;
    double operator()(double u) const { return eval(u).value; }

private:
    double step_;
    double u_max_;
    long per_unit_;
    std::vector<double> values_;
};

// rho(u), u >= 0, from a shared table (step 1e-3, u <= 200); 0 beyond the
// table, where rho is far below kRhoFloor.
RhoValue rho_eval(double u);
double rho(double u);

}  // namespace smoothcircle
