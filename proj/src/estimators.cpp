#include "smoothcircle/estimators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "smoothcircle/errors.hpp"
#include "smoothcircle/euler.hpp"
#include "smoothcircle/prime_sums.hpp"
#include "smoothcircle/parallel.hpp"
#include "smoothcircle/special.hpp"

namespace smoothcircle {

namespace {

constexpr double kLogMaxDouble = 709.78;

double log_x_of(double x) {
    if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("x must be a finite value >= 1");
    return std::log(x);
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

BigInt floor_big(double x) {
    return BigInt(std::floor(x));
}

}  // namespace

double LogValue::value() const { return std::exp(log); }
bool LogValue::overflows() const { return !(std::fabs(log) < kLogMaxDouble); }

LogValue thm1_main_term(const PrimeTable& table, const SaddleResult& s) {
    const auto pd = phi_derivatives(table, s.alpha, s.y, 2);
    const double log_x = std::log(s.x);
    const double l = std::log(4.0) + s.alpha * log_x + pd.phi - std::log(s.alpha) -
                     0.5 * std::log(2.0 * std::numbers::pi * pd.d[1]);
    return {l};
}

LogValue thm1_main_term(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts) {
    return thm1_main_term(table, solve_alpha(table, x, y, opts));
}

LogValue thm2_estimate(double x, std::uint64_t y) {
    if (y < 2) throw DomainError("thm2_estimate needs y >= 2");
    const double log_x = log_x_of(x);
    const double u = log_x / std::log(static_cast<double>(y));
    if (u < 1.0) throw DomainError("thm2_estimate needs x >= y");
    // at u = 1: xi = 0, xi' = 2, so the saddle form is (1/pi)^(1/2) e^gamma
    const double lr = (u == 1.0) ? 0.5 * std::log(1.0 / std::numbers::pi) + kEulerGamma : log_rho_saddle_form(u);
    return {std::log(std::numbers::pi) + log_x + lr};
}

LogValue goswami_estimate(double x, std::uint64_t y, bool* clamped) {
    if (y < 2) throw DomainError("goswami_estimate needs y >= 2");
    const double log_x = log_x_of(x);
    const auto r = rho_eval(log_x / std::log(static_cast<double>(y)));
    if (clamped) *clamped = r.clamped;
    const double lr = r.clamped ? -std::numeric_limits<double>::infinity() : std::log(r.value);
    return {std::log(std::numbers::pi) + lr + log_x};
}

LogValue rankin_bound(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts) {
    const double log_x = log_x_of(x);
    if (log_x == 0.0) return {std::log(4.0)};  // inf over sigma of H(sigma) is 1
    const auto s = solve_alpha_log(table, log_x, y, opts);
    return {std::log(4.0) + s.alpha * log_x + log_h(table, s.alpha, y).real()};
}

bool in_thm1_range(double x, std::uint64_t y, double epsilon0) {
    const double logy = std::log(static_cast<double>(y));
    const double u = std::log(x) / logy;
    const double lly = std::log(logy);
    const double upper = std::exp(logy / (2.0 + epsilon0)) / logy;
    return x >= static_cast<double>(y) && u >= lly * lly && u <= upper;
}

bool in_thm2_range(double x, std::uint64_t y, double epsilon0) {
    const double yy = static_cast<double>(y);
    return std::pow(std::log(x), 2.0 + epsilon0) < yy && yy < x;
}

namespace {

// Gauss-Kronrod 15 with bisection. Boost's adaptive driver reports the
// error of the rescaled rule on [-1, 1] without the (b - a)/2 factor, so the
// refinement is done here on top of its single-panel rule.
template <class F>
double adaptive_gk15(const F& f, double a, double b, double tol, unsigned depth) {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
    err *= 0.5 * (b - a);
    if (err <= tol + 1e-10 * l1) return v;
    if (depth == 0)
        throw ConvergenceError("perron_verify: panel [" + std::to_string(a) + ", " + std::to_string(b) +
                               "] did not converge");
    const double m = 0.5 * (a + b);
    return adaptive_gk15(f, a, m, 0.5 * tol, depth - 1) + adaptive_gk15(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace

PerronResult perron_verify(const PrimeTable& table, double x, std::uint64_t y, double T,
                           const ExactOptions& exact_opts, const PerronOptions& opts) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("perron_verify needs T >= 0");
    if (!(x > 1.0)) throw DomainError("perron_verify needs x > 1");
    // jump points of the partial sum sit on integers
    if (x == std::floor(x)) x += 0.5;
    const double log_x = std::log(x);
    const auto s = solve_alpha_log(table, log_x, y);
    const double alpha = s.alpha;

    auto f = [&](double t) {
        const std::complex<double> z(alpha, t);
        return std::real(std::exp(log_h(table, z, y) + z * log_x) / z);
    };

    const double width = 1.0 / std::log(static_cast<double>(y));
    const auto panels = static_cast<long>(std::ceil(T / width));
    double total = 0.0;
    for (long k = 0; k < panels; ++k) {
        const double a = k * width;
        const double b = std::min(T, (k + 1) * width);
        if (b <= a) break;
        total += adaptive_gk15(f, a, b, opts.abs_tol, opts.max_depth);
    }
    // integrand at -t is the conjugate of the one at t
    const double integral = 4.0 / std::numbers::pi * total;

    PerronResult r;
    r.x = x;
    r.y = y;
    r.T = T;
    r.alpha = alpha;
    r.integral = integral;
    r.exact = exact_psi_g(floor_big(x), y, exact_opts).value;
    r.error = std::fabs(integral - to_double(r.exact));
    return r;
}

DifferenceReport difference_check(const PrimeTable& table, std::uint64_t x, std::uint64_t y, double z,
                                  double lambda, const ExactOptions& exact_opts) {
    if (x < 2 || y < 2) throw DomainError("difference_check needs x >= 2, y >= 2");
    const double logy = std::log(static_cast<double>(y));
    const double z_max = std::exp(std::pow(logy, 1.5 - lambda));
    if (!(z >= 1.0 && z <= z_max))
        throw DomainError("difference_check needs 1 <= z <= " + std::to_string(z_max));
    const double log_x = std::log(static_cast<double>(x));
    const auto s = solve_alpha_log(table, log_x, y);
    const auto x2 = static_cast<std::uint64_t>(std::floor(static_cast<double>(x) * (1.0 + 1.0 / z)));

    DifferenceReport r;
    r.x = x;
    r.y = y;
    r.z = z;
    r.alpha = s.alpha;
    r.lhs = exact_psi_g(x2, y, exact_opts).value - exact_psi_g(x, y, exact_opts).value;
    r.scale = std::exp(s.alpha * log_x + log_h(table, s.alpha, y).real()) / z;
    r.ratio = to_double(r.lhs) / r.scale;
    return r;
}

ComparisonRow compare_cell(const PrimeTable& table, double x, std::uint64_t y, const CompareOptions& opts) {
    ComparisonRow row;
    row.x = x;
    row.y = y;
    try {
        const auto s = solve_alpha(table, x, y, opts.saddle);
        row.u = s.u;
        row.alpha = s.alpha;
        row.residual = s.residual;
        row.thm1 = thm1_main_term(table, s);
        row.thm2 = thm2_estimate(x, y);
        bool clamped = false;
        row.goswami = goswami_estimate(x, y, &clamped);
        row.rankin = rankin_bound(table, x, y, opts.saddle);
        if (!in_thm1_range(x, y, opts.epsilon0)) row.flags.emplace_back("outside-thm1-range");
        if (!in_thm2_range(x, y, opts.epsilon0)) row.flags.emplace_back("outside-thm2-range");
        if (clamped || row.thm1.overflows() || row.thm2.overflows() || row.goswami.overflows() ||
            row.rankin.overflows())
            row.flags.emplace_back("overflow-logspace");
    } catch (const std::exception&) {
        row.ok = false;
        row.flags.emplace_back("error");
        return row;
    }
    if (opts.with_exact) {
        try {
            row.exact = exact_psi_g(floor_big(x), y, opts.exact).value;
        } catch (const ResourceLimitError&) {
        } catch (const DomainError&) {
        } catch (const OverflowError&) {
        }
        if (row.exact) {
            const double e = to_double(*row.exact);
            row.ratio_thm1 = row.thm1.value() / e;
            row.ratio_thm2 = row.thm2.value() / e;
            row.ratio_goswami = row.goswami.value() / e;
        } else {
            row.flags.emplace_back("oracle-skipped");
        }
    }
    return row;
}

std::vector<ComparisonRow> compare_grid(const PrimeTable& table, std::span<const double> x_list,
                                        std::span<const std::uint64_t> y_list, const CompareOptions& opts) {
    if (x_list.empty() || y_list.empty()) throw DomainError("compare_grid needs nonempty x and y lists");
    std::vector<ComparisonRow> rows(x_list.size() * y_list.size());
    parallel_for(rows.size(), resolve_threads(opts.threads), [&](std::size_t k) {
        rows[k] = compare_cell(table, x_list[k / y_list.size()], y_list[k % y_list.size()], opts);
    });
    return rows;
}

}  // namespace smoothcircle
