#include "smoothcircle/saddle.hpp"

#include <cmath>
#include <string>

#include "smoothcircle/errors.hpp"
#include "smoothcircle/euler.hpp"
#include "smoothcircle/special.hpp"

namespace smoothcircle {

SaddleResult solve_alpha_log(const PrimeTable& table, double log_x, std::uint64_t y, const SaddleOptions& opts) {
    if (y < 2) throw DomainError("solve_alpha needs y >= 2");
    if (!(log_x > 0.0) || !std::isfinite(log_x)) throw DomainError("solve_alpha needs x > 1");
    table.require_covers(y);

    const double logy = std::log(static_cast<double>(y));
    // g(sigma) = log x + phi_1(sigma) is strictly increasing from -inf to log x
    auto g = [&](double s) { return log_x + phi_derivatives(table, s, y, 2).d[0]; };

    double lo = 1.0 / logy;
    double hi = 1.0 + 3.0 / logy;
    double glo = g(lo);
    while (glo >= 0.0) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-12) throw ConvergenceError("solve_alpha: could not bracket the saddle point from below");
        glo = g(lo);
    }
    double ghi = g(hi);
    while (ghi <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw ConvergenceError("solve_alpha: could not bracket the saddle point from above");
        ghi = g(hi);
    }

    const double tol = opts.residual_tol * log_x;
    double s = 0.5 * (lo + hi);
    SaddleResult r;
    r.x = std::exp(log_x);
    r.y = y;
    r.u = log_x / logy;
    for (int it = 1; it <= opts.max_iters; ++it) {
        const auto pd = phi_derivatives(table, s, y, 2);
        const double gs = log_x + pd.d[0];
        if (gs < 0.0)
            lo = s;
        else
            hi = s;
        r.iters = it;
        // stop once Newton has nothing left to gain at double precision
        const bool tight = std::fabs(gs) <= 1e-15 * log_x || hi - lo <= 4e-16 * hi;
        if (tight || (std::fabs(gs) <= tol && std::fabs(gs / pd.d[1]) <= 1e-15 * s)) {
            r.alpha = s;
            r.residual = gs;
            r.bracket = {lo, hi};
            return r;
        }
        double next = s - gs / pd.d[1];
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        s = next;
    }
    // fall through: accept only if the residual is already within tolerance
    const double gs = g(s);
    if (std::fabs(gs) <= tol) {
        r.alpha = s;
        r.residual = gs;
        r.bracket = {lo, hi};
        return r;
    }
    throw ConvergenceError("solve_alpha: no convergence after " + std::to_string(opts.max_iters) + " iterations");
}

SaddleResult solve_alpha(const PrimeTable& table, double x, std::uint64_t y, const SaddleOptions& opts) {
    if (y < 2 || !(x >= static_cast<double>(y))) throw DomainError("solve_alpha needs x >= y >= 2");
    auto r = solve_alpha_log(table, std::log(x), y, opts);
    r.x = x;
    return r;
}

AlphaBoundsReport alpha_bounds_check(const PrimeTable& table, double x, std::uint64_t y, double y_floor) {
    const auto s = solve_alpha(table, x, y);
    const double logy = std::log(static_cast<double>(y));
    AlphaBoundsReport r;
    r.alpha = s.alpha;
    r.u = s.u;
    r.y_large_enough = static_cast<double>(y) >= y_floor;
    r.lower_applicable = r.y_large_enough && s.u >= 1.0 && s.u <= static_cast<double>(y) / (8.0 * logy);
    r.lower_holds = s.alpha >= 2.0 / logy;
    r.upper_applicable = r.y_large_enough && s.u >= 14.0;
    r.upper_holds = s.alpha <= 1.0 - 4.0 / logy;
    return r;
}

AlphaApprox alpha_xi_approx(const PrimeTable& table, double x, std::uint64_t y) {
    const auto s = solve_alpha(table, x, y);
    const double logy = std::log(static_cast<double>(y));
    AlphaApprox r;
    r.alpha = s.alpha;
    r.approx = 1.0 - xi(s.u) / logy;
    r.gap = s.alpha - r.approx;
    if (s.u >= 3.0) r.loglog = 1.0 - std::log(s.u * std::log(s.u)) / logy;
    r.log_ratio = std::log1p(static_cast<double>(y) / std::log(x)) / logy;
    return r;
}

}  // namespace smoothcircle
