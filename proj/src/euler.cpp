#include "smoothcircle/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smoothcircle/errors.hpp"
#include "smoothcircle/kahan.hpp"
#include "smoothcircle/saddle.hpp"

namespace smoothcircle {

namespace {

// log(1 + w), accurate for tiny |w|.
std::complex<double> log1p_c(std::complex<double> w) {
    const double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
    const double im = std::atan2(w.imag(), 1.0 + w.real());
    return {re, im};
}

constexpr double kNuRelTol = 1e-18;
constexpr std::uint64_t kMaxNu = 100'000'000;

}  // namespace

std::complex<double> log_h(const PrimeTable& table, std::complex<double> s, std::uint64_t y) {
    if (!(s.real() > 0.0)) throw DomainError("H(s, G; y) needs Re s > 0");
    table.require_covers(y);
    CompensatedComplexSum acc;
    for (const auto& e : table.upto(y)) {
        // p^-s = exp(-s log p)
        const std::complex<double> z = std::exp(-s * e.logp);
        switch (e.chi) {
            case 0: acc += -log1p_c(-z); break;
            case 1: acc += -2.0 * log1p_c(-z); break;
            default: acc += -log1p_c(-z * z); break;  // (1 - z)(1 + z)
        }
    }
    return acc.value();
}

std::complex<double> h_value(const PrimeTable& table, std::complex<double> s, std::uint64_t y) {
    return std::exp(log_h(table, s, y));
}

PhiDerivatives phi_derivatives(const PrimeTable& table, double sigma, std::uint64_t y, int kmax) {
    if (!(sigma > 0.0)) throw DomainError("phi_derivatives needs sigma > 0");
    if (kmax < 0 || kmax > 4) throw DomainError("phi_derivatives supports kmax in [0, 4]");
    table.require_covers(y);

    std::array<CompensatedSum, 5> acc;
    double tail = 0.0;
    for (const auto& e : table.upto(y)) {
        const double q = std::exp(-sigma * e.logp);  // p^-sigma
        std::array<double, 5> part{};
        double pw = 1.0;
        for (std::uint64_t nu = 1;; ++nu) {
            pw *= q;
            const double weight = (e.chi == 0) ? 1.0 : ((e.chi > 0 || nu % 2 == 0) ? 2.0 : 0.0);
            const double nl = static_cast<double>(nu) * e.logp;
            double term = pw / static_cast<double>(nu);  // k = 0 magnitude, times weight below
            double mag_max = 0.0;
            for (int k = 0; k <= kmax; ++k) {
                part[k] += weight * term;
                mag_max = std::max(mag_max, std::fabs(2.0 * term) /
                                                (std::fabs(acc[k].value()) + std::fabs(part[k]) +
                                                 std::numeric_limits<double>::min()));
                term *= -nl;
            }
            // term_{nu+1} / term_nu <= q ((nu+1)/nu)^(k-1), nonincreasing in nu
            const double ratio = q * std::pow((nu + 1.0) / nu, std::max(kmax - 1, 0));
            if (ratio < 1.0 && mag_max < kNuRelTol) {
                // remaining terms (weight <= 2) bounded by a geometric series
                const double last = 2.0 * pw / nu * std::pow(nl, kmax);
                tail += last * ratio / (1.0 - ratio);
                break;
            }
            if (nu >= kMaxNu) throw ConvergenceError("phi_derivatives: prime-power series did not converge");
        }
        for (int k = 0; k <= kmax; ++k) acc[k] += part[k];
    }
    PhiDerivatives out;
    out.sigma = sigma;
    out.y = y;
    out.phi = acc[0].value();
    for (int k = 1; k <= kmax; ++k) out.d[k - 1] = acc[k].value();
    out.truncation_error_bound = tail;
    return out;
}

double phi2_closed_form(const PrimeTable& table, double sigma, std::uint64_t y) {
    if (!(sigma > 0.0)) throw DomainError("phi2_closed_form needs sigma > 0");
    table.require_covers(y);
    CompensatedSum acc;
    for (const auto& e : table.upto(y)) {
        const double ps = std::exp(sigma * e.logp);
        const double l2 = e.logp * e.logp;
        acc += ps * l2 / ((ps - 1.0) * (ps - 1.0));
        if (e.chi != 0) acc += e.chi * ps * l2 / ((ps - e.chi) * (ps - e.chi));
    }
    return acc.value();
}

std::vector<std::pair<double, double>> h_ratio_profile(const PrimeTable& table, double x, std::uint64_t y,
                                                       std::span<const double> t_grid) {
    const auto saddle = solve_alpha(table, x, y);
    const double base = log_h(table, saddle.alpha, y).real();
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!std::isfinite(t)) throw DomainError("h_ratio_profile: t must be finite");
        const double lr = log_h(table, {saddle.alpha, t}, y).real() - base;
        out.emplace_back(t, std::exp(lr));
    }
    return out;
}

}  // namespace smoothcircle
