#include "smoothcircle/prime_sums.hpp"

#include <cmath>
#include <numbers>

#include "smoothcircle/arith.hpp"
#include "smoothcircle/errors.hpp"
#include "smoothcircle/kahan.hpp"

namespace smoothcircle {

namespace {

void require_x(const PrimeTable& table, std::uint64_t x) {
    if (x < 2) throw DomainError("prime sums need x >= 2");
    table.require_covers(x);
}

void require_beta(std::uint64_t y, double beta) {
    if (y < 2) throw DomainError("Lambda sums need y >= 2");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("Lambda sums need 0 < beta < 1");
}

// Calls f(n, p) for every prime power n = p^k <= y.
template <class F>
void for_prime_powers(const PrimeTable& table, std::uint64_t y, F&& f) {
    for (const auto& e : table.upto(y)) {
        for (std::uint64_t n = e.p;; n *= e.p) {
            f(n, e);
            if (n > y / e.p) break;
        }
    }
}

}  // namespace

double theta(const PrimeTable& table, std::uint64_t x) {
    require_x(table, x);
    CompensatedSum s;
    for (const auto& e : table.upto(x)) s += e.logp;
    return s.value();
}

double theta_chi4(const PrimeTable& table, std::uint64_t x) {
    require_x(table, x);
    CompensatedSum s;
    for (const auto& e : table.upto(x)) s += e.chi * e.logp;
    return s.value();
}

PrimeSumReport weighted_prime_sum(const PrimeTable& table, std::uint64_t x, double sigma, bool twist,
                                  double c) {
    require_x(table, x);
    const double logx = std::log(static_cast<double>(x));
    if (!(sigma >= 0.0 && sigma <= 1.0 + c / logx))
        throw DomainError("weighted_prime_sum: sigma outside [0, 1 + C/log x]");
    CompensatedSum s;
    for (const auto& e : table.upto(x)) {
        const double w = twist ? e.chi : 1.0;
        if (w != 0.0) s += w * e.logp * std::exp(-sigma * e.logp);
    }
    PrimeSumReport r;
    r.x = static_cast<double>(x);
    r.value = s.value();
    if (!twist) {
        const double a = 1.0 - sigma;
        // integral of u^-sigma over [1, x]; a*logx -> 0 handled by expm1
        r.main_term = (std::fabs(a) < 1e-300) ? logx : std::expm1(a * logx) / a;
    }
    r.deviation = r.value - r.main_term;
    return r;
}

PrimeSumReport mertens_product(const PrimeTable& table, std::uint64_t x) {
    require_x(table, x);
    CompensatedSum log_prod;
    for (const auto& e : table.upto(x)) {
        const double inv = 1.0 / static_cast<double>(e.p);
        log_prod -= std::log1p(-inv);
        if (e.chi != 0) log_prod -= std::log1p(-e.chi * inv);
    }
    PrimeSumReport r;
    r.x = static_cast<double>(x);
    r.value = std::exp(log_prod.value());
    r.main_term = std::numbers::pi / 4.0 * std::exp(kEulerGamma) * std::log(static_cast<double>(x));
    r.deviation = r.value - r.main_term;
    return r;
}

LambdaSum lambda_partial_sum(const PrimeTable& table, std::uint64_t y, double beta, double t, bool twist) {
    require_beta(y, beta);
    table.require_covers(y);
    CompensatedComplexSum s;
    for_prime_powers(table, y, [&](std::uint64_t n, const PrimeEntry& e) {
        const int w = twist ? chi4(n) : 1;
        if (w == 0) return;
        const double logn = std::log(static_cast<double>(n));
        // n^-s = n^(beta-1) e^(-i t log n)
        s += std::polar(w * e.logp * std::exp((beta - 1.0) * logn), -t * logn);
    });
    const double logy = std::log(static_cast<double>(y));
    const std::complex<double> z(beta, -t);
    return {s.value(), std::exp(z * logy) / z};
}

LambdaCosSum lambda_cos_sum(const PrimeTable& table, std::uint64_t y, double beta, double t) {
    require_beta(y, beta);
    table.require_covers(y);
    CompensatedSum s;
    for_prime_powers(table, y, [&](std::uint64_t n, const PrimeEntry& e) {
        const int w = 1 + chi4(n);
        if (w == 0) return;
        const double logn = std::log(static_cast<double>(n));
        // 1 - cos(a) = 2 sin^2(a/2), no cancellation near a = 0
        const double half = std::sin(0.5 * t * logn);
        s += w * e.logp * std::exp((beta - 1.0) * logn) * 2.0 * half * half;
    });
    const double logy = std::log(static_cast<double>(y));
    const double eta = t * logy - std::atan(t / beta);
    LambdaCosSum r;
    r.value = s.value();
    r.main_term = std::exp(beta * logy) / beta * (1.0 - beta * std::cos(eta) / std::hypot(beta, t));
    return r;
}

}  // namespace smoothcircle
