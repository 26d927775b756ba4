#include "smoothcircle/special.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "smoothcircle/errors.hpp"
#include "smoothcircle/prime_sums.hpp"

namespace smoothcircle {

namespace {

// e^x - 1 - x without cancellation for small x.
double expm1_minus_x(double x) {
    if (std::fabs(x) > 0.5) return std::expm1(x) - x;
    double term = x * x / 2.0;
    double sum = 0.0;
    for (int k = 3; std::fabs(term) > 1e-20 * std::fabs(sum) || k < 5; ++k) {
        sum += term;
        term *= x / k;
    }
    return sum;
}

constexpr int kStencil = 8;

}  // namespace

double xi(double u) {
    if (!(u >= 1.0)) throw DomainError("xi needs u >= 1");
    if (u == 1.0) return 0.0;
    const double um1 = u - 1.0;
    // g(s) = e^s - 1 - u s = (e^s - 1 - s) - (u - 1) s; convex, g(0) = 0
    auto g = [&](double s) { return expm1_minus_x(s) - um1 * s; };
    double s = std::log(u * std::log(u) + 1.0);
    if (!(s > 0.0)) s = 2.0 * um1;
    while (g(s) <= 0.0) s *= 2.0;
    // Newton from the right of the root decreases monotonically
    for (int it = 0; it < 200; ++it) {
        const double step = g(s) / (std::expm1(s) - um1);
        s -= step;
        if (std::fabs(step) <= 1e-16 * s) break;
    }
    return s;
}

double xi_prime(double u) {
    if (!(u > 1.0)) throw DomainError("xi_prime needs u > 1");
    const double x = xi(u);
    return x / (1.0 + u * x - u);
}

double exp_integral(double xi_val) {
    if (!(xi_val >= 0.0)) throw DomainError("exp_integral needs xi >= 0");
    constexpr double kSeriesLimit = 30.0;
    const double head = std::min(xi_val, kSeriesLimit);
    // sum_{k>=1} xi^k / (k k!)
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1;; ++k) {
        term *= head / k;
        const double add = term / k;
        sum += add;
        if (k > head && add <= 1e-17 * sum) break;
        if (k > 10000) break;
    }
    if (xi_val <= kSeriesLimit) return sum;
    double err = 0.0;
    const double tail = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [](double s) { return std::expm1(s) / s; }, kSeriesLimit, xi_val, 20, 1e-15, &err);
    return sum + tail;
}

double log_rho_saddle_form(double u) {
    if (!(u > 1.0)) throw DomainError("rho_saddle_form needs u > 1");
    const double x = xi(u);
    const double xp = x / (1.0 + u * x - u);
    return 0.5 * std::log(xp / (2.0 * std::numbers::pi)) + kEulerGamma - u * x + exp_integral(x);
}

double rho_saddle_form(double u) { return std::exp(log_rho_saddle_form(u)); }

namespace {

// Integrals of the Lagrange basis on nodes 0..7 over the cells [m, m + 1].
struct StencilWeights {
    std::array<std::array<double, kStencil>, kStencil - 1> cell{};

    StencilWeights() {
        for (int l = 0; l < kStencil; ++l) {
            // coefficients of prod_{k != l} (s - k) / (l - k), ascending powers
            std::array<long double, kStencil> poly{};
            poly[0] = 1.0L;
            int deg = 0;
            for (int k = 0; k < kStencil; ++k) {
                if (k == l) continue;
                const long double scale = 1.0L / static_cast<long double>(l - k);
                for (int d = deg + 1; d >= 0; --d) {
                    const long double prev = (d > 0) ? poly[d - 1] : 0.0L;
                    poly[d] = (prev - k * poly[d]) * scale;
                }
                ++deg;
            }
            for (int m = 0; m < kStencil - 1; ++m) {
                long double acc = 0.0L;
                for (int d = 0; d < kStencil; ++d) {
                    long double hi = 1.0L, lo = 1.0L;
                    for (int e = 0; e <= d; ++e) {
                        hi *= (m + 1);
                        lo *= m;
                    }
                    acc += poly[d] * (hi - lo) / (d + 1);
                }
                cell[m][l] = static_cast<double>(acc);
            }
        }
    }
};

const StencilWeights& stencil_weights() {
    static const StencilWeights w;
    return w;
}

// Solves a small dense system in place (partial pivoting).
template <std::size_t N>
std::array<long double, N> solve_dense(std::array<std::array<long double, N>, N> a, std::array<long double, N> b) {
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < N; ++r) {
            const long double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < N; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<long double, N> x{};
    for (std::size_t c = N; c-- > 0;) {
        long double acc = b[c];
        for (std::size_t k = c + 1; k < N; ++k) acc -= a[c][k] * x[k];
        x[c] = acc / a[c][c];
    }
    return x;
}

// Sums of positive cell integrals over index ranges, via fixed blocks so no
// difference of large partial sums is ever taken.
class WindowSum {
public:
    explicit WindowSum(const std::vector<double>& cells) : cells_(cells) {}

    // cells_[i] for i < ready are final
    void publish(std::size_t ready) {
        while ((blocks_.size() + 1) * kBlock <= ready) {
            const std::size_t b0 = blocks_.size() * kBlock;
            double s = 0.0;
            for (std::size_t i = b0; i < b0 + kBlock; ++i) s += cells_[i];
            blocks_.push_back(s);
        }
    }

    // sum of cells_[lo .. hi], inclusive; blocks used only where complete
    double sum(std::size_t lo, std::size_t hi) const {
        double s = 0.0;
        std::size_t i = lo;
        while (i <= hi) {
            if (i % kBlock == 0 && i + kBlock - 1 <= hi && i / kBlock < blocks_.size()) {
                s += blocks_[i / kBlock];
                i += kBlock;
            } else {
                s += cells_[i++];
            }
        }
        return s;
    }

private:
    static constexpr std::size_t kBlock = 64;
    const std::vector<double>& cells_;
    std::vector<double> blocks_;
};

}  // namespace

// Solves u rho(u) = integral_{u-1}^{u} rho(t) dt on the grid. Every term is
// positive, so relative accuracy survives the super-exponential decay of rho.
// Cell integrals come from 8-point Lagrange stencils kept inside one unit
// interval; the first seven points of each interval are solved jointly.
DickmanTable::DickmanTable(double step, double u_max) : step_(step), u_max_(u_max) {
    const double inv = 1.0 / step;
    per_unit_ = std::lround(inv);
    if (!(step > 0.0) || std::fabs(inv - per_unit_) > 1e-9 * inv || per_unit_ < kStencil)
        throw DomainError("DickmanTable: 1/step must be an integer >= 8");
    if (!(u_max >= 1.0) || !std::isfinite(u_max)) throw DomainError("DickmanTable: u_max must be >= 1");

    const auto& W = stencil_weights().cell;
    const std::size_t N = static_cast<std::size_t>(per_unit_);
    const long units = static_cast<long>(std::ceil(u_max - 1e-12));
    const std::size_t last = static_cast<std::size_t>(units) * N;
    const double h = 1.0 / static_cast<double>(N);
    auto grid_u = [&](std::size_t j) { return static_cast<double>(j) / static_cast<double>(N); };

    values_.assign(last + 1, 0.0);
    std::vector<double> cells(last, 0.0);
    for (std::size_t j = 0; j <= N; ++j) values_[j] = 1.0;
    for (std::size_t i = 0; i < N; ++i) cells[i] = h;
    WindowSum window(cells);
    window.publish(N);

    for (long k = 1; k < units; ++k) {
        const std::size_t base = static_cast<std::size_t>(k) * N;
        if (values_[base] == 0.0) break;

        // first seven unknowns of the interval, one stencil base..base+7
        constexpr std::size_t M = kStencil - 1;
        std::array<std::array<long double, M>, M> a{};
        std::array<long double, M> rhs{};
        for (std::size_t r = 1; r <= M; ++r) {
            const std::size_t j = base + r;
            rhs[r - 1] = window.sum(j - N, base - 1);
            a[r - 1][r - 1] += grid_u(j);
            for (std::size_t m = 0; m < r; ++m) {
                rhs[r - 1] += h * W[m][0] * values_[base];
                for (std::size_t l = 1; l < kStencil; ++l) a[r - 1][l - 1] -= h * W[m][l];
            }
        }
        const auto sol = solve_dense(a, rhs);
        for (std::size_t l = 1; l <= M; ++l) values_[base + l] = static_cast<double>(sol[l - 1]);
        for (std::size_t m = 0; m < M; ++m) {
            double c = 0.0;
            for (std::size_t l = 0; l < kStencil; ++l) c += W[m][l] * values_[base + l];
            cells[base + m] = h * c;
        }
        window.publish(base + M);

        // remaining points: trailing stencil j-7..j, implicit in rho(j)
        const auto& Wt = W[M - 1];
        for (std::size_t j = base + kStencil; j <= base + N; ++j) {
            double known = 0.0;
            for (std::size_t l = 0; l < M; ++l) known += Wt[l] * values_[j - M + l];
            const double v = (window.sum(j - N, j - 2) + h * known) / (grid_u(j) - h * Wt[M]);
            values_[j] = v;
            cells[j - 1] = h * (known + Wt[M] * v);
            window.publish(j);
        }
        for (std::size_t j = base + 1; j <= base + N; ++j) {
            if (values_[j] < kRhoFloor) {
                std::fill(values_.begin() + static_cast<std::ptrdiff_t>(j), values_.end(), 0.0);
                break;
            }
        }
    }
}

RhoValue DickmanTable::eval(double u) const {
    if (!(u >= 0.0)) throw DomainError("rho needs u >= 0");
    if (u > u_max_ * (1.0 + 1e-15)) throw DomainError("rho: u beyond DickmanTable range");
    if (u <= 1.0) return {1.0, false};
    const long N = per_unit_;
    const long n = static_cast<long>(values_.size()) - 1;
    long unit = static_cast<long>(std::floor(u));
    if (unit * N >= n) unit = n / N - 1;
    const double s = (u - unit) * N;  // position inside the unit interval, grid units
    long start = static_cast<long>(std::floor(s)) - kStencil / 2 + 1;
    start = std::clamp(start, 0L, N - (kStencil - 1));
    const long offset = unit * N + start;
    double r = 0.0;
    for (int i = 0; i < kStencil; ++i) {
        const double vi = values_[static_cast<std::size_t>(offset + i)];
        if (vi == 0.0) return {0.0, true};
        double w = 1.0;
        for (int k = 0; k < kStencil; ++k)
            if (k != i) w *= (s - (start + k)) / static_cast<double>(i - k);
        r += w * vi;
    }
    if (r < kRhoFloor) return {0.0, true};
    return {r, false};
}

RhoValue rho_eval(double u) {
    static const DickmanTable table(1e-3, 200.0);
    if (!(u >= 0.0)) throw DomainError("rho needs u >= 0");
    if (u > table.u_max()) return {0.0, true};
    return table.eval(u);
}

double rho(double u) { return rho_eval(u).value; }

}  // namespace smoothcircle
