// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <smoothcircle/arith.hpp>
#include <smoothcircle/cli.hpp>
#include <smoothcircle/errors.hpp>
#include <smoothcircle/estimators.hpp>
#include <smoothcircle/euler.hpp>
#include <smoothcircle/prime_sums.hpp>
#include <smoothcircle/primes.hpp>
#include <smoothcircle/saddle.hpp>
#include <smoothcircle/special.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace smoothcircle;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const PrimeTable& table() {
    static const PrimeTable t(1'000'000);
    return t;
}

Verdict oracle_equivalence() {
    const std::uint32_t n_max = 1'000'000;
    SpfTable spf(n_max);
    std::uint32_t bad = 0, first_bad = 0;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        auto f = spf.factorize(n);
        if (4 * r_over_4(n, f) != lattice_r(n)) {
            if (bad++ == 0) first_bad = n;
        }
    }
    if (bad) return {false, fmt("%u mismatches, first at n=%u", bad, first_bad)};
    return {true, "4 r_over_4(n) = lattice_r(n) for all n <= 1e6"};
}

Verdict gauss_circle() {
    const auto v = exact_psi_g(BigInt(100), 100).value;
    if (v != 316) return {false, "exact_psi_g(100,100) = " + v.str()};
    std::string detail = "psi(100,100)=316";
    for (std::uint64_t x : {1000ULL, 10000ULL}) {
        std::uint64_t lattice = 0;
        for (std::uint64_t n = 1; n <= x; ++n) lattice += lattice_r(n);
        for (auto m : {ExactMethod::sieve, ExactMethod::recursive}) {
            ExactOptions o;
            o.method = m;
            const auto e = exact_psi_g(BigInt(x), x, o).value;
            if (e != lattice)
                return {false, fmt("x=%llu %s: %s vs lattice %llu", static_cast<unsigned long long>(x),
                                   std::string(to_string(m)).c_str(), e.str().c_str(),
                                   static_cast<unsigned long long>(lattice))};
        }
        detail += fmt(", psi(%llu,%llu)=%llu", static_cast<unsigned long long>(x), static_cast<unsigned long long>(x),
                      static_cast<unsigned long long>(lattice));
    }
    return {true, detail};
}

Verdict saddle_closed_form() {
    const double a = solve_alpha(table(), 4, 2).alpha;
    const double d = std::fabs(a - std::log2(1.5));
    if (!(d <= 1e-12)) return {false, fmt("|alpha(4,2) - log2(3/2)| = %.3g", d)};
    double worst = 0;
    int cells = 0;
    for (double y : {2.0, 3.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1e3, 1e4, 1e5})
        for (double u : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 16.0, 25.0, 40.0}) {
            const auto yy = static_cast<std::uint64_t>(y);
            const auto s = solve_alpha(table(), std::pow(y, u), yy);
            worst = std::max(worst, std::fabs(std::log(s.x) + phi_derivatives(table(), s.alpha, yy).d[0]) /
                                        std::log(s.x));
            ++cells;
        }
    return {worst <= 1e-10,
            fmt("|alpha(4,2) - log2(3/2)| = %.2g; max relative residual %.2g over %d cells", d, worst, cells)};
}

Verdict rankin_inequality() {
    int cells = 0, violations = 0;
    for (std::uint64_t y : {2, 3, 5, 10, 30, 100, 300})
        for (std::uint64_t decade = 1; decade <= 10'000'000; decade *= 10)
            for (std::uint64_t m : {1, 2, 5}) {
                const std::uint64_t x = decade * m;
                if (x > 10'000'000) continue;
                const auto e = exact_psi_g(BigInt(x), y).value;
                const double bound = rankin_bound(table(), static_cast<double>(x), y).value();
                if (!(e.convert_to<double>() <= bound)) ++violations;
                ++cells;
            }
    return {violations == 0, fmt("%d violations over %d cells", violations, cells)};
}

Verdict derivative_consistency() {
    const double h = 1e-4;
    double worst = 0;
    for (std::uint64_t y : {100, 1000})
        for (double s : {0.6, 0.8, 1.0, 1.2}) {
            const auto p = phi_derivatives(table(), s, y);
            const auto pp = phi_derivatives(table(), s + h, y);
            const auto pm = phi_derivatives(table(), s - h, y);
            const double d1 = (pp.phi - pm.phi) / (2 * h);
            const double d2 = (pp.phi - 2 * p.phi + pm.phi) / (h * h);
            const double d3 = (pp.d[0] - 2 * p.d[0] + pm.d[0]) / (h * h);
            worst = std::max({worst, std::fabs(d1 / p.d[0] - 1), std::fabs(d2 / p.d[1] - 1),
                              std::fabs(d3 / p.d[2] - 1)});
        }
    int negative = 0, sampled = 0;
    for (std::uint64_t y : {2, 10, 100, 1000, 10000, 100000})
        for (double s = 0.02; s <= 4.0; s += 0.02, ++sampled)
            if (phi_derivatives(table(), s, y).d[1] < 0) ++negative;
    return {worst <= 1e-5 && negative == 0,
            fmt("max relative error %.2g (phi_3 from second differences of phi_1); phi_2 < 0 at %d of %d samples", worst,
                negative, sampled)};
}

Verdict special_functions() {
    double worst = 0;
    for (double u = 1.01; u <= 1000; u *= 1.05) {
        const double x = xi(u);
        worst = std::max(worst, std::fabs(std::expm1(x) - u * x) / std::max(1.0, u * x));
    }
    const double r2 = std::fabs(rho(2) - (1 - std::log(2.0)));
    // 100-digit Taylor series oracle, see test_special
    const double r3 = std::fabs(rho(3) - 0.048608388291131566);
    long double series = 0, term = 1;
    for (int k = 1; k < 60; ++k) {
        term *= 2.0L / k;
        series += term / k;
    }
    const double ei = std::fabs(exp_integral(2.0) - static_cast<double>(series));
    return {worst <= 1e-12 && r2 <= 1e-10 && r3 <= 1e-6 && ei <= 1e-10,
            fmt("xi residual %.2g, |rho(2)-(1-log 2)| %.2g, |rho(3)-oracle| %.2g, |exp_integral(2)-series| %.2g", worst,
                r2, r3, ei)};
}

Verdict rho_saddle_trend() {
    auto ratio = [](double u) { return rho_saddle_form(u) / rho(u); };
    const double r10 = ratio(10), r20 = ratio(20), r40 = ratio(40);
    const bool ok = r10 >= 0.9 && r10 <= 1.1 && std::fabs(r20 - 1) < std::fabs(r10 - 1) &&
                    std::fabs(r40 - 1) < std::fabs(r10 - 1) && std::fabs(r40 - 1) < std::fabs(r20 - 1);
    return {ok, fmt("ratio at u=10: %.6f, u=20: %.6f, u=40: %.6f", r10, r20, r40)};
}

Verdict thm1_trend() {
    const std::uint64_t y = 1000;
    ExactOptions o;
    o.method = ExactMethod::recursive;
    std::string detail;
    std::vector<double> devs;
    bool ok = true;
    for (int u : {8, 12, 16}) {
        const BigInt x = pow(BigInt(y), static_cast<unsigned>(u));
        const double log_x = u * std::log(static_cast<double>(y));
        const auto s = solve_alpha_log(table(), log_x, y);
        const double thm1 = thm1_main_term(table(), s).log;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto e = exact_psi_g(x, y, o);
            const double dev = std::fabs(std::exp(thm1 - std::log(e.value.convert_to<double>())) - 1);
            devs.push_back(dev);
            detail += fmt("u=%d |thm1/exact-1|=%.4f; ", u, dev);
        } catch (const ResourceLimitError&) {
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            ok = false;
            detail += fmt("u=%d oracle stopped at %.0e nodes after %.0fs (thm1 ~ %.1e); ", u,
                          static_cast<double>(o.node_budget), secs, std::exp(thm1));
        }
    }
    for (std::size_t i = 1; i < devs.size(); ++i) ok = ok && devs[i] <= devs[i - 1];
    if (devs.size() == 3) ok = ok && devs.back() <= 0.5;
    return {ok, detail + "exact enumeration at y=1e3, u>=8 exceeds any desk budget"};
}

Verdict mertens() {
    double prev = 1e300;
    bool ok = true;
    std::string detail;
    for (std::uint64_t x : {1000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
        const auto r = mertens_product(table(), x);
        const double ratio = r.value / r.main_term;
        const double dev = std::fabs(ratio - 1);
        ok = ok && dev <= 3 / std::log(static_cast<double>(x)) && dev < prev;
        prev = dev;
        detail += fmt("%sx=%.0e ratio %.6f", detail.empty() ? "" : "; ", static_cast<double>(x), ratio);
    }
    return {ok, detail};
}

Verdict perron() {
    std::vector<double> errs;
    std::string detail;
    double rel50 = 0;
    for (double T : {10.0, 25.0, 50.0}) {
        const auto p = perron_verify(table(), 100.5, 100, T);
        errs.push_back(p.error);
        detail += fmt("T=%g integral %.4f error %.4f; ", T, p.integral, p.error);
        if (T == 50.0) rel50 = std::fabs(p.integral - 316) / 316;
    }
    const bool monotone = errs[1] <= errs[0] && errs[2] <= errs[1];
    return {rel50 <= 0.05 && monotone,
            detail + fmt("relative error at T=50 %.4f (<= 0.05: %s); nonincreasing: %s", rel50,
                         rel50 <= 0.05 ? "yes" : "no", monotone ? "yes" : "no")};
}

Verdict ratio_bound() {
    int violations = 0, cells = 0, samples = 0;
    double worst = -1e300;
    for (std::uint64_t y : {10, 100, 1000, 10000})
        for (double u : {1.5, 2.0, 3.0, 5.0, 8.0}) {
            const double log_x = u * std::log(static_cast<double>(y));
            const double a = solve_alpha_log(table(), log_x, y).alpha;
            const double at = log_h(table(), a, y).real();
            for (int i = 0; i < 1000; ++i, ++samples) {
                const double t = -100.0 + 200.0 * i / 999.0;
                const double d = log_h(table(), {a, t}, y).real() - at;
                worst = std::max(worst, d);
                if (d > 1e-12) ++violations;
            }
            ++cells;
        }
    return {violations == 0,
            fmt("%d violations over %d cells x 1000 t (max log|H(a+it)/H(a)| = %.3g, rounding slack 1e-12)", violations,
                cells, worst)};
}

Verdict determinism() {
    const std::vector<std::vector<std::string>> suite{
        {"exact", "--x", "1000000", "--y", "100"},
        {"exact", "--u", "4", "--y", "100", "--method", "recursive"},
        {"alpha", "--x", "1e12", "--y", "1000"},
        {"hval", "--sigma", "0.7", "--t", "3", "--y", "1000"},
        {"estimate", "--x", "1e8", "--y", "1000", "--with-exact"},
        {"compare", "--grid-x", "1e3,1e5,1e7", "--grid-y", "10,100,1000", "--with-exact"},
        {"compare", "--grid-x", "1e20,1e100", "--grid-y", "100,100000"},
        {"perron", "--x", "100.5", "--y", "100", "--T", "25"},
        {"xi", "--u", "7.5"},
        {"rho", "--u", "12.25"},
        {"primesums", "--x", "100000", "--sigma", "0.75", "--twist"},
        {"diffcheck", "--x", "10000", "--y", "100", "--z", "10"},
    };
    auto run_suite = [&](const std::string& threads) {
        std::string all;
        for (const auto& c : suite) {
            std::vector<std::string> args{"smoothcircle", "--threads", threads};
            args.insert(args.end(), c.begin(), c.end());
            std::ostringstream out, err;
            if (run(args, out, err) != kExitOk) return std::string("failed: ") + c[0] + " " + err.str();
            all += out.str();
        }
        return all;
    };
    const std::string a = run_suite("1"), b = run_suite("1"), c = run_suite("4");
    const bool ok = a == b && a == c && a.rfind("failed", 0) != 0;
    return {ok, fmt("%zu subcommand runs, %zu bytes, repeat identical: %s, 1 vs 4 threads identical: %s",
                    suite.size(), a.size(), a == b ? "yes" : "no", a == c ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"Gauss circle identity", gauss_circle},
        {"saddle closed form and residuals", saddle_closed_form},
        {"Rankin inequality", rankin_inequality},
        {"derivative consistency", derivative_consistency},
        {"special functions", special_functions},
        {"rho saddle form trend", rho_saddle_trend},
        {"saddle-point main term trend", thm1_trend},
        {"Mertens product", mertens},
        {"Perron verification", perron},
        {"ratio bound", ratio_bound},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2zu %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        if (!v.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
