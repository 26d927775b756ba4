#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <smoothcircle/errors.hpp>
#include <smoothcircle/prime_sums.hpp>
#include <smoothcircle/primes.hpp>

#include <cmath>
#include <numbers>

using namespace smoothcircle;

namespace {
const PrimeTable& table() {
    static const PrimeTable t(1'000'000);
    return t;
}
}  // namespace

TEST_CASE("theta examples") {
    CHECK(theta(table(), 2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(theta(table(), 10) == doctest::Approx(std::log(210.0)).epsilon(1e-15));
    CHECK(theta(table(), 100) == doctest::Approx(83.7283).epsilon(1e-5));
}

TEST_CASE("theta_chi4 examples") {
    CHECK(theta_chi4(table(), 2) == 0.0);
    CHECK(theta_chi4(table(), 5) == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-14));
    CHECK(theta_chi4(table(), 10) == doctest::Approx(std::log(5.0 / 21.0)).epsilon(1e-14));
}

TEST_CASE("weighted_prime_sum examples") {
    auto a = weighted_prime_sum(table(), 2, 0.0, false);
    CHECK(a.value == doctest::Approx(std::log(2.0)));
    CHECK(a.main_term == doctest::Approx(1.0));
    auto b = weighted_prime_sum(table(), 10, 1.0, false);
    const double want = std::log(2.0) / 2 + std::log(3.0) / 3 + std::log(5.0) / 5 + std::log(7.0) / 7;
    CHECK(b.value == doctest::Approx(want).epsilon(1e-14));
    CHECK(b.value == doctest::Approx(1.31265).epsilon(1e-5));
    CHECK(b.main_term == doctest::Approx(std::log(10.0)).epsilon(1e-15));
    CHECK(b.deviation == doctest::Approx(b.value - b.main_term));
    auto c = weighted_prime_sum(table(), 10, 1.0, true);
    CHECK(c.value == doctest::Approx(-std::log(3.0) / 3 + std::log(5.0) / 5 - std::log(7.0) / 7).epsilon(1e-14));
    CHECK(c.value == doctest::Approx(-0.32230).epsilon(1e-4));
    CHECK(c.main_term == 0.0);
}

TEST_CASE("weighted_prime_sum main term is continuous at sigma = 1") {
    auto at = weighted_prime_sum(table(), 1000, 1.0, false).main_term;
    auto near = weighted_prime_sum(table(), 1000, 1.0 - 1e-9, false).main_term;
    CHECK(near == doctest::Approx(at).epsilon(1e-8));
}

TEST_CASE("weighted_prime_sum rejects sigma outside its range") {
    CHECK_THROWS_AS(weighted_prime_sum(table(), 100, -0.1, false), DomainError);
    CHECK_THROWS_AS(weighted_prime_sum(table(), 100, 1.0 + 2.0 / std::log(100.0) + 1e-6, false), DomainError);
    CHECK_NOTHROW(weighted_prime_sum(table(), 100, 1.0 + 2.0 / std::log(100.0) - 1e-6, false));
}

TEST_CASE("mertens_product examples") {
    CHECK(mertens_product(table(), 2).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mertens_product(table(), 3).value == doctest::Approx(2.25).epsilon(1e-15));
    auto r = mertens_product(table(), 1'000'000);
    CHECK(r.main_term == doctest::Approx(std::numbers::pi / 4 * std::exp(kEulerGamma) * std::log(1e6)));
    CHECK(r.value / r.main_term >= 0.95);
    CHECK(r.value / r.main_term <= 1.05);
}

TEST_CASE("lambda_partial_sum examples") {
    auto a = lambda_partial_sum(table(), 3, 0.5, 0.0, false);
    CHECK(a.value.real() == doctest::Approx(std::log(2.0) / std::sqrt(2.0) + std::log(3.0) / std::sqrt(3.0)));
    CHECK(a.value.real() == doctest::Approx(1.1244).epsilon(1e-4));
    CHECK(a.value.imag() == 0.0);
    auto b = lambda_partial_sum(table(), 4, 0.5, 0.0, false);
    CHECK(b.value.real() == doctest::Approx(1.4710).epsilon(1e-4));
    auto c = lambda_partial_sum(table(), 2, 0.5, 0.0, true);
    CHECK(std::abs(c.value) == 0.0);
    auto d = lambda_partial_sum(table(), 100, 0.3, 2.0, false);
    const std::complex<double> s(0.3, -2.0);
    CHECK(std::abs(d.main_term - std::exp(s * std::log(100.0)) / s) < 1e-12);
}

TEST_CASE("lambda_partial_sum twist signs") {
    // n <= 9: Lambda terms at 2, 3, 4, 5, 7, 8, 9 with chi_4 = 0, -1, 0, 1, -1, 0, 1
    auto r = lambda_partial_sum(table(), 9, 0.5, 0.0, true);
    const double want = -std::log(3.0) / std::sqrt(3.0) + std::log(5.0) / std::sqrt(5.0) -
                        std::log(7.0) / std::sqrt(7.0) + std::log(3.0) / 3.0;
    CHECK(r.value.real() == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("lambda_cos_sum examples") {
    CHECK(lambda_cos_sum(table(), 10, 0.3, 0.0).value == 0.0);
    const double t1 = 1.0;
    CHECK(lambda_cos_sum(table(), 2, 0.5, t1).value ==
          doctest::Approx(std::log(2.0) / std::sqrt(2.0) * (1 - std::cos(std::log(2.0)))));
    const double t = std::numbers::pi / std::log(5.0);
    auto term = [&](double n, double lam, double w) { return lam * w * std::pow(n, -0.5) * (1 - std::cos(t * std::log(n))); };
    const double want = term(2, std::log(2.0), 1) + term(4, std::log(2.0), 1) + term(5, std::log(5.0), 2);
    auto r = lambda_cos_sum(table(), 5, 0.5, t);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-14));
    CHECK(r.value >= 4 * std::log(5.0) / std::sqrt(5.0));
    CHECK(lambda_cos_sum(table(), 1000, 0.4, 0.0).main_term == doctest::Approx(0.0));
}

TEST_CASE("theta is asymptotic to x") {
    double prev = 1e300;
    for (std::uint64_t x : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
        const double dev = std::fabs(theta(table(), x) / x - 1);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev <= 0.01);
    CHECK(std::fabs(theta_chi4(table(), 1'000'000)) <= 0.05 * 1e6);
}

TEST_CASE("weighted prime sum deviations stay inside the desk envelope") {
    for (double sigma : {0.5, 0.75, 1.0}) {
        auto r = weighted_prime_sum(table(), 1'000'000, sigma, false);
        CAPTURE(sigma);
        CHECK(std::fabs(r.deviation) <= 5 + std::pow(1e6, 1 - sigma) * 0.05);
    }
}

TEST_CASE("mertens ratio improves with x") {
    double prev = 1e300;
    for (std::uint64_t x : {1000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
        auto r = mertens_product(table(), x);
        const double dev = std::fabs(r.value / r.main_term - 1);
        CAPTURE(x);
        CHECK(dev <= 3 / std::log(static_cast<double>(x)));
        CHECK(dev < prev);
        prev = dev;
    }
}
