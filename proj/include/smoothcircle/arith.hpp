#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace smoothcircle {

using BigInt = boost::multiprecision::cpp_int;

// chi_4(n): 0 for even n, (-1)^((n-1)/2) for odd n.
constexpr int chi4(std::uint64_t n) {
    if (n % 2 == 0) return 0;
    return (n % 4 == 1) ? 1 : -1;
}

using Factorization = std::span<const std::pair<std::uint64_t, unsigned>>;

// r(n)/4 from the complete prime factorization of n. Throws DomainError when
// the factorization does not multiply out to n or contains a non-prime.
std::uint64_t r_over_4(std::uint64_t n, Factorization factorization);

// Brute-force count of (a, b) in Z^2 with a^2 + b^2 = n.
std::uint64_t lattice_r(std::uint64_t n);

// Local value of r/4 at p^e.
constexpr std::uint64_t r_over_4_local(int chi, unsigned e) {
    if (chi == 0) return 1;
    if (chi == 1) return e + 1;
    return (e % 2 == 0) ? 1 : 0;
}

enum class ExactMethod { sieve, recursive, automatic };

std::string_view to_string(ExactMethod m);
ExactMethod parse_exact_method(std::string_view s);

struct ExactOptions {
    ExactMethod method = ExactMethod::automatic;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::uint64_t node_budget = 1'000'000'000;
    // Largest x the segmented sieve accepts; time grows linearly in x.
    std::uint64_t sieve_max_x = 10'000'000'000ULL;
    // automatic picks the sieve for x up to this bound.
    std::uint64_t auto_sieve_below = 10'000'000;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ExactCount {
    BigInt x;
    std::uint64_t y = 0;
    BigInt value;              // sum of r(n) over n <= x with P(n) <= y; n = 1 included
    std::uint64_t terms = 0;   // smooth n <= x with r(n) > 0
    std::uint64_t nodes = 0;   // recursion nodes (recursive) or segments (sieve)
    ExactMethod method = ExactMethod::sieve;
};

// Exact Psi_G(x, y). Throws DomainError (x < 1, y < 2, or sieve requested
// beyond sieve_max_x), ResourceLimitError when the recursion exceeds its node
// budget, OverflowError if an internal accumulator would wrap.
ExactCount exact_psi_g(const BigInt& x, std::uint64_t y, const ExactOptions& opts = {});

}  // namespace smoothcircle
