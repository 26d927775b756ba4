#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace smoothcircle {

struct PrimeEntry {
    std::uint64_t p;
    int chi;       // chi_4(p): 0 at p = 2, +1 for p = 1 mod 4, -1 for p = 3 mod 4
    double logp;
};

// Every prime p <= y_limit in increasing order, with chi_4(p) and log p.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t y_limit);

    std::uint64_t y_limit() const { return y_limit_; }
    std::span<const PrimeEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Entries with p <= bound (bound may be below y_limit).
    std::span<const PrimeEntry> upto(std::uint64_t bound) const;

    // Throws DomainError unless the table covers every prime <= bound.
    void require_covers(std::uint64_t bound) const;

private:
    std::uint64_t y_limit_;
    std::vector<PrimeEntry> entries_;
};

// Plain sieve of Eratosthenes; primes <= n ascending.
std::vector<std::uint64_t> primes_upto(std::uint64_t n);

// Smallest-prime-factor table: spf[n] for 0 <= n <= limit (spf[0] = spf[1] = 0).
class SpfTable {
public:
    explicit SpfTable(std::uint32_t limit);
    explicit SpfTable(std::vector<std::uint32_t> spf);

    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t operator[](std::uint32_t n) const { return spf_[n]; }
    std::span<const std::uint32_t> data() const { return spf_; }

    // Prime factorization (p, exponent) ascending; empty for n = 1.
    std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint32_t n) const;

    // Disk cache: 8-byte magic "SCSPF\0\0\1", u64 entry count, then u32 LE per entry.
    void save(const std::filesystem::path& path) const;
    static SpfTable load(const std::filesystem::path& path);

    // Load from cache_dir/spf_<limit>.bin when present, else build and write it.
    static SpfTable cached(const std::filesystem::path& cache_dir, std::uint32_t limit);

private:
    std::vector<std::uint32_t> spf_;
};

}  // namespace smoothcircle
