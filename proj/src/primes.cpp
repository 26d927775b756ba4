#include "smoothcircle/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <string>

#include "smoothcircle/errors.hpp"

namespace smoothcircle {

namespace {

constexpr std::array<char, 8> kSpfMagic{'S', 'C', 'S', 'P', 'F', '\0', '\0', '\1'};

void write_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("spf cache: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (!composite[i]) out.push_back(i);
    return out;
}

PrimeTable::PrimeTable(std::uint64_t y_limit) : y_limit_(y_limit) {
    const auto ps = primes_upto(y_limit);
    entries_.reserve(ps.size());
    for (auto p : ps) {
        const int chi = (p == 2) ? 0 : (p % 4 == 1 ? 1 : -1);
        entries_.push_back({p, chi, std::log(static_cast<double>(p))});
    }
}

std::span<const PrimeEntry> PrimeTable::upto(std::uint64_t bound) const {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), bound,
                               [](std::uint64_t b, const PrimeEntry& e) { return b < e.p; });
    return {entries_.data(), static_cast<std::size_t>(it - entries_.begin())};
}

void PrimeTable::require_covers(std::uint64_t bound) const {
    if (bound > y_limit_)
        throw DomainError("prime table limit " + std::to_string(y_limit_) + " below required bound " +
                          std::to_string(bound));
}

SpfTable::SpfTable(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        // linear sieve: each composite is struck exactly once by its smallest prime
        for (auto p : primes) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

SpfTable::SpfTable(std::vector<std::uint32_t> spf) : spf_(std::move(spf)) {
    if (spf_.empty()) throw std::invalid_argument("spf table must have at least one entry");
}

std::vector<std::pair<std::uint64_t, unsigned>> SpfTable::factorize(std::uint32_t n) const {
    if (n == 0 || n > limit()) throw DomainError("factorize: n outside spf table");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

void SpfTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("spf cache: cannot open " + path.string() + " for writing");
    os.write(kSpfMagic.data(), kSpfMagic.size());
    write_u64_le(os, spf_.size());
    std::vector<unsigned char> buf(spf_.size() * 4);
    for (std::size_t i = 0; i < spf_.size(); ++i)
        for (int b = 0; b < 4; ++b) buf[4 * i + b] = static_cast<unsigned char>(spf_[i] >> (8 * b));
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw std::runtime_error("spf cache: write failed for " + path.string());
}

SpfTable SpfTable::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("spf cache: cannot open " + path.string());
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kSpfMagic)
        throw std::runtime_error("spf cache: bad magic in " + path.string());
    const std::uint64_t n = read_u64_le(is);
    if (n == 0 || n > (std::uint64_t{1} << 32)) throw std::runtime_error("spf cache: bad length");
    std::vector<unsigned char> buf(n * 4);
    if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
        throw std::runtime_error("spf cache: truncated payload in " + path.string());
    if (is.peek() != std::char_traits<char>::eof()) throw std::runtime_error("spf cache: trailing bytes");
    std::vector<std::uint32_t> spf(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(buf[4 * i + b]) << (8 * b);
        spf[i] = v;
    }
    return SpfTable(std::move(spf));
}

SpfTable SpfTable::cached(const std::filesystem::path& cache_dir, std::uint32_t limit) {
    if (cache_dir.empty()) return SpfTable(limit);
    const auto path = cache_dir / ("spf_" + std::to_string(limit) + ".bin");
    if (std::filesystem::exists(path)) {
        auto t = load(path);
        if (t.limit() == limit) return t;
    }
    SpfTable t(limit);
    std::filesystem::create_directories(cache_dir);
    t.save(path);
    return t;
}

}  // namespace smoothcircle
