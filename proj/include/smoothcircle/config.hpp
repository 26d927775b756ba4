#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace smoothcircle {

enum class OutputFormat { csv, json };

struct Config {
    std::uint64_t sieve_segment_size = std::uint64_t{1} << 20;
    std::uint64_t node_budget = 1'000'000'000;
    double residual_tol = 1e-10;
    double epsilon0 = 0.1;
    double lambda = 0.25;
    std::string cache_dir;
    OutputFormat output_format = OutputFormat::csv;
    // Worker threads, 0 = hardware concurrency. Left out of hash(): results
    // do not depend on it.
    unsigned threads = 0;

    // Applies one key=value setting; throws std::invalid_argument on an unknown
    // key or a malformed / non-positive value.
    void set(std::string_view key, std::string_view value);

    // Reads key=value lines; blank lines and lines starting with '#' are skipped.
    static Config load(const std::filesystem::path& path);

    void validate() const;

    // Canonical key=value text of every result-affecting field.
    std::string canonical() const;
    // 64-bit FNV-1a of canonical(), as 16 hex digits.
    std::string hash() const;
};

std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view s);

}  // namespace smoothcircle
