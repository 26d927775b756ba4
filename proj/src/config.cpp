#include "smoothcircle/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace smoothcircle {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_positive_int(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || out == 0)
        throw std::invalid_argument("config: " + std::string(key) + " must be a positive integer");
    return out;
}

double parse_positive_double(std::string_view key, std::string_view v) {
    const std::string s(v);
    std::size_t used = 0;
    double out = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(out > 0.0) || !std::isfinite(out))
        throw std::invalid_argument("config: " + std::string(key) + " must be a positive number");
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("output_format must be csv or json");
}

void Config::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "sieve_segment_size")
        sieve_segment_size = parse_positive_int(key, value);
    else if (key == "node_budget")
        node_budget = parse_positive_int(key, value);
    else if (key == "residual_tol")
        residual_tol = parse_positive_double(key, value);
    else if (key == "epsilon0")
        epsilon0 = parse_positive_double(key, value);
    else if (key == "lambda")
        lambda = parse_positive_double(key, value);
    else if (key == "cache_dir")
        cache_dir = std::string(value);
    else if (key == "output_format")
        output_format = parse_output_format(value);
    else if (key == "threads")
        threads = static_cast<unsigned>(parse_positive_int(key, value));
    else
        throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key=value");
        c.set(trim(t.substr(0, eq)), t.substr(eq + 1));
    }
    c.validate();
    return c;
}

void Config::validate() const {
    if (sieve_segment_size == 0 || node_budget == 0 || !(residual_tol > 0) || !(epsilon0 > 0) || !(lambda > 0))
        throw std::invalid_argument("config: numeric fields must be positive");
    if (!(lambda < 1.0)) throw std::invalid_argument("config: lambda must lie in (0, 1)");
}

std::string Config::canonical() const {
    std::string s;
    s += "sieve_segment_size=" + std::to_string(sieve_segment_size) + "\n";
    s += "node_budget=" + std::to_string(node_budget) + "\n";
    s += "residual_tol=" + fmt_double(residual_tol) + "\n";
    s += "epsilon0=" + fmt_double(epsilon0) + "\n";
    s += "lambda=" + fmt_double(lambda) + "\n";
    s += "cache_dir=" + cache_dir + "\n";
    s += "output_format=" + std::string(to_string(output_format)) + "\n";
    return s;
}

std::string Config::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace smoothcircle
