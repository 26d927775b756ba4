#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "smoothcircle/config.hpp"

namespace smoothcircle {

inline constexpr const char* kVersion = "1.0.0";

// One output cell. Integers travel as decimal text so exact values survive.
struct Cell {
    struct Integer {
        std::string digits;
    };
    std::variant<std::monostate, double, Integer, std::string, bool> v;

    Cell() = default;
    Cell(double d) : v(d) {}
    Cell(bool b) : v(b) {}
    Cell(std::string s) : v(std::move(s)) {}
    Cell(const char* s) : v(std::string(s)) {}
    static Cell integer(std::string digits) {
        Cell c;
        c.v = Integer{std::move(digits)};
        return c;
    }
};

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

// CSV: "# smoothcircle <version> config=<hash>", the column line, then rows.
// JSON: {"version", "config_hash", "rows": [{column: value, ...}]}.
void write_report(std::ostream& out, const Report& r, OutputFormat fmt, const std::string& config_hash);

}  // namespace smoothcircle
