#include "smoothcircle/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace smoothcircle {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const Cell& c) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, double>)
                return format_double(x);
            else if constexpr (std::is_same_v<T, Cell::Integer>)
                return x.digits;
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else
                return x;
        },
        c.v);
}

nlohmann::ordered_json json_field(const Cell& c) {
    return std::visit(
        [](const auto& x) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else if constexpr (std::is_same_v<T, double>)
                return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(format_double(x));
            else if constexpr (std::is_same_v<T, Cell::Integer>)
                return x.digits;
            else
                return x;
        },
        c.v);
}

}  // namespace

void write_report(std::ostream& out, const Report& r, OutputFormat fmt, const std::string& config_hash) {
    if (fmt == OutputFormat::csv) {
        out << "# smoothcircle " << kVersion << " config=" << config_hash << "\n";
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
        out << "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << "\n";
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["version"] = kVersion;
    doc["config_hash"] = config_hash;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) obj[r.columns[i]] = json_field(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << "\n";
}

}  // namespace smoothcircle
