#include "ridgeforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace ridgeforge {

double round_significant(double v, int digits) {
    if (!std::isfinite(v)) return v;
    if (v == 0.0) return 0.0;  // also normalizes -0.0
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

std::string format_significant(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, round_significant(v, digits));
    return buf;
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_significant(v);
}

nlohmann::json json_vector(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json_number(v(i)));
    return arr;
}

std::string text_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) widths[j] = header[j].size();
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size() && j < widths.size(); ++j)
            widths[j] = std::max(widths[j], row[j].size());

    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t j = 0; j < widths.size(); ++j) {
            const std::string& cell = j < row.size() ? row[j] : std::string{};
            // First column left-aligned (labels), the rest right-aligned.
            if (j == 0) {
                out << cell << std::string(widths[j] - cell.size(), ' ');
            } else {
                out << std::string(widths[j] - cell.size(), ' ') << cell;
            }
            out << (j + 1 < widths.size() ? "  " : "");
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out.str();
}

} // namespace ridgeforge
