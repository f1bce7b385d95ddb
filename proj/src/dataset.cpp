#include "ridgeforge/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeforge/errors.hpp"
#include "ridgeforge/linalg.hpp"

namespace ridgeforge {

const char* transform_mode_name(TransformMode mode) {
    switch (mode) {
        case TransformMode::raw: return "raw";
        case TransformMode::center_y: return "center_y";
        case TransformMode::standardize_all: return "standardize_all";
    }
    return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line_no, std::size_t col_no) {
    cell = trim(cell);
    const std::string where = "line " + std::to_string(line_no) + ", column " +
                              std::to_string(col_no);
    if (cell.empty())
        throw DataError("csv parse error: empty cell at " + where);
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("csv parse error: non-numeric cell '" + std::string(cell) +
                        "' at " + where);
    if (!std::isfinite(value))
        throw DataError("csv parse error: non-finite value at " + where);
    return value;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

Dataset load_csv(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open data file: " + path);

    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        const auto fields = split(stripped, options.delimiter);
        if (line_no == 1 && options.header) {
            for (const auto& f : fields) names.emplace_back(trim(f));
            width = names.size();
            continue;
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw DataError("csv parse error: line " + std::to_string(line_no) +
                            " has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(width));
        std::vector<double> row(width);
        for (std::size_t j = 0; j < width; ++j)
            row[j] = parse_cell(fields[j], line_no, j + 1);
        rows.push_back(std::move(row));
    }

    if (rows.empty())
        throw DataError("no data rows in file: " + path);
    if (names.empty())
        for (std::size_t j = 0; j < width; ++j)
            names.push_back("c" + std::to_string(j + 1));

    // Locate the response column by name; default is the first column.
    std::size_t response_index = 0;
    if (!options.response.empty()) {
        bool found = false;
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (names[j] == options.response) {
                response_index = j;
                found = true;
                break;
            }
        }
        if (!found)
            throw DataError("response column '" + options.response +
                            "' not found in " + path);
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(width - 1);
    if (p < 1)
        throw DataError("file has no regressor columns: " + path);
    if (n <= p)
        throw DataError("too few rows: n = " + std::to_string(n) +
                        " must exceed p = " + std::to_string(p) + " in " + path);

    Dataset d;
    d.y.resize(n);
    d.x.resize(n, p);
    d.response_name = names[response_index];
    d.source_path = path;
    for (std::size_t j = 0; j < width; ++j)
        if (j != response_index) d.column_names.push_back(names[j]);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index col = 0;
        for (std::size_t j = 0; j < width; ++j) {
            if (j == response_index)
                d.y(i) = rows[static_cast<std::size_t>(i)][j];
            else
                d.x(i, col++) = rows[static_cast<std::size_t>(i)][j];
        }
    }
    return d;
}

namespace {

void ensure_x_factors(Dataset& d) {
    if (d.transform.x_origin.size() == d.p()) return;
    d.transform.x_origin = Eigen::VectorXd::Zero(d.p());
    d.transform.x_scale = Eigen::VectorXd::Ones(d.p());
}

} // namespace

Dataset apply_transform(const Dataset& d, TransformMode mode) {
    Dataset out = d;
    if (mode == TransformMode::raw) return out;

    if (mode == TransformMode::center_y) {
        const double mean = out.y.mean();
        out.y.array() -= mean;
        // Compose with whatever frame the data is already in:
        // y_cur = (y_raw - o) / s, so y_cur - m = (y_raw - (o + m s)) / s.
        out.transform.y_origin += mean * out.transform.y_scale;
        out.transform.mode = TransformMode::center_y;
        return out;
    }

    // standardize_all: zero mean and unit sum of squared deviations for the
    // response and every regressor, putting the Gram matrix in correlation
    // form and y'y = 1.
    const double y_mean = out.y.mean();
    out.y.array() -= y_mean;
    const double y_norm = out.y.norm();
    if (y_norm <= 0.0)
        throw DataError("standardize_all: response has zero variance");
    out.y /= y_norm;
    out.transform.y_origin += y_mean * out.transform.y_scale;
    out.transform.y_scale *= y_norm;

    ensure_x_factors(out);
    for (Eigen::Index j = 0; j < out.p(); ++j) {
        const double mean = out.x.col(j).mean();
        out.x.col(j).array() -= mean;
        const double norm = out.x.col(j).norm();
        if (norm <= 0.0)
            throw DataError("standardize_all: column '" + out.column_names[static_cast<std::size_t>(j)] +
                            "' has zero variance");
        out.x.col(j) /= norm;
        out.transform.x_origin(j) += mean * out.transform.x_scale(j);
        out.transform.x_scale(j) *= norm;
    }
    out.transform.mode = TransformMode::standardize_all;
    return out;
}

Dataset invert_transform(const Dataset& d) {
    Dataset out = d;
    out.y = d.y * d.transform.y_scale;
    out.y.array() += d.transform.y_origin;
    if (d.transform.x_origin.size() == d.p()) {
        for (Eigen::Index j = 0; j < d.p(); ++j) {
            out.x.col(j) = d.x.col(j) * d.transform.x_scale(j);
            out.x.col(j).array() += d.transform.x_origin(j);
        }
    }
    out.transform = TransformSpec{};
    return out;
}

OlsFit ols_fit(const Dataset& d) {
    const Eigen::Index n = d.n();
    const Eigen::Index p = d.p();
    if (n <= p)
        throw UsageError("ols_fit: need n > p, got n = " + std::to_string(n) +
                         ", p = " + std::to_string(p));

    const Eigen::MatrixXd gram = d.x.transpose() * d.x;
    const EigenSystem es = eigen_decompose(gram);
    require_full_rank(es);

    const Eigen::VectorXd xty = d.x.transpose() * d.y;
    const Eigen::VectorXd delta = es.vectors.transpose() * xty;
    const Eigen::VectorXd xi = delta.array() / es.values.array();

    OlsFit fit;
    fit.beta = es.vectors * xi;
    fit.fitted = d.x * fit.beta;
    fit.residuals = d.y - fit.fitted;
    fit.rss = fit.residuals.squaredNorm();
    fit.yty = d.y.squaredNorm();
    fit.sigma2 = fit.rss / static_cast<double>(n - p);
    fit.gof = fit.yty > 0.0 ? 1.0 - fit.rss / fit.yty : 0.0;
    return fit;
}

} // namespace ridgeforge
