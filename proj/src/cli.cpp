#include "ridgeforge/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ridgeforge/bootstrap.hpp"
#include "ridgeforge/comparison.hpp"
#include "ridgeforge/dataset.hpp"
#include "ridgeforge/errors.hpp"
#include "ridgeforge/gof.hpp"
#include "ridgeforge/report.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/risk.hpp"
#include "ridgeforge/selection.hpp"
#include "ridgeforge/svg.hpp"
#include "ridgeforge/version.hpp"

namespace ridgeforge {

namespace {

using nlohmann::json;

double parse_double(const std::string& text, const std::string& what) {
    std::string_view s(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw UsageError("cannot parse " + what + ": '" + text + "'");
    return value;
}

long parse_long(const std::string& text, const std::string& what) {
    std::string_view s(text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw UsageError("cannot parse " + what + ": '" + text + "'");
    return value;
}

// --- shared dataset plumbing -------------------------------------------------

struct DatasetFlags {
    std::string path;
    std::string response;
    std::string delimiter = ",";
    bool no_header = false;
    bool center_y = false;
    bool standardize = false;
    bool raw = false;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& flags) {
    cmd->add_option("--data", flags.path, "Input CSV file")->required();
    cmd->add_option("--response", flags.response,
                    "Response column name (default: first column)");
    cmd->add_option("--delimiter", flags.delimiter, "Field delimiter");
    cmd->add_flag("--no-header", flags.no_header,
                  "Treat the first line as data, naming columns c1..cm");
    auto* center = cmd->add_flag("--center-y", flags.center_y,
                                 "Center the response before fitting");
    auto* standardize =
        cmd->add_flag("--standardize", flags.standardize,
                      "Standardize the response and every regressor");
    auto* raw = cmd->add_flag("--raw", flags.raw, "Fit the data as loaded");
    center->excludes(standardize)->excludes(raw);
    standardize->excludes(raw);
}

Dataset load_dataset(const DatasetFlags& flags) {
    if (flags.delimiter.size() != 1)
        throw UsageError("--delimiter must be a single character");
    LoadOptions options;
    options.header = !flags.no_header;
    options.delimiter = flags.delimiter[0];
    options.response = flags.response;
    Dataset d = load_csv(flags.path, options);
    if (flags.center_y) return apply_transform(d, TransformMode::center_y);
    if (flags.standardize)
        return apply_transform(d, TransformMode::standardize_all);
    return d;
}

json dataset_block(const Dataset& d) {
    return json{{"path", d.source_path},
                {"n", d.n()},
                {"p", d.p()},
                {"response", d.response_name},
                {"transform", transform_mode_name(d.transform.mode)}};
}

// --- shrinkage spec strings --------------------------------------------------

// Grammar: zero | uniform:K | single:L:K | percoord | file:PATH, with L
// 1-based.
struct SpecRequest {
    enum class Kind { zero, uniform, single, percoord, file };
    Kind kind = Kind::zero;
    double k = 0.0;
    Eigen::Index index = -1;  // 0-based after parsing
    std::string path;
};

SpecRequest parse_spec_request(const std::string& text) {
    SpecRequest req;
    if (text == "zero") {
        req.kind = SpecRequest::Kind::zero;
        return req;
    }
    if (text == "percoord") {
        req.kind = SpecRequest::Kind::percoord;
        return req;
    }
    if (text.rfind("uniform:", 0) == 0) {
        req.kind = SpecRequest::Kind::uniform;
        req.k = parse_double(text.substr(8), "shrinkage value");
        if (req.k < 0.0) throw UsageError("shrinkage value must be nonnegative");
        return req;
    }
    if (text.rfind("single:", 0) == 0) {
        const std::string rest = text.substr(7);
        const std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw UsageError("spec 'single' needs a coordinate and a value, "
                             "like single:10:0.077");
        const long coordinate = parse_long(rest.substr(0, colon), "coordinate");
        if (coordinate < 1)
            throw UsageError("coordinates are 1-based, got " +
                             std::to_string(coordinate));
        req.kind = SpecRequest::Kind::single;
        req.index = coordinate - 1;
        req.k = parse_double(rest.substr(colon + 1), "shrinkage value");
        if (req.k < 0.0) throw UsageError("shrinkage value must be nonnegative");
        return req;
    }
    if (text.rfind("file:", 0) == 0) {
        req.kind = SpecRequest::Kind::file;
        req.path = text.substr(5);
        if (req.path.empty()) throw UsageError("spec 'file' needs a path");
        return req;
    }
    throw UsageError(
        "cannot parse spec '" + text +
        "'; expected zero | uniform:K | single:L:K | percoord | file:PATH");
}

Eigen::VectorXd read_spec_file(const std::string& path, Eigen::Index p) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open spec file: " + path);
    std::vector<double> values;
    std::string token;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        while (fields >> token) values.push_back(parse_double(token, "spec file value"));
    }
    if (static_cast<Eigen::Index>(values.size()) != p)
        throw DataError("spec file " + path + " has " +
                        std::to_string(values.size()) + " values, expected " +
                        std::to_string(p));
    return Eigen::Map<Eigen::VectorXd>(values.data(),
                                       static_cast<Eigen::Index>(values.size()));
}

ShrinkageSpec resolve_spec(const SpecRequest& req, const CanonicalForm& c,
                           double sigma2) {
    switch (req.kind) {
        case SpecRequest::Kind::zero:
            return ShrinkageSpec::zero(c.p());
        case SpecRequest::Kind::uniform:
            return ShrinkageSpec::uniform(c.p(), req.k);
        case SpecRequest::Kind::single:
            return ShrinkageSpec::single(c.p(), req.index, req.k);
        case SpecRequest::Kind::percoord:
            return per_coordinate(c, sigma2, c.xi_hat).spec;
        case SpecRequest::Kind::file:
            return ShrinkageSpec::general(read_spec_file(req.path, c.p()));
    }
    throw UsageError("unhandled spec kind");
}

json spec_block(const ShrinkageSpec& spec) {
    json block{{"kind", shrinkage_kind_name(spec.kind)},
               {"description", describe(spec)},
               {"k", json_vector(spec.k)}};
    if (spec.kind == ShrinkageSpec::Kind::single)
        block["coordinate"] = spec.single_index + 1;
    return block;
}

// --- output helpers ----------------------------------------------------------

struct OutputFlags {
    bool as_json = false;
    bool as_text = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
    auto* j = cmd->add_flag("--json", flags.as_json, "Emit a JSON report");
    auto* t = cmd->add_flag("--text", flags.as_text,
                            "Emit an aligned text report (default)");
    j->excludes(t);
}

json report_envelope(const char* command, const Dataset& d) {
    return json{{"command", command},
                {"version", version_string},
                {"dataset", dataset_block(d)}};
}

void emit(const json& report, const std::string& text, const OutputFlags& flags,
          std::ostream& out) {
    if (flags.as_json)
        out << report.dump(2) << '\n';
    else
        out << text;
}

std::string fmt(double v) { return format_significant(v); }

// Plug-in error variance: the caller's override if given, else the unshrunk
// fit's estimate.
double checked_sigma2(const std::optional<double>& override_value,
                      double fallback) {
    const double sigma2 = override_value.value_or(fallback);
    if (!std::isfinite(sigma2) || sigma2 < 0.0)
        throw UsageError("sigma2 must be finite and nonnegative, got " +
                         std::to_string(sigma2));
    return sigma2;
}

// --- fit ---------------------------------------------------------------------

struct FitArgs {
    DatasetFlags data;
    OutputFlags output;
    std::string spec_text;
    std::optional<double> sigma2;
};

int cmd_fit(const FitArgs& args, std::ostream& out) {
    const SpecRequest request = parse_spec_request(args.spec_text);
    const Dataset d = load_dataset(args.data);
    const OlsFit ols = ols_fit(d);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = args.sigma2.value_or(ols.sigma2);
    if (!(sigma2 > 0.0))
        throw UsageError("sigma2 must be positive, got " + std::to_string(sigma2));

    const ShrinkageSpec spec = resolve_spec(request, c, sigma2);
    const RidgeFit fit = ridge_fit(c, d, spec, sigma2);
    const RiskProfile risk = mse_of(c, spec, sigma2, c.xi_hat);
    const GofReport gof = gof_of(c, d, fit);

    // Squared distance from the unshrunk coefficients, in spectral form.
    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd k = spec.k.array();
    const double diff2 =
        (c.xi_hat.array().square() * (k / (lambda + k)).square()).sum();

    json report = report_envelope("fit", d);
    report["spec"] = spec_block(spec);
    report["sigma2"] = json_number(sigma2);
    report["coefficients"] = json_vector(fit.beta);
    report["ols_coefficients"] = json_vector(ols.beta);
    report["norm2"] = json_number(fit.norm2);
    report["diff_from_ols2"] = json_number(diff2);
    report["mse"] = json{{"value", json_number(risk.mse)},
                         {"variance_part", json_number(risk.variance_part)},
                         {"bias_part", json_number(risk.bias_part)},
                         {"ols", json_number(mse_ols(c, sigma2))}};
    report["gof"] = json{{"value", json_number(gof.value)},
                         {"augmented", json_number(gof.augmented_value)},
                         {"tss", json_number(gof.tss)},
                         {"rss", json_number(gof.rss)},
                         {"raw_frame", gof.raw_frame}};

    std::ostringstream text;
    text << "fit: " << describe(spec) << "  (" << d.source_path << ", n=" << d.n()
         << ", p=" << d.p() << ", " << transform_mode_name(d.transform.mode)
         << ")\n";
    text << "sigma2: " << fmt(sigma2) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index j = 0; j < d.p(); ++j)
        rows.push_back({d.column_names[static_cast<std::size_t>(j)],
                        fmt(ols.beta(j)), fmt(fit.beta(j))});
    text << text_table({"coefficient", "unshrunk", "shrunk"}, rows) << '\n';
    text << "norm2:          " << fmt(fit.norm2) << '\n';
    text << "diff_from_ols2: " << fmt(diff2) << '\n';
    text << "mse:            " << fmt(risk.mse) << "  (variance " << fmt(risk.variance_part)
         << ", bias " << fmt(risk.bias_part) << ")\n";
    text << "gof:            " << fmt(gof.value) << "  (augmented "
         << fmt(gof.augmented_value) << ")\n";
    if (gof.raw_frame)
        text << "note: data fitted in its raw frame; gof is not a centered R^2\n";

    emit(report, text.str(), args.output, out);
    return 0;
}

// --- trace -------------------------------------------------------------------

struct TraceArgs {
    DatasetFlags data;
    OutputFlags output;
    std::string mode_text = "uniform";
    std::string grid_text = "0:1:1e-5";
    std::string prefix;
    bool svg = false;
    std::optional<double> sigma2;
};

Grid parse_grid(const std::string& text) {
    const std::size_t first = text.find(':');
    const std::size_t second =
        first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw UsageError("cannot parse grid '" + text +
                         "'; expected START:STOP:STEP");
    Grid grid;
    grid.start = parse_double(text.substr(0, first), "grid start");
    grid.stop = parse_double(text.substr(first + 1, second - first - 1), "grid stop");
    grid.step = parse_double(text.substr(second + 1), "grid step");
    return grid;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<double>& k,
               const std::vector<const double*>& columns) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << header << '\n';
    char buf[32];
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", k[i]);
        out << buf;
        for (const double* column : columns) {
            std::snprintf(buf, sizeof(buf), "%.17g", column[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("failed while writing file: " + path);
}

int cmd_trace(const TraceArgs& args, std::ostream& out) {
    TraceMode mode = TraceMode::uniform;
    Eigen::Index single_index = -1;
    if (args.mode_text.rfind("single:", 0) == 0) {
        const long coordinate =
            parse_long(args.mode_text.substr(7), "trace coordinate");
        if (coordinate < 1)
            throw UsageError("coordinates are 1-based, got " +
                             std::to_string(coordinate));
        mode = TraceMode::single;
        single_index = coordinate - 1;
    } else if (args.mode_text != "uniform") {
        throw UsageError("cannot parse mode '" + args.mode_text +
                         "'; expected uniform or single:L");
    }

    const Grid grid = parse_grid(args.grid_text);
    const Dataset d = load_dataset(args.data);
    const OlsFit ols = ols_fit(d);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = checked_sigma2(args.sigma2, ols.sigma2);

    const TraceSeries series =
        trace_series(c, mode, single_index, grid, sigma2, c.xi_hat);

    const std::string coef_path = args.prefix + "_coefficients.csv";
    const std::string norm_path = args.prefix + "_norm.csv";
    const std::string mse_path = args.prefix + "_mse.csv";
    const std::string gof_path = args.prefix + "_gof.csv";

    std::string coef_header = "k";
    for (const auto& name : d.column_names) coef_header += "," + name;
    std::vector<const double*> beta_columns;
    for (Eigen::Index j = 0; j < d.p(); ++j)
        beta_columns.push_back(series.beta.col(j).data());
    write_csv(coef_path, coef_header, series.k, beta_columns);
    write_csv(norm_path, "k,norm2", series.k, {series.norm2.data()});
    write_csv(mse_path, "k,mse", series.k, {series.mse.data()});
    write_csv(gof_path, "k,gof", series.k, {series.gof.data()});

    std::vector<std::string> files{coef_path, norm_path, mse_path, gof_path};
    if (args.svg) {
        // Reference markers show the unshrunk value: dashed line plus a
        // point at the k = 0 end.
        auto curve_chart = [&](const std::string& path,
                               const std::vector<double>& values,
                               const char* title, const char* y_label,
                               double reference) {
            SvgSeries line{"", series.k, values};
            SvgOptions options;
            options.title = title;
            options.x_label = "k";
            options.y_label = y_label;
            options.reference_line = true;
            options.reference_value = reference;
            options.reference_point = true;
            options.reference_x = series.k.front();
            options.reference_y = reference;
            write_line_chart(path, {line}, options);
            files.push_back(path);
        };
        const double ols_norm2 = ols.beta.squaredNorm();
        curve_chart(args.prefix + "_norm.svg", series.norm2, "Coefficient norm",
                    "norm2", ols_norm2);
        curve_chart(args.prefix + "_mse.svg", series.mse, "Estimator MSE", "mse",
                    mse_ols(c, sigma2));
        curve_chart(args.prefix + "_gof.svg", series.gof, "Goodness of fit",
                    "gof", gof_value(c, ShrinkageSpec::zero(c.p())));

        std::vector<SvgSeries> coef_series;
        for (Eigen::Index j = 0; j < d.p(); ++j) {
            std::vector<double> column(series.k.size());
            for (std::size_t i = 0; i < series.k.size(); ++i)
                column[i] = series.beta(static_cast<Eigen::Index>(i), j);
            coef_series.push_back({d.column_names[static_cast<std::size_t>(j)],
                                   series.k, std::move(column)});
        }
        SvgOptions options;
        options.title = "Coefficient trace";
        options.x_label = "k";
        options.y_label = "coefficient";
        const std::string coef_svg = args.prefix + "_coefficients.svg";
        write_line_chart(coef_svg, coef_series, options);
        files.push_back(coef_svg);
    }

    json report = report_envelope("trace", d);
    report["mode"] = mode == TraceMode::uniform
                         ? json("uniform")
                         : json("single:" + std::to_string(single_index + 1));
    report["grid"] = json{{"start", json_number(grid.start)},
                          {"stop", json_number(grid.stop)},
                          {"step", json_number(grid.step)},
                          {"points", series.k.size()}};
    report["sigma2"] = json_number(sigma2);
    report["files"] = files;

    std::ostringstream text;
    text << "trace: " << args.mode_text << " over [" << fmt(grid.start) << ", "
         << fmt(grid.stop) << "] step " << fmt(grid.step) << " ("
         << series.k.size() << " points)\n";
    for (const auto& file : files) text << "wrote " << file << '\n';

    emit(report, text.str(), args.output, out);
    return 0;
}

// --- select ------------------------------------------------------------------

struct SelectArgs {
    DatasetFlags data;
    OutputFlags output;
    std::string rule_text;
    std::string grid_text = "0:1:1e-5";
    bool exhaustive = false;
    std::optional<double> sigma2;
};

int cmd_select(const SelectArgs& args, std::ostream& out) {
    const Dataset d = load_dataset(args.data);
    const OlsFit ols = ols_fit(d);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = checked_sigma2(args.sigma2, ols.sigma2);

    json report = report_envelope("select", d);
    report["sigma2"] = json_number(sigma2);
    std::ostringstream text;

    if (args.rule_text == "table1") {
        // One row per coordinate: the single-coordinate minimizer, the MSE
        // it attains, and whether the curve stays below the unshrunk MSE.
        const auto table = single_min_table(c, sigma2, c.xi_hat);
        report["rule"] = "table1";
        report["mse_ols"] = json_number(mse_ols(c, sigma2));
        json rows = json::array();
        std::vector<std::vector<std::string>> lines;
        for (const auto& row : table) {
            rows.push_back(json{{"coordinate", row.index + 1},
                                {"k", json_number(row.k)},
                                {"mse", json_number(row.mse)},
                                {"always_below_ols", row.always_below_ols}});
            lines.push_back({std::to_string(row.index + 1), fmt(row.k),
                             fmt(row.mse),
                             row.always_below_ols ? "TRUE" : "FALSE"});
        }
        report["rows"] = rows;
        text << "rule: table1  (mse of unshrunk fit " << fmt(mse_ols(c, sigma2))
             << ")\n";
        text << text_table({"coordinate", "k", "mse", "always_below_ols"}, lines);
        emit(report, text.str(), args.output, out);
        return 0;
    }

    SelectionResult result;
    if (args.rule_text == "hkb") {
        result = k_hkb(ols);
    } else if (args.rule_text == "hk") {
        result = k_hk(c, sigma2, c.xi_hat);
    } else if (args.rule_text == "gridmin") {
        result = k_grid_min(c, sigma2, c.xi_hat, parse_grid(args.grid_text),
                            args.exhaustive);
    } else if (args.rule_text == "percoord") {
        result = per_coordinate(c, sigma2, c.xi_hat);
    } else if (args.rule_text.rfind("singlemin:", 0) == 0) {
        const long coordinate =
            parse_long(args.rule_text.substr(10), "coordinate");
        if (coordinate < 1)
            throw UsageError("coordinates are 1-based, got " +
                             std::to_string(coordinate));
        result = single_min(c, coordinate - 1, sigma2, c.xi_hat);
    } else {
        throw UsageError(
            "unknown rule '" + args.rule_text +
            "'; expected hkb|hk|gridmin|percoord|singlemin:L|table1");
    }

    report["rule"] = selection_rule_name(result.rule);
    report["spec"] = spec_block(result.spec);
    text << "rule: " << selection_rule_name(result.rule) << '\n';
    switch (result.rule) {
        case SelectionRule::hkb:
        case SelectionRule::hk:
            report["k"] = json_number(result.k);
            text << "k: " << fmt(result.k) << '\n';
            break;
        case SelectionRule::grid_min:
            report["k"] = json_number(result.k);
            report["grid_index"] = result.grid_index;
            report["mse"] = json_number(result.mse_at_selection);
            report["mse_neighbors"] = json{{"before", json_number(result.mse_before)},
                                           {"after", json_number(result.mse_after)}};
            report["hit_grid_end"] = result.hit_grid_end;
            text << "k: " << fmt(result.k) << "  (grid index "
                 << result.grid_index << ", mse " << fmt(result.mse_at_selection)
                 << ")\n";
            if (result.hit_grid_end)
                text << "note: mse never rose before the end of the grid\n";
            break;
        case SelectionRule::per_coordinate:
            report["mse"] = json_number(result.mse_at_selection);
            text << "k: per-coordinate (see spec)\nmse: "
                 << fmt(result.mse_at_selection) << '\n';
            break;
        case SelectionRule::single_min:
            report["coordinate"] = result.index + 1;
            report["k"] = json_number(result.k);
            report["mse"] = json_number(result.mse_at_selection);
            report["always_below_ols"] = result.always_below_ols;
            text << "coordinate: " << result.index + 1 << "\nk: " << fmt(result.k)
                 << "\nmse: " << fmt(result.mse_at_selection)
                 << "\nalways_below_ols: "
                 << (result.always_below_ols ? "TRUE" : "FALSE") << '\n';
            break;
    }

    emit(report, text.str(), args.output, out);
    return 0;
}

// --- bootstrap ---------------------------------------------------------------

struct BootstrapArgs {
    DatasetFlags data;
    OutputFlags output;
    std::string spec_text;
    long replicates = 10000;
    std::uint64_t seed = 0;
    double level = 0.95;
    int threads = 0;
    std::optional<double> sigma2;
};

int cmd_bootstrap(const BootstrapArgs& args, std::ostream& out) {
    const SpecRequest request = parse_spec_request(args.spec_text);
    const Dataset d = load_dataset(args.data);
    const OlsFit ols = ols_fit(d);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = checked_sigma2(args.sigma2, ols.sigma2);
    const ShrinkageSpec spec = resolve_spec(request, c, sigma2);

    BootstrapConfig cfg;
    cfg.replicates = args.replicates;
    cfg.seed = args.seed;
    cfg.level = args.level;
    cfg.threads = args.threads;
    const BootstrapSummary summary = bootstrap_intervals(d, spec, cfg);

    json report = report_envelope("bootstrap", d);
    report["spec"] = spec_block(spec);
    report["replicates"] = cfg.replicates;
    report["replicates_used"] = summary.replicates_used;
    report["replicates_discarded"] = summary.replicates_discarded;
    report["level"] = json_number(summary.level);
    report["seed"] = summary.seed;
    json coefficients = json::array();
    for (Eigen::Index j = 0; j < d.p(); ++j)
        coefficients.push_back(
            json{{"name", d.column_names[static_cast<std::size_t>(j)]},
                 {"point", json_number(summary.point(j))},
                 {"lower", json_number(summary.lower(j))},
                 {"upper", json_number(summary.upper(j))},
                 {"significant",
                  bool(summary.significant[static_cast<std::size_t>(j)])}});
    report["coefficients"] = coefficients;
    report["gof"] = json{{"point", json_number(summary.gof_point)},
                         {"lower", json_number(summary.gof_lower)},
                         {"upper", json_number(summary.gof_upper)}};

    std::ostringstream text;
    text << "bootstrap: " << describe(spec) << ", m=" << cfg.replicates
         << ", level=" << fmt(summary.level) << ", seed=" << summary.seed
         << '\n';
    if (summary.replicates_discarded > 0)
        text << "discarded " << summary.replicates_discarded
             << " rank-deficient replicates\n";
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index j = 0; j < d.p(); ++j)
        rows.push_back(
            {d.column_names[static_cast<std::size_t>(j)],
             fmt(summary.point(j)), fmt(summary.lower(j)), fmt(summary.upper(j)),
             summary.significant[static_cast<std::size_t>(j)] ? "*" : ""});
    text << text_table({"coefficient", "point", "lower", "upper", "sig"}, rows);
    text << "gof: " << fmt(summary.gof_point) << "  [" << fmt(summary.gof_lower)
         << ", " << fmt(summary.gof_upper) << "]\n";

    emit(report, text.str(), args.output, out);
    return 0;
}

// --- compare -----------------------------------------------------------------

struct CompareArgs {
    DatasetFlags data;
    OutputFlags output;
    std::string challenger_text;
    std::string incumbent_text;
    bool suite = false;
    std::optional<double> sigma2;
};

json verdict_block(const DominanceVerdict& verdict) {
    json block{{"challenger", describe(verdict.challenger)},
               {"incumbent", describe(verdict.incumbent)},
               {"verdict", dominance_tag_name(verdict.tag)},
               {"strictly_pd", verdict.strictly_pd},
               {"psd", verdict.psd},
               {"diagonal", json_vector(verdict.diagonal)}};
    if (verdict.condition_evaluated) {
        block["condition_value"] = json_number(verdict.condition_value);
        block["sigma2"] = json_number(verdict.sigma2);
    }
    return block;
}

int cmd_compare(const CompareArgs& args, std::ostream& out) {
    const Dataset d = load_dataset(args.data);
    const OlsFit ols = ols_fit(d);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = checked_sigma2(args.sigma2, ols.sigma2);

    json report = report_envelope("compare", d);
    std::ostringstream text;

    if (args.suite) {
        // Standard pairings: the per-coordinate spec, the best
        // single-coordinate spec, and the three uniform selection rules.
        const ShrinkageSpec percoord_spec =
            per_coordinate(c, sigma2, c.xi_hat).spec;
        const auto table = single_min_table(c, sigma2, c.xi_hat);
        Eigen::Index best = 0;
        for (Eigen::Index l = 1; l < c.p(); ++l)
            if (table[static_cast<std::size_t>(l)].mse <
                table[static_cast<std::size_t>(best)].mse)
                best = l;
        const ShrinkageSpec single_spec = ShrinkageSpec::single(
            c.p(), best, table[static_cast<std::size_t>(best)].k);
        const std::vector<std::pair<std::string, double>> uniforms{
            {"hkb", k_hkb(ols).k},
            {"hk", k_hk(c, sigma2, c.xi_hat).k},
            {"gridmin", k_grid_min(c, sigma2, c.xi_hat, Grid{}).k}};

        const auto checks =
            corollary_checks(c, percoord_spec, single_spec, uniforms);
        json list = json::array();
        std::vector<std::vector<std::string>> rows;
        for (const auto& [label, verdict] : checks) {
            json entry = verdict_block(verdict);
            entry["label"] = label;
            list.push_back(entry);
            rows.push_back({label, dominance_tag_name(verdict.tag),
                            verdict.strictly_pd ? "TRUE" : "FALSE",
                            verdict.psd ? "TRUE" : "FALSE"});
        }
        report["suite"] = list;
        report["single_coordinate"] = best + 1;
        text << "comparison suite (best single coordinate: " << best + 1
             << ")\n";
        text << text_table({"pairing", "verdict", "strictly_pd", "psd"}, rows);
        emit(report, text.str(), args.output, out);
        return 0;
    }

    if (args.challenger_text.empty() || args.incumbent_text.empty())
        throw UsageError(
            "compare needs --challenger and --incumbent, or --suite");
    const ShrinkageSpec challenger =
        resolve_spec(parse_spec_request(args.challenger_text), c, sigma2);
    const ShrinkageSpec incumbent =
        resolve_spec(parse_spec_request(args.incumbent_text), c, sigma2);
    const DominanceVerdict verdict = compare_specs(c, challenger, incumbent);

    report["comparison"] = verdict_block(verdict);
    text << "challenger: " << describe(challenger) << '\n';
    text << "incumbent:  " << describe(incumbent) << '\n';
    text << "verdict: " << dominance_tag_name(verdict.tag) << "  (strictly_pd "
         << (verdict.strictly_pd ? "TRUE" : "FALSE") << ", psd "
         << (verdict.psd ? "TRUE" : "FALSE") << ")\n";
    text << "diagonal:";
    for (Eigen::Index i = 0; i < verdict.diagonal.size(); ++i)
        text << ' ' << fmt(verdict.diagonal(i));
    text << '\n';

    emit(report, text.str(), args.output, out);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Generalized ridge regression: estimation, risk analysis, "
                 "shrinkage selection, dominance tests, and bootstrap "
                 "intervals"};
    app.set_version_flag("--version", std::string("ridgeforge ") + version_string);
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand(
        "fit", "Fit the shrinkage estimator for one spec");
    add_dataset_flags(fit_cmd, fit_args.data);
    add_output_flags(fit_cmd, fit_args.output);
    fit_cmd->add_option("--spec", fit_args.spec_text,
                        "zero | uniform:K | single:L:K | percoord | file:PATH")
        ->required();
    fit_cmd->add_option("--sigma2", fit_args.sigma2,
                        "Error variance override (default: estimated)");

    TraceArgs trace_args;
    auto* trace_cmd = app.add_subcommand(
        "trace", "Evaluate coefficient/norm/mse/gof curves over a grid");
    add_dataset_flags(trace_cmd, trace_args.data);
    add_output_flags(trace_cmd, trace_args.output);
    trace_cmd->add_option("--mode", trace_args.mode_text, "uniform | single:L");
    trace_cmd->add_option("--grid", trace_args.grid_text, "START:STOP:STEP");
    trace_cmd->add_option("--out", trace_args.prefix, "Output file prefix")
        ->required();
    trace_cmd->add_flag("--svg", trace_args.svg, "Also write SVG charts");
    trace_cmd->add_option("--sigma2", trace_args.sigma2,
                          "Error variance override");

    SelectArgs select_args;
    auto* select_cmd =
        app.add_subcommand("select", "Choose shrinkage values by rule");
    add_dataset_flags(select_cmd, select_args.data);
    add_output_flags(select_cmd, select_args.output);
    select_cmd->add_option("--rule", select_args.rule_text,
                           "hkb | hk | gridmin | percoord | singlemin:L | table1")
        ->required();
    select_cmd->add_option("--grid", select_args.grid_text,
                           "Grid for gridmin (START:STOP:STEP)");
    select_cmd->add_flag("--exhaustive", select_args.exhaustive,
                         "Scan the whole grid instead of stopping at the "
                         "first rise");
    select_cmd->add_option("--sigma2", select_args.sigma2,
                           "Error variance override");

    BootstrapArgs bootstrap_args;
    auto* bootstrap_cmd = app.add_subcommand(
        "bootstrap", "Percentile intervals by pairs resampling");
    add_dataset_flags(bootstrap_cmd, bootstrap_args.data);
    add_output_flags(bootstrap_cmd, bootstrap_args.output);
    bootstrap_cmd->add_option("--spec", bootstrap_args.spec_text,
                              "Shrinkage spec held fixed across replicates")
        ->required();
    bootstrap_cmd->add_option("--m", bootstrap_args.replicates,
                              "Replicate count");
    bootstrap_cmd->add_option("--seed", bootstrap_args.seed, "RNG seed");
    bootstrap_cmd->add_option("--level", bootstrap_args.level,
                              "Confidence level");
    bootstrap_cmd->add_option("--threads", bootstrap_args.threads,
                              "Worker threads (default: RIDGEFORGE_THREADS "
                              "or hardware)");
    bootstrap_cmd->add_option("--sigma2", bootstrap_args.sigma2,
                              "Error variance override");

    CompareArgs compare_args;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Matrix-MSE dominance verdict between two specs");
    add_dataset_flags(compare_cmd, compare_args.data);
    add_output_flags(compare_cmd, compare_args.output);
    auto* challenger_opt = compare_cmd->add_option(
        "--challenger", compare_args.challenger_text, "Challenger spec");
    auto* incumbent_opt = compare_cmd->add_option(
        "--incumbent", compare_args.incumbent_text, "Incumbent spec");
    auto* suite_flag = compare_cmd->add_flag(
        "--suite", compare_args.suite,
        "Run the standard pairings against the fitted selection rules");
    suite_flag->excludes(challenger_opt)->excludes(incumbent_opt);
    challenger_opt->needs(incumbent_opt);
    incumbent_opt->needs(challenger_opt);
    compare_cmd->add_option("--sigma2", compare_args.sigma2,
                            "Error variance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help or --version.
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (fit_cmd->parsed()) code = cmd_fit(fit_args, out);
        else if (trace_cmd->parsed()) code = cmd_trace(trace_args, out);
        else if (select_cmd->parsed()) code = cmd_select(select_args, out);
        else if (bootstrap_cmd->parsed()) code = cmd_bootstrap(bootstrap_args, out);
        else if (compare_cmd->parsed()) code = cmd_compare(compare_args, out);
        else {
            err << "error: no command given\n";
            return 2;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    // Timing stays on stderr so reports are byte-identical across runs.
    err << "elapsed: " << elapsed.count() << " ms\n";
    return code;
}

} // namespace ridgeforge
