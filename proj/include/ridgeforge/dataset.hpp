#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ridgeforge {

enum class TransformMode { raw, center_y, standardize_all };

const char* transform_mode_name(TransformMode mode);

// Affine bookkeeping for the fitted frame: y_model = (y_raw - y_origin) /
// y_scale, and likewise per regressor column. Enough to undo any transform.
struct TransformSpec {
    TransformMode mode = TransformMode::raw;
    double y_origin = 0.0;
    double y_scale = 1.0;
    Eigen::VectorXd x_origin;  // empty until standardize_all
    Eigen::VectorXd x_scale;
};

struct Dataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd x;
    std::vector<std::string> column_names;  // one per column of x
    std::string response_name;
    std::string source_path;
    TransformSpec transform;

    Eigen::Index n() const { return y.size(); }
    Eigen::Index p() const { return x.cols(); }
};

struct LoadOptions {
    bool header = true;
    char delimiter = ',';
    // Response column as a header name, or a 0-based index in string form
    // when there is no header. Empty selects the first column.
    std::string response;
};

Dataset load_csv(const std::string& path, const LoadOptions& options = {});

// Returns a copy of d in the requested frame, with transform metadata
// composed so the raw data can always be recovered. Reapplying the same mode
// is a no-op on the values (the second centering subtracts zero).
Dataset apply_transform(const Dataset& d, TransformMode mode);

// Undoes d.transform, restoring the raw frame.
Dataset invert_transform(const Dataset& d);

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    double sigma2 = 0.0;  // e'e / (n - p)
    double rss = 0.0;
    double yty = 0.0;
    double gof = 0.0;     // 1 - rss / y'y
};

OlsFit ols_fit(const Dataset& d);

} // namespace ridgeforge
