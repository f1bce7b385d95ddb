#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ridgeforge/bootstrap.hpp"
#include "ridgeforge/comparison.hpp"
#include "ridgeforge/dataset.hpp"
#include "ridgeforge/errors.hpp"
#include "ridgeforge/gof.hpp"
#include "ridgeforge/linalg.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/risk.hpp"
#include "ridgeforge/selection.hpp"
#include "ridgeforge/version.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ridgeforge;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ridge regression with per-eigendirection shrinkage: fitting, "
              "risk analysis, shrinkage selection, dominance comparisons and "
              "pairs-bootstrap intervals.";
    m.attr("__version__") = version_string;

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<DataError>(m, "DataError", PyExc_OSError);

    py::enum_<TransformMode>(m, "TransformMode")
        .value("raw", TransformMode::raw)
        .value("center_y", TransformMode::center_y)
        .value("standardize_all", TransformMode::standardize_all);

    py::enum_<ShrinkageSpec::Kind>(m, "SpecKind")
        .value("zero", ShrinkageSpec::Kind::zero)
        .value("uniform", ShrinkageSpec::Kind::uniform)
        .value("single", ShrinkageSpec::Kind::single)
        .value("general", ShrinkageSpec::Kind::general);

    py::enum_<SelectionRule>(m, "SelectionRule")
        .value("hkb", SelectionRule::hkb)
        .value("hk", SelectionRule::hk)
        .value("grid_min", SelectionRule::grid_min)
        .value("per_coordinate", SelectionRule::per_coordinate)
        .value("single_min", SelectionRule::single_min);

    py::enum_<DominanceTag>(m, "DominanceTag")
        .value("dominates", DominanceTag::dominates)
        .value("condition_holds", DominanceTag::condition_holds)
        .value("not_comparable", DominanceTag::not_comparable);

    py::enum_<TraceMode>(m, "TraceMode")
        .value("uniform", TraceMode::uniform)
        .value("single", TraceMode::single);

    py::class_<TransformSpec>(m, "TransformSpec")
        .def_readonly("mode", &TransformSpec::mode)
        .def_readonly("y_origin", &TransformSpec::y_origin)
        .def_readonly("y_scale", &TransformSpec::y_scale)
        .def_readonly("x_origin", &TransformSpec::x_origin)
        .def_readonly("x_scale", &TransformSpec::x_scale);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("y", &Dataset::y)
        .def_readwrite("x", &Dataset::x)
        .def_readwrite("column_names", &Dataset::column_names)
        .def_readwrite("response_name", &Dataset::response_name)
        .def_readonly("source_path", &Dataset::source_path)
        .def_readonly("transform", &Dataset::transform)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("p", &Dataset::p);

    py::class_<OlsFit>(m, "OlsFit")
        .def_readonly("beta", &OlsFit::beta)
        .def_readonly("fitted", &OlsFit::fitted)
        .def_readonly("residuals", &OlsFit::residuals)
        .def_readonly("sigma2", &OlsFit::sigma2)
        .def_readonly("rss", &OlsFit::rss)
        .def_readonly("yty", &OlsFit::yty)
        .def_readonly("gof", &OlsFit::gof);

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("values", &EigenSystem::values)
        .def_readonly("vectors", &EigenSystem::vectors);

    py::class_<CanonicalForm>(m, "CanonicalForm")
        .def_readonly("eigen", &CanonicalForm::eigen)
        .def_readonly("z", &CanonicalForm::z)
        .def_readonly("alpha", &CanonicalForm::alpha)
        .def_readonly("delta", &CanonicalForm::delta)
        .def_readonly("xi_hat", &CanonicalForm::xi_hat)
        .def_readonly("yty", &CanonicalForm::yty)
        .def_readonly("n", &CanonicalForm::n)
        .def_property_readonly("p", &CanonicalForm::p);

    py::class_<ShrinkageSpec>(m, "ShrinkageSpec")
        .def_static("zero", &ShrinkageSpec::zero, "p"_a)
        .def_static("uniform", &ShrinkageSpec::uniform, "p"_a, "value"_a)
        .def_static("single", &ShrinkageSpec::single, "p"_a, "index"_a,
                    "value"_a, "index is 0-based here; the CLI uses 1-based")
        .def_static("general", &ShrinkageSpec::general, "values"_a)
        .def_readonly("kind", &ShrinkageSpec::kind)
        .def_readonly("k", &ShrinkageSpec::k)
        .def_readonly("single_index", &ShrinkageSpec::single_index)
        .def_property_readonly("p", &ShrinkageSpec::p)
        .def("__repr__", [](const ShrinkageSpec& s) {
            return "<ShrinkageSpec " + describe(s) + ">";
        });

    py::class_<RidgeFit>(m, "RidgeFit")
        .def_readonly("spec", &RidgeFit::spec)
        .def_readonly("beta", &RidgeFit::beta)
        .def_readonly("fitted", &RidgeFit::fitted)
        .def_readonly("residuals", &RidgeFit::residuals)
        .def_readonly("norm2", &RidgeFit::norm2)
        .def_readonly("varcov", &RidgeFit::varcov)
        .def_readonly("w_k", &RidgeFit::w_k)
        .def_readonly("rss", &RidgeFit::rss)
        .def_readonly("gof", &RidgeFit::gof);

    py::class_<AugmentedFit>(m, "AugmentedFit")
        .def_readonly("beta", &AugmentedFit::beta)
        .def_readonly("varcov", &AugmentedFit::varcov)
        .def_readonly("gof", &AugmentedFit::gof);

    py::class_<RiskProfile>(m, "RiskProfile")
        .def_readonly("spec", &RiskProfile::spec)
        .def_readonly("variance_part", &RiskProfile::variance_part)
        .def_readonly("bias_part", &RiskProfile::bias_part)
        .def_readonly("mse", &RiskProfile::mse)
        .def_readonly("sigma2", &RiskProfile::sigma2);

    py::class_<SingleMin>(m, "SingleMin")
        .def_readonly("index", &SingleMin::index)
        .def_readonly("k", &SingleMin::k)
        .def_readonly("mse", &SingleMin::mse)
        .def_readonly("always_below_ols", &SingleMin::always_below_ols);

    py::class_<Grid>(m, "Grid")
        .def(py::init([](double start, double stop, double step) {
                 return Grid{start, stop, step};
             }),
             "start"_a, "stop"_a, "step"_a)
        .def_readonly("start", &Grid::start)
        .def_readonly("stop", &Grid::stop)
        .def_readonly("step", &Grid::step)
        .def("values", &Grid::values);

    py::class_<TraceSeries>(m, "TraceSeries")
        .def_readonly("mode", &TraceSeries::mode)
        .def_readonly("single_index", &TraceSeries::single_index)
        .def_readonly("k", &TraceSeries::k)
        .def_readonly("beta", &TraceSeries::beta)
        .def_readonly("norm2", &TraceSeries::norm2)
        .def_readonly("mse", &TraceSeries::mse)
        .def_readonly("gof", &TraceSeries::gof);

    py::class_<SelectionResult>(m, "SelectionResult")
        .def_readonly("rule", &SelectionResult::rule)
        .def_readonly("spec", &SelectionResult::spec)
        .def_readonly("k", &SelectionResult::k)
        .def_readonly("index", &SelectionResult::index)
        .def_readonly("mse_at_selection", &SelectionResult::mse_at_selection)
        .def_readonly("always_below_ols", &SelectionResult::always_below_ols)
        .def_readonly("grid_index", &SelectionResult::grid_index)
        .def_readonly("grid_step", &SelectionResult::grid_step)
        .def_readonly("mse_before", &SelectionResult::mse_before)
        .def_readonly("mse_after", &SelectionResult::mse_after)
        .def_readonly("hit_grid_end", &SelectionResult::hit_grid_end);

    py::class_<GofReport>(m, "GofReport")
        .def_readonly("tss", &GofReport::tss)
        .def_readonly("ess", &GofReport::ess)
        .def_readonly("rss", &GofReport::rss)
        .def_readonly("value", &GofReport::value)
        .def_readonly("augmented_value", &GofReport::augmented_value)
        .def_readonly("ess_weights", &GofReport::ess_weights)
        .def_readonly("raw_frame", &GofReport::raw_frame);

    py::class_<DominanceVerdict>(m, "DominanceVerdict")
        .def_readonly("challenger", &DominanceVerdict::challenger)
        .def_readonly("incumbent", &DominanceVerdict::incumbent)
        .def_readonly("diagonal", &DominanceVerdict::diagonal)
        .def_readonly("strictly_pd", &DominanceVerdict::strictly_pd)
        .def_readonly("psd", &DominanceVerdict::psd)
        .def_readonly("condition_evaluated", &DominanceVerdict::condition_evaluated)
        .def_readonly("condition_value", &DominanceVerdict::condition_value)
        .def_readonly("sigma2", &DominanceVerdict::sigma2)
        .def_readonly("tag", &DominanceVerdict::tag);

    py::class_<BootstrapConfig>(m, "BootstrapConfig")
        .def(py::init<>())
        .def_readwrite("replicates", &BootstrapConfig::replicates)
        .def_readwrite("level", &BootstrapConfig::level)
        .def_readwrite("seed", &BootstrapConfig::seed)
        .def_readwrite("threads", &BootstrapConfig::threads)
        .def_readwrite("max_discard_fraction",
                       &BootstrapConfig::max_discard_fraction);

    py::class_<BootstrapSummary>(m, "BootstrapSummary")
        .def_readonly("point", &BootstrapSummary::point)
        .def_readonly("lower", &BootstrapSummary::lower)
        .def_readonly("upper", &BootstrapSummary::upper)
        .def_readonly("gof_point", &BootstrapSummary::gof_point)
        .def_readonly("gof_lower", &BootstrapSummary::gof_lower)
        .def_readonly("gof_upper", &BootstrapSummary::gof_upper)
        .def_readonly("significant", &BootstrapSummary::significant)
        .def_readonly("replicates_used", &BootstrapSummary::replicates_used)
        .def_readonly("replicates_discarded",
                      &BootstrapSummary::replicates_discarded)
        .def_readonly("level", &BootstrapSummary::level)
        .def_readonly("seed", &BootstrapSummary::seed);

    m.def(
        "load_csv",
        [](const std::string& path, bool header, char delimiter,
           const std::string& response) {
            LoadOptions options;
            options.header = header;
            options.delimiter = delimiter;
            options.response = response;
            return load_csv(path, options);
        },
        "path"_a, "header"_a = true, "delimiter"_a = ',', "response"_a = "",
        "Read a delimited file into a Dataset; response selects the response "
        "column by name (or 0-based index when header is false).");
    m.def("apply_transform", &apply_transform, "d"_a, "mode"_a);
    m.def("invert_transform", &invert_transform, "d"_a);
    m.def("ols_fit", &ols_fit, "d"_a);
    m.def("canonicalize", &ridgeforge::canonicalize, "d"_a,
          "Eigendecompose X'X and rotate the fit into the eigenbasis.");

    m.def("ridge_fit", &ridge_fit, "c"_a, "d"_a, "spec"_a, "sigma2"_a);
    m.def("augmented_fit", &augmented_fit, "c"_a, "d"_a, "spec"_a, "sigma2"_a,
          "Same coefficients as ridge_fit via least squares on the stacked "
          "system (Y; 0), (X; K^(1/2) Gamma').");
    m.def("shrink_limit", &shrink_limit, "c"_a, "index"_a);
    m.def("describe", &describe, "spec"_a);

    m.def("mse_of", &mse_of, "c"_a, "spec"_a, "sigma2"_a, "xi"_a);
    m.def("mse_ols", &mse_ols, "c"_a, "sigma2"_a);
    m.def("mse_single_min", &mse_single_min, "c"_a, "index"_a, "sigma2"_a,
          "xi"_a);
    m.def("mse_single_limit", &mse_single_limit, "c"_a, "index"_a, "sigma2"_a,
          "xi"_a);
    m.def("trace_series", &trace_series, "c"_a, "mode"_a, "single_index"_a,
          "grid"_a, "sigma2"_a, "xi"_a);

    m.def("gof_of", &gof_of, "c"_a, "d"_a, "fit"_a);
    m.def("gof_value", &gof_value, "c"_a, "spec"_a);
    m.def("gof_limit_single", &gof_limit_single, "c"_a, "index"_a);

    m.def("k_hkb", &k_hkb, "ols"_a);
    m.def("k_hk", &k_hk, "c"_a, "sigma2"_a, "xi"_a);
    m.def("k_grid_min", &k_grid_min, "c"_a, "sigma2"_a, "xi"_a, "grid"_a,
          "exhaustive"_a = false);
    m.def("per_coordinate", &per_coordinate, "c"_a, "sigma2"_a, "xi"_a);
    m.def("single_min", &single_min, "c"_a, "index"_a, "sigma2"_a, "xi"_a);
    m.def("single_min_table", &single_min_table, "c"_a, "sigma2"_a, "xi"_a);

    m.def("comparison_diagonal", &comparison_diagonal, "c"_a, "challenger"_a,
          "incumbent"_a);
    m.def("compare_specs",
          py::overload_cast<const CanonicalForm&, const ShrinkageSpec&,
                            const ShrinkageSpec&>(&compare_specs),
          "c"_a, "challenger"_a, "incumbent"_a);
    m.def("compare_specs",
          py::overload_cast<const CanonicalForm&, const ShrinkageSpec&,
                            const ShrinkageSpec&, const Eigen::VectorXd&,
                            double>(&compare_specs),
          "c"_a, "challenger"_a, "incumbent"_a, "beta_true"_a, "sigma2"_a,
          "Also evaluates the bias condition, which needs the true "
          "coefficients.");
    m.def("corollary_checks", &corollary_checks, "c"_a, "percoord"_a,
          "single_best"_a, "uniform_candidates"_a);

    m.def("bootstrap_intervals", &bootstrap_intervals, "d"_a, "spec"_a,
          "cfg"_a,
          "Pairs bootstrap under a fixed spec; deterministic for a given "
          "seed regardless of thread count.");
    m.def("quantile", &quantile, "values"_a, "q"_a);
    m.def("resolved_threads", &resolved_threads, "requested"_a);
}
