#include "ridgeforge/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ridgeforge/errors.hpp"
#include "ridgeforge/gof.hpp"
#include "ridgeforge/rng.hpp"

namespace ridgeforge {

double quantile(std::vector<double> values, double q) {
    if (values.empty())
        throw UsageError("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw UsageError("quantile: q must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double position = q * static_cast<double>(values.size() - 1);
    const auto index = static_cast<std::size_t>(position);
    const double fraction = position - static_cast<double>(index);
    if (index + 1 >= values.size()) return values.back();
    return values[index] + fraction * (values[index + 1] - values[index]);
}

int resolved_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RIDGEFORGE_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0)
            return static_cast<int>(std::min(parsed, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

struct ReplicateResult {
    bool discarded = false;
};

// Fits one resampled dataset. Writes the coefficient row and gof slot only
// when the replicate is kept.
ReplicateResult run_replicate(const Dataset& d, const ShrinkageSpec& spec,
                              std::uint64_t seed, long replicate,
                              Eigen::MatrixXd& coef_rows,
                              std::vector<double>& gof_values) {
    const Eigen::Index n = d.n();
    const Eigen::Index p = d.p();

    Xoshiro256 rng =
        replicate_stream(seed, static_cast<std::uint64_t>(replicate));
    Eigen::MatrixXd xb(n, p);
    Eigen::VectorXd yb(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(
            rng.below(static_cast<std::uint64_t>(n)));
        xb.row(i) = d.x.row(row);
        yb(i) = d.y(row);
    }

    const EigenSystem es = eigen_decompose(xb.transpose() * xb);
    const double largest = es.values(0);
    if (largest <= 0.0) return {true};
    // Shrinkage is paired with eigenvalues by descending order; a collapsed
    // direction is only a problem when its paired shrinkage is zero.
    for (Eigen::Index j = 0; j < p; ++j)
        if (es.values(j) <= 1e-12 * largest && spec.k(j) == 0.0) return {true};

    const Eigen::VectorXd delta = es.vectors.transpose() * (xb.transpose() * yb);
    const Eigen::VectorXd rotated =
        (delta.array() / (es.values.array() + spec.k.array())).matrix();
    const Eigen::VectorXd beta = es.vectors * rotated;

    coef_rows.row(replicate) = beta.transpose();
    const double rss = (yb - xb * beta).squaredNorm();
    const double yty = yb.squaredNorm();
    gof_values[static_cast<std::size_t>(replicate)] =
        yty > 0.0 ? 1.0 - rss / yty : 0.0;
    return {false};
}

// Sorts once and interpolates both tail positions.
std::pair<double, double> interval(std::vector<double> values, double level) {
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        const double position = q * static_cast<double>(values.size() - 1);
        const auto index = static_cast<std::size_t>(position);
        const double fraction = position - static_cast<double>(index);
        if (index + 1 >= values.size()) return values.back();
        return values[index] + fraction * (values[index + 1] - values[index]);
    };
    return {at((1.0 - level) / 2.0), at((1.0 + level) / 2.0)};
}

} // namespace

BootstrapSummary bootstrap_intervals(const Dataset& d, const ShrinkageSpec& spec,
                                     const BootstrapConfig& cfg) {
    if (spec.p() != d.p())
        throw UsageError("bootstrap: spec has p = " + std::to_string(spec.p()) +
                         " but the dataset has p = " + std::to_string(d.p()));
    if (cfg.replicates < 100)
        throw UsageError("bootstrap: need at least 100 replicates, got " +
                         std::to_string(cfg.replicates));
    if (!(cfg.level > 0.0 && cfg.level < 1.0))
        throw UsageError("bootstrap: level must lie strictly between 0 and 1");
    if (!(cfg.max_discard_fraction >= 0.0 && cfg.max_discard_fraction < 1.0))
        throw UsageError("bootstrap: max_discard_fraction must lie in [0, 1)");

    const long m = cfg.replicates;
    const Eigen::Index p = d.p();

    // Point estimate on the original data, straight from the closed forms.
    const CanonicalForm c = canonicalize(d);
    const Eigen::VectorXd rotated =
        (c.delta.array() / (c.eigen.values.array() + spec.k.array())).matrix();

    BootstrapSummary summary;
    summary.point = c.eigen.vectors * rotated;
    summary.gof_point = gof_value(c, spec);
    summary.level = cfg.level;
    summary.seed = cfg.seed;

    Eigen::MatrixXd coef_rows(m, p);
    std::vector<double> gof_values(static_cast<std::size_t>(m));
    std::vector<char> discarded(static_cast<std::size_t>(m), 0);

    const int threads = std::max(
        1, std::min(resolved_threads(cfg.threads), static_cast<int>(m)));
    auto worker = [&](long begin, long end) {
        for (long r = begin; r < end; ++r)
            if (run_replicate(d, spec, cfg.seed, r, coef_rows, gof_values)
                    .discarded)
                discarded[static_cast<std::size_t>(r)] = 1;
    };

    if (threads == 1) {
        worker(0, m);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(
            static_cast<std::size_t>(threads));
        const long chunk = (m + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long begin = static_cast<long>(t) * chunk;
            const long end = std::min(m, begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                try {
                    worker(begin, end);
                } catch (...) {
                    failures[static_cast<std::size_t>(t)] =
                        std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    long kept = 0;
    for (long r = 0; r < m; ++r)
        if (!discarded[static_cast<std::size_t>(r)]) ++kept;
    summary.replicates_used = kept;
    summary.replicates_discarded = m - kept;
    if (static_cast<double>(summary.replicates_discarded) >
        cfg.max_discard_fraction * static_cast<double>(m))
        throw NumericError(
            "bootstrap: " + std::to_string(summary.replicates_discarded) +
            " of " + std::to_string(m) +
            " replicates had rank-deficient resamples under zero shrinkage");
    if (kept == 0)
        throw NumericError("bootstrap: no usable replicates");

    summary.lower.resize(p);
    summary.upper.resize(p);
    summary.significant.resize(static_cast<std::size_t>(p));
    std::vector<double> column(static_cast<std::size_t>(kept));
    for (Eigen::Index j = 0; j < p; ++j) {
        std::size_t w = 0;
        for (long r = 0; r < m; ++r)
            if (!discarded[static_cast<std::size_t>(r)])
                column[w++] = coef_rows(r, j);
        const auto [lo, hi] = interval(column, cfg.level);
        summary.lower(j) = lo;
        summary.upper(j) = hi;
        summary.significant[static_cast<std::size_t>(j)] = lo > 0.0 || hi < 0.0;
    }
    {
        std::size_t w = 0;
        for (long r = 0; r < m; ++r)
            if (!discarded[static_cast<std::size_t>(r)])
                column[w++] = gof_values[static_cast<std::size_t>(r)];
        const auto [lo, hi] = interval(column, cfg.level);
        summary.gof_lower = lo;
        summary.gof_upper = hi;
    }
    return summary;
}

} // namespace ridgeforge
