#include "declinekit/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declinekit/errors.hpp"
#include "declinekit/parallel.hpp"
#include "declinekit/random.hpp"

namespace declinekit {

std::vector<double> default_thresholds(Scale scale) {
    if (scale == Scale::raw_deaths) return {3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5, 7.0};
    return {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
}

namespace {

// Threshold columns whose valid cells are all degenerate: the threshold lies
// outside the observed size range on at least one side of every split.
std::vector<bool> boundary_columns(const ScanResult& scan) {
    const std::size_t n_thresh = scan.thresholds.size();
    std::vector<bool> boundary(n_thresh, false);
    for (std::size_t j = 0; j < n_thresh; ++j) {
        bool any_valid = false;
        bool all_degenerate = true;
        for (std::size_t i = 0; i < scan.years.size(); ++i) {
            const auto& cell = scan.cell(i, j);
            if (!cell) continue;
            any_valid = true;
            if (!cell->degenerate) {
                all_degenerate = false;
                break;
            }
        }
        boundary[j] = any_valid && all_degenerate;
    }
    return boundary;
}

}  // namespace

ScanResult scan_changepoints(const SizedEventSet& events, int first_year, int last_year,
                             const std::vector<double>& thresholds, const ScanOptions& options) {
    if (first_year >= last_year)
        throw ConfigError("scan window must contain at least two years, got [" +
                          std::to_string(first_year) + ", " + std::to_string(last_year) + "]");
    if (thresholds.empty()) throw ConfigError("threshold grid is empty");
    for (std::size_t j = 1; j < thresholds.size(); ++j)
        if (!(thresholds[j - 1] < thresholds[j]))
            throw ConfigError("thresholds must be strictly increasing");
    if (options.n_draws < 1) throw ConfigError("n_draws must be positive");

    ScanResult result;
    result.thresholds = thresholds;
    result.n_draws = options.n_draws;
    result.seed = options.seed;
    result.scale = events.scale();
    result.exclude_boundary_thresholds = options.exclude_boundary_thresholds;
    for (int year = first_year; year <= last_year; ++year) result.years.push_back(year);

    const std::size_t n_years = result.years.size();
    const std::size_t n_thresh = thresholds.size();
    result.grid.resize(n_years * n_thresh);

    // Each cell gets its own stream keyed on the calendar year and the
    // threshold's grid position. Keying on position rather than value keeps
    // draws identical when sizes and thresholds are rescaled together.
    parallel_for(n_years * n_thresh, options.n_threads, [&](std::size_t k) {
        const std::size_t i = k / n_thresh;
        const std::size_t j = k % n_thresh;
        const int year = result.years[i];
        const PartitionCounts counts = partition_counts(events, year, thresholds[j]);
        if (counts.pre_total() == 0) return;  // no prior information; cell stays empty
        const std::uint64_t cell_seed = derive_seed(
            options.seed,
            {static_cast<std::uint64_t>(static_cast<std::int64_t>(year)), static_cast<std::uint64_t>(j)});
        result.grid[k] = probability_of_decline(counts, options.n_draws, cell_seed);
    });

    for (std::size_t i = 0; i < n_years; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n_thresh; ++j)
            if (result.cell(i, j)) any = true;
        if (!any)
            result.warnings.push_back("year " + std::to_string(result.years[i]) +
                                      " has no events before it at any threshold; excluded");
    }

    const auto curve = average_over_thresholds(result);
    result.yearly_average.assign(n_years, std::numeric_limits<double>::quiet_NaN());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n_years && pos < curve.size(); ++i)
        if (curve[pos].first == result.years[i]) result.yearly_average[i] = curve[pos++].second;

    return result;
}

std::vector<std::pair<int, double>> average_over_thresholds(const ScanResult& scan) {
    const std::size_t n_thresh = scan.thresholds.size();
    std::vector<bool> excluded(n_thresh, false);
    if (scan.exclude_boundary_thresholds) {
        excluded = boundary_columns(scan);
        if (std::all_of(excluded.begin(), excluded.end(), [](bool b) { return b; }))
            throw DataError("every threshold column is degenerate; nothing left to average");
    }

    std::vector<std::pair<int, double>> curve;
    curve.reserve(scan.years.size());
    for (std::size_t i = 0; i < scan.years.size(); ++i) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < n_thresh; ++j) {
            if (excluded[j]) continue;
            const auto& cell = scan.cell(i, j);
            if (!cell) continue;
            sum += cell->pr_decline;
            ++count;
        }
        if (count > 0) curve.emplace_back(scan.years[i], sum / count);
    }
    return curve;
}

std::pair<int, double> locate_changepoint(const std::vector<std::pair<int, double>>& curve) {
    if (curve.empty()) throw DataError("cannot locate a changepoint on an empty curve");
    std::pair<int, double> best = curve.front();
    for (const auto& point : curve)
        if (point.second > best.second || (point.second == best.second && point.first < best.first))
            best = point;
    return best;
}

}  // namespace declinekit
