#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "declinekit/event_set.hpp"
#include "declinekit/inference.hpp"

namespace declinekit {

// Default scan window. Candidate years need enough events on both sides to
// say anything useful, so the coverage edges are trimmed off.
inline constexpr int kDefaultScanFirstYear = 1859;
inline constexpr int kDefaultScanLastYear = 1970;

// Wider window used for plots that show the scan running into the sparse
// tails of the record.
inline constexpr int kFigureScanFirstYear = 1856;
inline constexpr int kFigureScanLastYear = 1989;

// Conventional cutoff above which a decline probability is treated as strong
// evidence. Reported alongside results; nothing in the scan depends on it.
inline constexpr double kDeclineEvidenceCutoff = 0.66;

// Standard threshold grids: log10 magnitudes for raw death counts, absolute
// rates per 100k for normalized sizes.
std::vector<double> default_thresholds(Scale scale);

struct ScanOptions {
    int n_draws = kDefaultDeclineDraws;
    std::uint64_t seed = 0;
    // Drop threshold columns where every valid cell is degenerate (the
    // threshold sits outside the observed size range, so the column carries
    // no information). Off by default: degenerate columns average in as 0.
    bool exclude_boundary_thresholds = false;
    // 0 means use hardware concurrency.
    int n_threads = 0;
};

// Grid of decline estimates over candidate years x thresholds, row-major by
// year. Cells where the pre-changepoint side has no events are empty.
struct ScanResult {
    std::vector<int> years;
    std::vector<double> thresholds;
    std::vector<std::optional<DeclineEstimate>> grid;
    // Mean pr_decline per year over contributing thresholds; NaN for years
    // with no contributing cells. Aligned with years.
    std::vector<double> yearly_average;
    std::vector<std::string> warnings;
    int n_draws = 0;
    std::uint64_t seed = 0;
    Scale scale = Scale::raw_deaths;
    bool exclude_boundary_thresholds = false;

    const std::optional<DeclineEstimate>& cell(std::size_t year_index,
                                               std::size_t threshold_index) const {
        return grid[year_index * thresholds.size() + threshold_index];
    }
};

// Evaluates the decline probability at every (candidate year, threshold)
// cell. Each cell draws from its own seed stream derived from the master
// seed, the year, and the threshold's position in the grid, so results do
// not depend on evaluation order or thread count.
ScanResult scan_changepoints(const SizedEventSet& events, int first_year, int last_year,
                             const std::vector<double>& thresholds, const ScanOptions& options);

// Per-year mean of pr_decline over contributing thresholds, honoring the
// boundary-exclusion flag stored in the scan. Years with no contributing
// cells are omitted. Throws DataError if exclusion removes every threshold.
std::vector<std::pair<int, double>> average_over_thresholds(const ScanResult& scan);

// Year with the highest averaged decline probability; earliest year wins
// ties. Throws DataError on an empty curve.
std::pair<int, double> locate_changepoint(const std::vector<std::pair<int, double>>& curve);

}  // namespace declinekit
