#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "declinekit/event_set.hpp"
#include "declinekit/war_data.hpp"

namespace declinekit {

inline constexpr int kDefaultMovingAverageWindow = 5;
inline constexpr int kDefaultGapSimulations = 1000;

// Onset-process diagnostics. onset_frequency fills the annual series;
// gap_distribution fills the gap table. Both leave the other half empty.
struct OnsetDiagnostics {
    std::map<int, long long> annual_counts;
    double mean_rate = 0.0;
    std::map<int, double> moving_average;
    std::vector<int> gaps;
    double lambda_hat = 0.0;
    // Keyed over 0..max observed gap. Observed proportions sum to 1;
    // expected ones can sum to slightly less because simulated gaps above
    // the observed maximum are dropped.
    std::map<int, double> observed_gap_props;
    std::map<int, double> expected_gap_props;
};

// Annual onset counts over the span (zero-filled), a centered moving
// average with truncated edge windows, and the mean onsets per year.
// The span defaults to the dataset coverage window. Window must be odd.
OnsetDiagnostics onset_frequency(const std::vector<WarRecord>& wars, int window = kDefaultMovingAverageWindow,
                                 std::optional<std::pair<int, int>> span = std::nullopt);

// Gaps between successive onset years (wars sorted by onset year; shared
// years give zero gaps), their mean, the observed gap distribution, and the
// distribution expected under a Poisson with that mean. The expectation is
// the average over n_sim simulated samples, each matching the observed
// sample size, with per-replicate seed streams. dedupe_onsets collapses
// wars sharing an onset year to a single onset before computing gaps.
OnsetDiagnostics gap_distribution(const std::vector<WarRecord>& wars, int n_sim, std::uint64_t seed,
                                  bool dedupe_onsets = false);

// Size laws for synthetic corpora: magnitude uniform on [lo_mag, hi_mag]
// (sizes 10^U), or a discrete power law with the given exponent and floor.
struct LogUniformLaw {
    double lo_mag = 0.0;
    double hi_mag = 0.0;
};
struct DiscretePowerLaw {
    double exponent = 0.0;
    double x_min = 1.0;
};
using SizeLaw = std::variant<LogUniformLaw, DiscretePowerLaw>;

// Stationary synthetic corpus: per-year onset counts ~ Poisson(onset_rate),
// sizes drawn independently from the law. Deterministic for a given seed,
// with per-year substreams. Sizes are raw-count-like, so the result uses
// the magnitude threshold convention.
SizedEventSet generate_stationary_corpus(int year_lo, int year_hi, double onset_rate,
                                         const SizeLaw& law, std::uint64_t seed);

}  // namespace declinekit
