#pragma once

#include <cstdint>
#include <vector>

#include "declinekit/event_set.hpp"

namespace declinekit {

// Split convention used throughout: onset_year <= split is "before".
inline constexpr int kDefaultSplitYear = 1946;

// Draws of the exceedance probability below this are floored before being
// used as a divisor, so ratios stay finite when the pre period has no
// exceeding events.
inline constexpr double kRatioFloor = 1e-12;

// Observed versus predicted exceedance proportion at one threshold.
//
// The prediction is built only from the pre-split period: with a events at
// or above m and b below, exceedance probabilities are drawn from
// Beta(a, b) and averaged into predicted_mean. observed_p is the post-split
// exceedance proportion, and ratio = observed_p / predicted_mean.
//
// The band is the central 66% interval (17th to 83rd percentile) of
// simulated ratios: each draw theta_i yields a simulated post period
// y_i ~ Binomial(n, theta_i) and a ratio draw (y_i/n) / predicted_mean.
// The observed ratio lands inside the band iff observed_p is within the
// central 66% of what the pre period predicts for a post period of size n.
struct PredictionRatio {
    double m = 0.0;
    double observed_p = 0.0;
    double predicted_mean = 0.0;
    double ratio = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    int n_draws = 0;
    std::uint64_t seed = 0;
    bool degenerate = false;  // pre period had zero events on one side of m
    long long n_floored = 0;  // probability draws that hit kRatioFloor
};

// One entry per threshold, in the given order. Throws DataError if either
// period is empty, ConfigError on a bad threshold grid or n_draws < 1.
// Per-threshold draw streams are derived from the seed and the threshold's
// position, so entries are independent of evaluation order.
std::vector<PredictionRatio> predict_proportion_ratios(const SizedEventSet& events,
                                                       int split_year,
                                                       const std::vector<double>& thresholds,
                                                       int n_draws, std::uint64_t seed);

}  // namespace declinekit
