#pragma once

#include <optional>
#include <span>

namespace declinekit {

// Descriptive statistics for a sample of sizes. Skewness is the moment
// coefficient g1 = m3 / m2^(3/2) and is absent when the variance is zero;
// sd uses the n-1 sample convention. tail_fraction is the share of values
// strictly greater than the mean.
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::optional<double> skewness;
    double tail_fraction = 0.0;
};

SummaryStats summarize(std::span<const double> sizes);

}  // namespace declinekit
