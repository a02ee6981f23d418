#include "declinekit/summary.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "declinekit/errors.hpp"

namespace declinekit {

SummaryStats summarize(std::span<const double> sizes) {
    if (sizes.empty()) throw DataError("summarize: empty sample");

    SummaryStats stats;
    stats.n = sizes.size();
    const double n = static_cast<double>(stats.n);

    double sum = 0.0;
    for (double x : sizes) sum += x;
    stats.mean = sum / n;

    double m2 = 0.0, m3 = 0.0;
    std::size_t above_mean = 0;
    for (double x : sizes) {
        const double d = x - stats.mean;
        m2 += d * d;
        m3 += d * d * d;
        if (x > stats.mean) ++above_mean;
    }
    m2 /= n;
    m3 /= n;
    stats.sd = stats.n > 1 ? std::sqrt(m2 * n / (n - 1.0)) : 0.0;
    if (m2 > 0.0) stats.skewness = m3 / std::pow(m2, 1.5);
    stats.tail_fraction = static_cast<double>(above_mean) / n;

    std::vector<double> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());
    stats.min = sorted.front();
    stats.max = sorted.back();
    const std::size_t mid = stats.n / 2;
    stats.median = stats.n % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    return stats;
}

}  // namespace declinekit
