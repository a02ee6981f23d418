#include "declinekit/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "declinekit/beta.hpp"
#include "declinekit/errors.hpp"
#include "declinekit/inference.hpp"
#include "declinekit/random.hpp"

namespace declinekit {

namespace {

// Linear-interpolation quantile on an already-sorted sample.
double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

constexpr std::uint64_t kSimulationRole = 0x73696dULL;  // "sim"

}  // namespace

std::vector<PredictionRatio> predict_proportion_ratios(const SizedEventSet& events,
                                                       int split_year,
                                                       const std::vector<double>& thresholds,
                                                       int n_draws, std::uint64_t seed) {
    if (thresholds.empty()) throw ConfigError("threshold grid is empty");
    for (std::size_t j = 1; j < thresholds.size(); ++j)
        if (!(thresholds[j - 1] < thresholds[j]))
            throw ConfigError("thresholds must be strictly increasing");
    if (n_draws < 1) throw ConfigError("n_draws must be positive");

    long long n_pre = 0;
    long long n_post = 0;
    for (const auto& event : events.records())
        (event.onset_year <= split_year ? n_pre : n_post) += 1;
    if (n_pre == 0)
        throw DataError("no events on or before split year " + std::to_string(split_year));
    if (n_post == 0) throw DataError("no events after split year " + std::to_string(split_year));

    std::vector<PredictionRatio> out;
    out.reserve(thresholds.size());
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        const double m = thresholds[j];
        const PartitionCounts counts = partition_counts(events, split_year, m);
        const BetaParams prior = counts.prior();
        const long long n = counts.post_total();

        PredictionRatio entry;
        entry.m = m;
        entry.n_draws = n_draws;
        entry.seed = seed;
        entry.degenerate = prior.is_point_mass();
        entry.observed_p =
            static_cast<double>(counts.y) / static_cast<double>(n);

        const std::uint64_t threshold_seed = derive_seed(seed, {static_cast<std::uint64_t>(j)});
        const std::vector<double> draws =
            sample_beta(prior, n_draws, threshold_seed);

        double sum = 0.0;
        for (double d : draws) sum += d;
        entry.predicted_mean = sum / static_cast<double>(n_draws);

        const double denom = std::max(entry.predicted_mean, kRatioFloor);
        if (entry.predicted_mean < kRatioFloor) entry.n_floored = n_draws;
        entry.ratio = entry.observed_p == 0.0 ? 0.0 : entry.observed_p / denom;

        // Simulated post periods under the pre-period model, one per draw,
        // turned into ratio draws against the same point prediction.
        RandomStream sim(derive_seed(threshold_seed, {kSimulationRole}));
        std::vector<double> ratio_draws;
        ratio_draws.reserve(draws.size());
        for (double theta : draws) {
            const double p = std::clamp(theta, 0.0, 1.0);
            const int hits = sim.binomial(static_cast<int>(n), p);
            const double simulated_p = static_cast<double>(hits) / static_cast<double>(n);
            ratio_draws.push_back(simulated_p == 0.0 ? 0.0 : simulated_p / denom);
        }
        std::sort(ratio_draws.begin(), ratio_draws.end());
        entry.band_lo = sorted_quantile(ratio_draws, 0.17);
        entry.band_hi = sorted_quantile(ratio_draws, 0.83);

        out.push_back(entry);
    }
    return out;
}

}  // namespace declinekit
