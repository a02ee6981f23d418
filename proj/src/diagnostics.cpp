#include "declinekit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "declinekit/errors.hpp"
#include "declinekit/random.hpp"

namespace declinekit {

OnsetDiagnostics onset_frequency(const std::vector<WarRecord>& wars, int window,
                                 std::optional<std::pair<int, int>> span) {
    if (wars.empty()) throw DataError("no wars to diagnose");
    if (window < 1 || window % 2 == 0)
        throw ConfigError("moving-average window must be odd and positive, got " +
                          std::to_string(window));

    const int lo = span ? span->first : kCoverageFirstYear;
    const int hi = span ? span->second : kCoverageLastYear;
    if (lo > hi) throw ConfigError("span is empty");

    OnsetDiagnostics diag;
    for (int year = lo; year <= hi; ++year) diag.annual_counts[year] = 0;
    for (const auto& war : wars) {
        if (war.onset_year < lo || war.onset_year > hi)
            throw DataError("onset year " + std::to_string(war.onset_year) +
                            " falls outside the span [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
        diag.annual_counts[war.onset_year] += 1;
    }
    diag.mean_rate =
        static_cast<double>(wars.size()) / static_cast<double>(hi - lo + 1);

    const int half = window / 2;
    for (int year = lo; year <= hi; ++year) {
        const int w_lo = std::max(lo, year - half);
        const int w_hi = std::min(hi, year + half);
        long long sum = 0;
        for (int t = w_lo; t <= w_hi; ++t) sum += diag.annual_counts[t];
        diag.moving_average[year] =
            static_cast<double>(sum) / static_cast<double>(w_hi - w_lo + 1);
    }
    return diag;
}

OnsetDiagnostics gap_distribution(const std::vector<WarRecord>& wars, int n_sim, std::uint64_t seed,
                                  bool dedupe_onsets) {
    if (n_sim < 1) throw ConfigError("n_sim must be positive");

    std::vector<int> onsets;
    onsets.reserve(wars.size());
    for (const auto& war : wars) onsets.push_back(war.onset_year);
    std::sort(onsets.begin(), onsets.end());
    if (dedupe_onsets) onsets.erase(std::unique(onsets.begin(), onsets.end()), onsets.end());
    if (onsets.size() < 2) throw DataError("need at least two onsets to form gaps");

    OnsetDiagnostics diag;
    diag.gaps.reserve(onsets.size() - 1);
    long long gap_sum = 0;
    int max_gap = 0;
    for (std::size_t i = 1; i < onsets.size(); ++i) {
        const int gap = onsets[i] - onsets[i - 1];
        diag.gaps.push_back(gap);
        gap_sum += gap;
        max_gap = std::max(max_gap, gap);
    }
    const std::size_t n_gaps = diag.gaps.size();
    diag.lambda_hat = static_cast<double>(gap_sum) / static_cast<double>(n_gaps);

    for (int g = 0; g <= max_gap; ++g) diag.observed_gap_props[g] = 0.0;
    for (int gap : diag.gaps) diag.observed_gap_props[gap] += 1.0 / static_cast<double>(n_gaps);

    // Average of n_sim empirical distributions, each from a fresh Poisson
    // sample of the observed size; simulated values above max_gap fall off
    // the reported support.
    std::vector<double> expected(static_cast<std::size_t>(max_gap) + 1, 0.0);
    const double weight = 1.0 / (static_cast<double>(n_sim) * static_cast<double>(n_gaps));
    for (int r = 0; r < n_sim; ++r) {
        RandomStream stream(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
        for (std::size_t i = 0; i < n_gaps; ++i) {
            const int value = stream.poisson(diag.lambda_hat);
            if (value <= max_gap) expected[static_cast<std::size_t>(value)] += weight;
        }
    }
    for (int g = 0; g <= max_gap; ++g) diag.expected_gap_props[g] = expected[static_cast<std::size_t>(g)];
    return diag;
}

namespace {

double draw_size(const SizeLaw& law, RandomStream& stream) {
    if (const auto* lu = std::get_if<LogUniformLaw>(&law))
        return std::pow(10.0, stream.uniform(lu->lo_mag, lu->hi_mag));
    const auto& pl = std::get<DiscretePowerLaw>(law);
    // Inverse-transform sampling for a discrete power law via the rounding
    // approximation: x = floor((x_min - 1/2)(1 - u)^(-1/(alpha-1)) + 1/2).
    const double u = stream.uniform_open01();
    return std::floor((pl.x_min - 0.5) * std::pow(1.0 - u, -1.0 / (pl.exponent - 1.0)) + 0.5);
}

void validate_law(const SizeLaw& law) {
    if (const auto* lu = std::get_if<LogUniformLaw>(&law)) {
        if (!(lu->lo_mag < lu->hi_mag))
            throw ConfigError("log-uniform law needs lo_mag < hi_mag");
        return;
    }
    const auto& pl = std::get<DiscretePowerLaw>(law);
    if (!(pl.exponent > 1.0)) throw ConfigError("power-law exponent must exceed 1");
    if (!(pl.x_min >= 1.0)) throw ConfigError("power-law x_min must be at least 1");
}

}  // namespace

SizedEventSet generate_stationary_corpus(int year_lo, int year_hi, double onset_rate,
                                         const SizeLaw& law, std::uint64_t seed) {
    if (year_lo > year_hi) throw ConfigError("corpus span is empty");
    if (!(onset_rate > 0.0)) throw ConfigError("onset rate must be positive");
    validate_law(law);

    std::vector<SizedEvent> events;
    for (int year = year_lo; year <= year_hi; ++year) {
        RandomStream stream(
            derive_seed(seed, {static_cast<std::uint64_t>(static_cast<std::int64_t>(year))}));
        const int count = stream.poisson(onset_rate);
        for (int k = 0; k < count; ++k) events.push_back({year, draw_size(law, stream)});
    }
    return SizedEventSet(std::move(events), Scale::raw_deaths, ThresholdKind::log10_magnitude);
}

}  // namespace declinekit
