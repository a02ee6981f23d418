#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "declinekit/diagnostics.hpp"
#include "declinekit/errors.hpp"
#include "declinekit/inference.hpp"
#include "declinekit/prediction.hpp"
#include "declinekit/random.hpp"

using namespace declinekit;

namespace {

SizedEventSet exchangeable_corpus(std::uint64_t seed) {
    return generate_stationary_corpus(1816, 2007, 3.0, LogUniformLaw{3.0, 7.0}, seed);
}

}  // namespace

TEST_CASE("prediction entries carry the observed post-period proportion") {
    const auto events = exchangeable_corpus(1);
    const auto counts = partition_counts(events, kDefaultSplitYear, 5.0);
    const auto ratios = predict_proportion_ratios(events, kDefaultSplitYear, {5.0}, 2000, 9);
    REQUIRE(ratios.size() == 1);
    const auto& entry = ratios[0];
    CHECK(entry.m == 5.0);
    CHECK(entry.observed_p ==
          static_cast<double>(counts.y) / static_cast<double>(counts.post_total()));
    CHECK(entry.n_draws == 2000);
    CHECK(entry.seed == 9);
    CHECK_FALSE(entry.degenerate);
    CHECK(entry.n_floored == 0);
    CHECK(entry.band_lo <= entry.band_hi);
    CHECK(entry.band_lo >= 0.0);
    CHECK(entry.ratio == entry.observed_p / entry.predicted_mean);
}

TEST_CASE("predicted mean converges to the prior mean") {
    const auto events = exchangeable_corpus(2);
    const int n_draws = 10000;
    for (double m : {4.0, 5.0, 6.0}) {
        const auto counts = partition_counts(events, kDefaultSplitYear, m);
        const BetaParams prior = counts.prior();
        const auto ratios = predict_proportion_ratios(events, kDefaultSplitYear, {m}, n_draws, 33);
        const double se = std::sqrt(prior.variance() / n_draws);
        CHECK(std::abs(ratios[0].predicted_mean - prior.mean()) < 3.0 * se);
    }
}

TEST_CASE("ratio is zero exactly when nothing in the post period exceeds") {
    // All sizes below 10^6: any threshold above 6 has observed_p = 0.
    RandomStream rng(3);
    std::vector<SizedEvent> events;
    for (int year = 1816; year <= 2007; ++year)
        for (int k = 0; k < 3; ++k) events.push_back({year, std::pow(10.0, rng.uniform(3.0, 5.8))});
    const SizedEventSet set(std::move(events), Scale::raw_deaths, ThresholdKind::log10_magnitude);

    const auto ratios = predict_proportion_ratios(set, kDefaultSplitYear, {4.0, 6.1}, 1000, 4);
    CHECK(ratios[0].observed_p > 0.0);
    CHECK(ratios[0].ratio > 0.0);
    CHECK(ratios[1].observed_p == 0.0);
    CHECK(ratios[1].ratio == 0.0);
}

TEST_CASE("record order does not change predictions") {
    const auto events = exchangeable_corpus(5);
    std::vector<SizedEvent> reversed(events.records().rbegin(), events.records().rend());
    const SizedEventSet backwards(std::move(reversed), Scale::raw_deaths,
                                  ThresholdKind::log10_magnitude);

    const std::vector<double> grid{3.5, 4.5, 5.5};
    const auto a = predict_proportion_ratios(events, kDefaultSplitYear, grid, 1500, 77);
    const auto b = predict_proportion_ratios(backwards, kDefaultSplitYear, grid, 1500, 77);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(double_bits(a[i].ratio) == double_bits(b[i].ratio));
        CHECK(double_bits(a[i].band_lo) == double_bits(b[i].band_lo));
        CHECK(double_bits(a[i].band_hi) == double_bits(b[i].band_hi));
    }
}

TEST_CASE("degenerate thresholds are flagged and still finite") {
    const auto events = exchangeable_corpus(6);
    // Below every size: b = 0, prior pinned at 1, prediction equals the
    // observed proportion.
    const auto low = predict_proportion_ratios(events, kDefaultSplitYear, {2.0}, 500, 8)[0];
    CHECK(low.degenerate);
    CHECK(low.predicted_mean == 1.0);
    CHECK(low.ratio == low.observed_p);

    // Above every size: a = 0, prior pinned at 0; the floor keeps the ratio
    // finite and every draw is reported as floored.
    const auto high = predict_proportion_ratios(events, kDefaultSplitYear, {8.0}, 500, 8)[0];
    CHECK(high.degenerate);
    CHECK(high.predicted_mean == 0.0);
    CHECK(high.n_floored == 500);
    CHECK(high.observed_p == 0.0);
    CHECK(high.ratio == 0.0);
    CHECK(std::isfinite(high.band_hi));
}

TEST_CASE("exchangeable periods give ratios near one and mostly inside the band") {
    const auto events = exchangeable_corpus(7);
    const auto ratios =
        predict_proportion_ratios(events, kDefaultSplitYear, {3.5, 4.0, 5.0, 6.0}, 4000, 11);
    int inside = 0;
    for (const auto& entry : ratios) {
        CHECK_FALSE(entry.degenerate);
        CHECK(entry.ratio > 0.5);
        CHECK(entry.ratio < 2.0);
        if (entry.ratio >= entry.band_lo && entry.ratio <= entry.band_hi) ++inside;
    }
    // The band is a 66% interval, so a point can legitimately fall outside;
    // most should not. The calibration test below quantifies the rate.
    CHECK(inside >= 3);
}

TEST_CASE("band coverage is calibrated on exchangeable corpora") {
    // Across many stationary corpora the observed ratio should land inside
    // the 66% band about 66% of the time.
    const std::vector<double> grid{4.0, 5.0, 6.0};
    int inside = 0;
    int total = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto corpus = generate_stationary_corpus(1816, 2007, 3.0, LogUniformLaw{3.0, 7.0},
                                                       derive_seed(555, {static_cast<std::uint64_t>(rep)}));
        const auto ratios = predict_proportion_ratios(corpus, kDefaultSplitYear, grid, 400,
                                                      derive_seed(556, {static_cast<std::uint64_t>(rep)}));
        for (const auto& entry : ratios) {
            ++total;
            if (entry.ratio >= entry.band_lo && entry.ratio <= entry.band_hi) ++inside;
        }
    }
    const double coverage = static_cast<double>(inside) / total;
    CHECK(total == 600);
    CHECK(coverage > 0.58);
    CHECK(coverage < 0.74);
}

TEST_CASE("prediction validates its configuration") {
    const auto events = exchangeable_corpus(9);
    CHECK_THROWS_AS(predict_proportion_ratios(events, kDefaultSplitYear, {}, 100, 1), ConfigError);
    CHECK_THROWS_AS(predict_proportion_ratios(events, kDefaultSplitYear, {5.0, 4.0}, 100, 1),
                    ConfigError);
    CHECK_THROWS_AS(predict_proportion_ratios(events, kDefaultSplitYear, {4.0}, 0, 1), ConfigError);
    // Split years outside the data leave one side empty.
    CHECK_THROWS_AS(predict_proportion_ratios(events, 1810, {4.0}, 100, 1), DataError);
    CHECK_THROWS_AS(predict_proportion_ratios(events, 2007, {4.0}, 100, 1), DataError);
}
