#pragma once

#include <cstdint>

#include "declinekit/beta.hpp"
#include "declinekit/event_set.hpp"

namespace declinekit {

// Default Monte Carlo sample count for decline probabilities. Standard error
// at this size is at most 0.005, well under the tolerances used downstream.
inline constexpr int kDefaultDeclineDraws = 10000;

// The four counts induced by splitting the events at changepoint year t_hat
// (inclusive: onset_year <= t_hat is "before") and size threshold m
// (inclusive: size at least m counts as exceeding).
struct PartitionCounts {
    long long a = 0;          // pre-changepoint events with size >= m
    long long b = 0;          // pre-changepoint events with size <  m
    long long y = 0;          // post-changepoint events with size >= m
    long long n_minus_y = 0;  // post-changepoint events with size <  m
    int t_hat = 0;
    double m = 0.0;

    long long pre_total() const { return a + b; }
    long long post_total() const { return y + n_minus_y; }

    // Prior from the pre period; posterior adds the post-period counts.
    BetaParams prior() const;
    BetaParams posterior() const;
};

PartitionCounts partition_counts(const SizedEventSet& events, int t_hat, double m);

// One cell of the changepoint scan.
struct DeclineEstimate {
    int t_hat = 0;
    double m = 0.0;
    double pr_decline = 0.0;
    int n_draws = 0;
    std::uint64_t seed = 0;
    bool degenerate = false;  // a point-mass prior or posterior was involved
};

struct McDeclineResult {
    double pr_decline = 0.0;
    bool degenerate = false;
};

// Monte Carlo estimate of P(theta_post < theta_prior): paired independent
// draw sequences (substreams derived from seed per role), counting strictly
// negative posterior-minus-prior differences. Ties count as non-decline.
McDeclineResult mc_decline_probability(const BetaParams& prior, const BetaParams& posterior,
                                       int n_draws, std::uint64_t seed);

DeclineEstimate probability_of_decline(const PartitionCounts& counts, int n_draws,
                                       std::uint64_t seed);

// Deterministic value of P(theta_post < theta_prior) for strictly positive
// shapes: an exact finite sum when either pair is integer-valued, otherwise
// quadrature on a CDF-transformed grid of step 1e-4. Independent of the
// Monte Carlo path; used to validate it.
double exact_decline_probability(const BetaParams& prior, const BetaParams& posterior);

}  // namespace declinekit
