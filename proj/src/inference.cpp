#include "declinekit/inference.hpp"

#include <cmath>
#include <string>

#include "declinekit/errors.hpp"
#include "declinekit/random.hpp"
#include "declinekit/special_functions.hpp"

namespace declinekit {

namespace {
// Role tags for deriving the prior and posterior substreams from a cell seed.
constexpr std::uint64_t kPriorRole = 0x7072696f72ULL;
constexpr std::uint64_t kPosteriorRole = 0x706f7374ULL;
}  // namespace

BetaParams PartitionCounts::prior() const {
    return BetaParams(static_cast<double>(a), static_cast<double>(b));
}

BetaParams PartitionCounts::posterior() const {
    return BetaParams(static_cast<double>(y + a), static_cast<double>(n_minus_y + b));
}

PartitionCounts partition_counts(const SizedEventSet& events, int t_hat, double m) {
    if (events.empty()) throw DataError("partition_counts: empty event set");
    PartitionCounts counts;
    counts.t_hat = t_hat;
    counts.m = m;
    for (const auto& event : events.records()) {
        const bool pre = event.onset_year <= t_hat;
        const bool exceeds = events.exceeds(event, m);
        if (pre) {
            if (exceeds) ++counts.a;
            else ++counts.b;
        } else {
            if (exceeds) ++counts.y;
            else ++counts.n_minus_y;
        }
    }
    return counts;
}

McDeclineResult mc_decline_probability(const BetaParams& prior, const BetaParams& posterior,
                                       int n_draws, std::uint64_t seed) {
    if (n_draws < 1) throw ConfigError("mc_decline_probability: n_draws must be >= 1");

    McDeclineResult result;
    result.degenerate = prior.is_point_mass() || posterior.is_point_mass();

    if (prior.is_point_mass() && posterior.is_point_mass()) {
        result.pr_decline =
            posterior.point_mass_location() < prior.point_mass_location() ? 1.0 : 0.0;
        return result;
    }

    const auto prior_draws =
        sample_beta(prior, n_draws, derive_seed(seed, {kPriorRole}));
    const auto posterior_draws =
        sample_beta(posterior, n_draws, derive_seed(seed, {kPosteriorRole}));

    long long negative = 0;
    for (int i = 0; i < n_draws; ++i)
        if (posterior_draws[static_cast<std::size_t>(i)] <
            prior_draws[static_cast<std::size_t>(i)])
            ++negative;
    result.pr_decline = static_cast<double>(negative) / static_cast<double>(n_draws);
    return result;
}

DeclineEstimate probability_of_decline(const PartitionCounts& counts, int n_draws,
                                       std::uint64_t seed) {
    if (counts.pre_total() == 0)
        throw DataError("probability_of_decline: no pre-changepoint events at t_hat=" +
                        std::to_string(counts.t_hat) + "; prior undefined");

    const auto mc = mc_decline_probability(counts.prior(), counts.posterior(), n_draws, seed);

    DeclineEstimate estimate;
    estimate.t_hat = counts.t_hat;
    estimate.m = counts.m;
    estimate.pr_decline = mc.pr_decline;
    estimate.n_draws = n_draws;
    estimate.seed = seed;
    estimate.degenerate = mc.degenerate;
    return estimate;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9 && x >= 1.0; }

// P(X < Y) with X ~ Beta(ax, bx) where ax, bx are positive integers and
// Y ~ Beta(ay, by) arbitrary: expand the Beta(ax, bx) CDF as a binomial sum,
// integrate each term against the Y density in closed form.
double integer_cdf_sum(long long ax, long long bx, double ay, double by) {
    const long long s = ax + bx;  // X CDF uses s-1 Bernoulli trials
    const double log_beta_y = log_beta(ay, by);
    double total = 0.0;
    for (long long j = ax; j <= s - 1; ++j) {
        const double log_choose = std::lgamma(static_cast<double>(s)) -
                                  std::lgamma(static_cast<double>(j + 1)) -
                                  std::lgamma(static_cast<double>(s - j));
        const double log_term =
            log_choose + log_beta(ay + static_cast<double>(j),
                                  by + static_cast<double>(s - 1 - j)) -
            log_beta_y;
        total += std::exp(log_term);
    }
    return total;
}

// P(X < Y) by Simpson quadrature of u -> F_X(Q_Y(u)) on [0, 1]. The CDF
// substitution keeps the integrand bounded in [0, 1] even for shapes < 1.
double quadrature_probability(double ax, double bx, double ay, double by) {
    // P(X < Y) = integral over u in [0,1] of F_X(Q_Y(u)). Substituting
    // u = (1 - cos(pi t))/2 makes the transformed integrand vanish at both
    // endpoints, which tames the derivative blow-ups the raw integrand has
    // there and lets composite Simpson reach near machine accuracy.
    constexpr int kIntervals = 10000;  // grid step 1e-4 in t
    const double h = 1.0 / kIntervals;
    double sum = 0.0;  // the endpoint terms are exactly zero
    for (int i = 1; i < kIntervals; ++i) {
        const double t = static_cast<double>(i) * h;
        const double u = 0.5 - 0.5 * std::cos(kPi * t);
        const double jacobian = 0.5 * kPi * std::sin(kPi * t);
        const double q = incomplete_beta_inv(ay, by, u);
        const double g = incomplete_beta(ax, bx, q);
        sum += (i % 2 == 1 ? 4.0 : 2.0) * g * jacobian;
    }
    return sum * h / 3.0;
}

}  // namespace

double exact_decline_probability(const BetaParams& prior, const BetaParams& posterior) {
    if (prior.is_point_mass() || posterior.is_point_mass())
        throw ConfigError("exact_decline_probability: point-mass parameters not supported");

    // Want P(post < prior). Prefer the exact sum over whichever side has
    // integer shapes, complementing when the sum runs over the prior.
    constexpr long long kMaxTerms = 2'000'000;
    const bool post_integer = near_integer(posterior.alpha) && near_integer(posterior.beta);
    const bool prior_integer = near_integer(prior.alpha) && near_integer(prior.beta);
    const long long post_terms =
        post_integer ? static_cast<long long>(std::llround(posterior.beta)) : kMaxTerms + 1;
    const long long prior_terms =
        prior_integer ? static_cast<long long>(std::llround(prior.beta)) : kMaxTerms + 1;

    if (post_integer && post_terms <= kMaxTerms &&
        (!prior_integer || post_terms <= prior_terms)) {
        return integer_cdf_sum(std::llround(posterior.alpha), std::llround(posterior.beta),
                               prior.alpha, prior.beta);
    }
    if (prior_integer && prior_terms <= kMaxTerms) {
        // P(post < prior) = 1 - P(prior < post) for continuous distributions.
        return 1.0 - integer_cdf_sum(std::llround(prior.alpha), std::llround(prior.beta),
                                     posterior.alpha, posterior.beta);
    }
    return quadrature_probability(posterior.alpha, posterior.beta, prior.alpha, prior.beta);
}

}  // namespace declinekit
