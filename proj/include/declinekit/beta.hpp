#pragma once

#include <cstdint>
#include <vector>

namespace declinekit {

// Beta shape parameters. Counts are allowed to be zero on one side, in which
// case the distribution is treated as a declared point mass: Beta(a, 0) is a
// point mass at 1, Beta(0, b) a point mass at 0. Both zero is undefined.
struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;

    BetaParams(double alpha_, double beta_);

    bool is_point_mass() const { return alpha == 0.0 || beta == 0.0; }
    double point_mass_location() const { return beta == 0.0 ? 1.0 : 0.0; }

    double mean() const;
    double variance() const;
};

// n_draws seeded draws. Point-mass parameters return the constant without
// consuming randomness; identical (params, n_draws, seed) give identical
// sequences.
std::vector<double> sample_beta(const BetaParams& params, int n_draws, std::uint64_t seed);

}  // namespace declinekit
