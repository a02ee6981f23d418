#include "declinekit/beta.hpp"

#include "declinekit/errors.hpp"
#include "declinekit/random.hpp"

namespace declinekit {

BetaParams::BetaParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (alpha < 0.0 || beta < 0.0) throw ConfigError("BetaParams: negative shape parameter");
    if (alpha == 0.0 && beta == 0.0)
        throw ConfigError("BetaParams: alpha and beta are both zero; distribution undefined");
}

double BetaParams::mean() const { return alpha / (alpha + beta); }

double BetaParams::variance() const {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
}

std::vector<double> sample_beta(const BetaParams& params, int n_draws, std::uint64_t seed) {
    if (n_draws < 1) throw ConfigError("sample_beta: n_draws must be >= 1");
    if (params.is_point_mass())
        return std::vector<double>(static_cast<std::size_t>(n_draws),
                                   params.point_mass_location());
    std::vector<double> draws(static_cast<std::size_t>(n_draws));
    RandomStream stream(seed);
    for (double& d : draws) d = stream.beta(params.alpha, params.beta);
    return draws;
}

}  // namespace declinekit
