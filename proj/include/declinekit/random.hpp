#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>

namespace declinekit {

// SplitMix64 step; used for seeding and for deriving substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic substream derivation: folds each coordinate into the master
// seed so that every (seed, coords...) pair names one fixed stream. Scans and
// replicate loops use this to stay independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

inline std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

// xoshiro256++ stream with the transforms this project needs. All sampling is
// implemented here rather than with <random> distributions because identical
// (inputs, seed) must reproduce identical draw sequences.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();
    // Uniform on (0, 1); safe as a log/pow argument.
    double uniform_open01();
    double uniform(double lo, double hi);

    // Standard normal (Marsaglia polar, second value cached).
    double normal();

    // Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the shape<1 boost).
    double gamma(double shape);

    // Beta(a, b), both shapes strictly positive.
    double beta(double a, double b);

    // Poisson(rate), rate > 0.
    int poisson(double rate);

    // Binomial(n, p) by Bernoulli summation; n is small in this project.
    int binomial(int n, double p);

private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace declinekit
