#include "declinekit/random.hpp"

#include <cmath>
#include <stdexcept>

namespace declinekit {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
    // Chain the SplitMix64 finalizer: each step feeds the previous mixed
    // value xor the next coordinate back in, so structured coordinate grids
    // (years x small indices) cannot collide by arithmetic accident.
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t c : coords) {
        state = h ^ c;
        h = splitmix64(state);
    }
    return h;
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
    // Expand the seed with SplitMix64; xoshiro state must not be all zero.
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double RandomStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
}

double RandomStream::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
    if (shape < 1.0) {
        // Boost: Gamma(shape) = Gamma(shape + 1) * U^{1/shape}
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform_open01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RandomStream::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
}

int RandomStream::poisson(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("poisson: rate must be > 0");
    // Knuth multiplication, chunked so exp(-rate) never underflows.
    int count = 0;
    double remaining = rate;
    while (remaining > 30.0) {
        count += poisson(30.0);
        remaining -= 30.0;
    }
    const double limit = std::exp(-remaining);
    double prod = uniform01();
    while (prod > limit) {
        ++count;
        prod *= uniform01();
    }
    return count;
}

int RandomStream::binomial(int n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    int k = 0;
    for (int i = 0; i < n; ++i)
        if (uniform01() < p) ++k;
    return k;
}

}  // namespace declinekit
