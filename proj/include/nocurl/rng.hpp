#pragma once

#include "nocurl/types.hpp"

#include <cstdint>

namespace nocurl {

// Deterministic xoshiro256++ generator seeded via splitmix64. The stream
// depends only on the seed, not on platform or standard library, so any
// result derived from a seed is reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    // Unbiased integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);

    // Uniform on [a, b); requires a < b. uniform() is shorthand for [0, 1).
    double uniform();
    double uniform(double a, double b);

    // Box-Muller transform; requires sigma > 0.
    double gaussian(double mu, double sigma);

    // Inverse-CDF sampling mu - beta*log(-log(u)); requires beta > 0.
    double gumbel(double mu, double beta);

    Vector draw_uniform(Index count, double a, double b);
    Vector draw_gaussian(Index count, double mu, double sigma);
    Vector draw_gumbel(Index count, double mu, double beta);

    // Splitmix64 finalizer; used to derive independent purpose-specific
    // seeds from one master seed.
    static std::uint64_t mix(std::uint64_t v);

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

}  // namespace nocurl
