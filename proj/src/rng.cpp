#include "nocurl/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nocurl {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t v) {
    std::uint64_t state = v;
    return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
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

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    // Lemire's multiply-shift with rejection; exactly uniform.
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        std::uint64_t floor = (0 - n) % n;
        while (lo < floor) {
            x = next_u64();
            m = static_cast<unsigned __int128>(x) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("Rng::uniform: requires a < b");
    return a + (b - a) * uniform();
}

double Rng::gaussian(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("Rng::gaussian: requires sigma > 0");
    // Box-Muller; two words per draw, no cached state.
    double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = double(next_u64() >> 11) * 0x1.0p-53;        // [0, 1)
    double radius = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gumbel(double mu, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("Rng::gumbel: requires beta > 0");
    double u = (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
    return mu - beta * std::log(-std::log(u));
}

Vector Rng::draw_uniform(Index count, double a, double b) {
    Vector v(count);
    for (Index i = 0; i < count; ++i) v(i) = uniform(a, b);
    return v;
}

Vector Rng::draw_gaussian(Index count, double mu, double sigma) {
    Vector v(count);
    for (Index i = 0; i < count; ++i) v(i) = gaussian(mu, sigma);
    return v;
}

Vector Rng::draw_gumbel(Index count, double mu, double beta) {
    Vector v(count);
    for (Index i = 0; i < count; ++i) v(i) = gumbel(mu, beta);
    return v;
}

}  // namespace nocurl
