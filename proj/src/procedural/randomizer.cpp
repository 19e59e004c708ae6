#include "flowc/procedural/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flowc::procedural {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream)
{
    inc_ = (stream << 1u) | 1u;
    next();
    state_ += seed;
    next();
}

std::uint32_t Pcg32::next()
{
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

Randomizer::Randomizer(std::uint64_t seed, double scatter, std::uint64_t stream)
    : seed_(seed), stream_(stream), rng_(seed, stream)
{
    set_scatter(scatter);
}

void Randomizer::set_scatter(double scatter)
{
    if (!(scatter >= 0.0 && scatter < 1.0))
        throw ArgumentError("scatter must be in [0, 1), got " + std::to_string(scatter));
    scatter_ = scatter;
}

double Randomizer::unit()
{
    std::uint64_t hi = rng_.next();
    std::uint64_t lo = rng_.next();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

double Randomizer::interval(double a, double b)
{
    if (!(a <= b))
        throw ArgumentError("interval(a, b) needs a <= b, got " + std::to_string(a) + " > " + std::to_string(b));
    double u = unit();
    if (a == b)
        return a;
    return std::clamp(a + (b - a) * u, a, b);
}

double Randomizer::discrete_interval(double a, double b)
{
    return std::floor(interval(a, b) + 0.5);
}

double Randomizer::around(double x)
{
    double lo = x * (1.0 - scatter_);
    double hi = x * (1.0 + scatter_);
    double u = unit();
    if (lo == hi)
        return x;
    return std::clamp(lo + (hi - lo) * u, std::min(lo, hi), std::max(lo, hi));
}

bool Randomizer::flip_coin()
{
    return unit() < 0.5;
}

}  // namespace flowc::procedural
