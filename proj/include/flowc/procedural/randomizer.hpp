#pragma once

#include <cstdint>
#include <stdexcept>

namespace flowc::procedural {

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// PCG32 (XSH-RR output, 64-bit state, odd 64-bit increment selecting the
/// stream). Seeding follows the reference pcg32_srandom_r, so sequences are
/// identical on every platform.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next();

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
};

/// Seeded random source with a scatter factor for `around`.
class Randomizer {
public:
    static constexpr double kDefaultScatter = 0.1;

    explicit Randomizer(std::uint64_t seed = 0, double scatter = kDefaultScatter, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    double scatter() const { return scatter_; }
    /// Throws ArgumentError unless 0 <= scatter < 1.
    void set_scatter(double scatter);

    /// Uniform in [0, 1) with 53 random bits.
    double unit();

    /// Uniform in [a, b]. Throws ArgumentError when a > b.
    double interval(double a, double b);
    /// interval(a, b) rounded half-up to an integral value.
    double discrete_interval(double a, double b);
    /// Uniform in [x(1 - scatter), x(1 + scatter)]; exactly x at zero scatter.
    double around(double x);
    bool flip_coin();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    double scatter_ = kDefaultScatter;
    Pcg32 rng_;
};

}  // namespace flowc::procedural
