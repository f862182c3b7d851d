#ifndef GRATETD_RNG_HPP
#define GRATETD_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace gratetd {

/// Seeded generator with hand-rolled value mappings so identical seeds give
/// identical streams everywhere.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }
    int uniform_int(int a, int b) {
        return a + static_cast<int>(unit() * (b - a + 1) * (1.0 - 1e-16));
    }
    bool coin() { return (gen() & 1ull) != 0; }
    std::complex<double> complex_box(double scale) {
        const double re = uniform(-scale, scale);
        return {re, uniform(-scale, scale)};
    }
};

} // namespace gratetd

#endif
