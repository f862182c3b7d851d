#include "gratetd/fourier.hpp"

#include <cmath>
#include <numbers>

#include "gratetd/errors.hpp"

namespace gratetd {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) fail("fft_size", "FFT size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (cd& x : a) x *= inv;
    }
}

std::vector<cd> dft_coefficients(std::span<const cd> nodal) {
    std::vector<cd> a(nodal.begin(), nodal.end());
    fft_radix2(a, false);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (cd& x : a) x *= inv;
    return a;
}

std::vector<cd> dft_nodal(std::span<const cd> coefficients) {
    std::vector<cd> a(coefficients.begin(), coefficients.end());
    fft_radix2(a, true);
    const double n = static_cast<double>(a.size());
    for (cd& x : a) x *= n; // undo the inverse normalization: nodal = N * ifft
    return a;
}

std::vector<cd> BoundaryTrace::coefficients() const {
    return dft_coefficients(values);
}

BoundaryTrace BoundaryTrace::from_coefficients(int side, double period,
                                               std::span<const cd> coeffs) {
    BoundaryTrace t;
    t.side = side;
    t.period = period;
    t.values = dft_nodal(coeffs);
    return t;
}

} // namespace gratetd
