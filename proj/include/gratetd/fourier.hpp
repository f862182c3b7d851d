#ifndef GRATETD_FOURIER_HPP
#define GRATETD_FOURIER_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gratetd {

using cd = std::complex<double>;

bool is_power_of_two(std::size_t n);

// In-place radix-2 FFT. Forward is unnormalized; the inverse divides by n.
// Size must be a power of two.
void fft_radix2(std::vector<cd>& a, bool inverse);

// Fourier coefficients u_n of nodal samples on a uniform periodic grid,
// normalized so that u(x) = sum_n u_n exp(i alpha_n x). Bin k holds mode
// mode_of_bin(k, n), i.e. n in [-N/2, N/2).
std::vector<cd> dft_coefficients(std::span<const cd> nodal);
std::vector<cd> dft_nodal(std::span<const cd> coefficients);

inline int mode_of_bin(std::size_t k, std::size_t n) {
    return k <= n / 2 - 1 ? static_cast<int>(k)
                          : static_cast<int>(k) - static_cast<int>(n);
}

/// Complex nodal values of a field on one of the artificial boundaries,
/// together with the side tag (1 = top, 2 = bottom) and the period.
struct BoundaryTrace {
    int side = 1;
    double period = 1.0;
    std::vector<cd> values; // nodal, size must be a power of two

    std::size_t size() const { return values.size(); }
    std::vector<cd> coefficients() const;

    static BoundaryTrace from_coefficients(int side, double period,
                                           std::span<const cd> coeffs);
};

} // namespace gratetd

#endif
