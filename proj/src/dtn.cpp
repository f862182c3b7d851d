#include "gratetd/dtn.hpp"

#include <cmath>
#include <numbers>

#include "gratetd/errors.hpp"

namespace gratetd {

cd beta_symbol(cd s, double alpha_n, double c1, double eps_j, double mu_j) {
    if (!(s.real() > 0.0)) fail("laplace_domain", "beta_symbol requires Re s > 0");
    const cd arg = eps_j * mu_j * s * s + (alpha_n + cd(0.0, 1.0) * c1 * s) *
                                              (alpha_n + cd(0.0, 1.0) * c1 * s);
    cd b = std::sqrt(arg);
    if (b.real() >= 0.0) b = -b;
    if (!(b.real() < 0.0))
        fail("branch_degenerate", "beta_symbol: square root landed on the imaginary axis");
    return b;
}

cd beta_symbol(const MediumModel& medium, double c1, int side, int n, cd s) {
    const double alpha = 2.0 * std::numbers::pi * n / medium.period;
    const double ej = side == 1 ? medium.eps1 : medium.eps2;
    const double mj = side == 1 ? medium.mu1 : medium.mu2;
    return beta_symbol(s, alpha, c1, ej, mj);
}

double DtnSymbolTable::alpha(std::size_t bin) const {
    return 2.0 * std::numbers::pi * mode_of_bin(bin, beta.size()) / period;
}

DtnSymbolTable make_symbol_table(const MediumModel& medium, double c1, int side,
                                 int nx, cd s) {
    if (side != 1 && side != 2) fail("side_tag", "side must be 1 or 2");
    if (!is_power_of_two(static_cast<std::size_t>(nx)))
        fail("nx_not_power_of_two", "boundary grid size must be a power of two");
    DtnSymbolTable t;
    t.s = s;
    t.side = side;
    t.period = medium.period;
    t.mu_j = side == 1 ? medium.mu1 : medium.mu2;
    t.beta.resize(static_cast<std::size_t>(nx));
    for (std::size_t k = 0; k < t.beta.size(); ++k)
        t.beta[k] = beta_symbol(medium, c1, side, mode_of_bin(k, t.beta.size()), s);
    return t;
}

BoundaryTrace apply_dtn(const BoundaryTrace& trace, const DtnSymbolTable& table) {
    if (trace.size() != table.beta.size())
        fail("trace_size_mismatch", "trace and symbol table sizes differ");
    auto coeffs = trace.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= table.beta[k];
    BoundaryTrace out = BoundaryTrace::from_coefficients(trace.side, trace.period, coeffs);
    return out;
}

double hs_boundary_norm(const BoundaryTrace& trace, cd s, double lambda) {
    const auto coeffs = trace.coefficients();
    const std::size_t n = coeffs.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double alpha = 2.0 * std::numbers::pi * mode_of_bin(k, n) / trace.period;
        acc += std::pow(std::norm(s) + alpha * alpha, lambda) * std::norm(coeffs[k]);
    }
    return std::sqrt(acc);
}

namespace {

// exact integral of |p|^2 for the linear segment p(0)=a, p(h)=b
double seg_l2(cd a, cd b, double h) {
    return h / 3.0 * (std::norm(a) + (a * std::conj(b)).real() + std::norm(b));
}

} // namespace

double hsp_volume_norm(const SDomainField& field, const StripMesh& mesh, cd s) {
    const int nx = mesh.nx, nz = mesh.nz;
    const double dz = mesh.dz();
    // per-z-line DFT
    std::vector<std::vector<cd>> lines(nz + 1);
    for (int k = 0; k <= nz; ++k) {
        std::vector<cd> row(field.values.begin() + static_cast<std::size_t>(k) * nx,
                            field.values.begin() + static_cast<std::size_t>(k + 1) * nx);
        lines[k] = dft_coefficients(row);
    }
    double acc = 0.0;
    for (int bin = 0; bin < nx; ++bin) {
        const double alpha =
            2.0 * std::numbers::pi * mode_of_bin(bin, static_cast<std::size_t>(nx)) / mesh.period;
        const double w = std::norm(s) + alpha * alpha;
        for (int k = 0; k < nz; ++k) {
            const cd a = lines[k][bin];
            const cd b = lines[k + 1][bin];
            acc += w * seg_l2(a, b, dz) + std::norm(b - a) / dz;
        }
    }
    return std::sqrt(mesh.period * acc);
}

double hsp_volume_norm_nodal(const SDomainField& field, const StripMesh& mesh, cd s) {
    const int nx = mesh.nx, nz = mesh.nz;
    const double dz = mesh.dz();
    const double dx = mesh.dx();
    // spectral x-derivative per z-line
    std::vector<std::vector<cd>> ux(nz + 1);
    for (int k = 0; k <= nz; ++k) {
        std::vector<cd> row(field.values.begin() + static_cast<std::size_t>(k) * nx,
                            field.values.begin() + static_cast<std::size_t>(k + 1) * nx);
        auto coeffs = dft_coefficients(row);
        for (int bin = 0; bin < nx; ++bin) {
            const double alpha =
                2.0 * std::numbers::pi * mode_of_bin(bin, static_cast<std::size_t>(nx)) /
                mesh.period;
            coeffs[bin] *= cd(0.0, alpha);
        }
        ux[k] = dft_nodal(coeffs);
    }
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) {
        for (int k = 0; k < nz; ++k) {
            const cd a = field.values[mesh.node(i, k)];
            const cd b = field.values[mesh.node(i, k + 1)];
            acc += std::norm(s) * seg_l2(a, b, dz);       // |s u|^2
            acc += seg_l2(ux[k][i], ux[k + 1][i], dz);    // |du/dx|^2
            acc += std::norm(b - a) / dz;                 // |du/dz|^2
        }
    }
    return std::sqrt(dx * acc);
}

BoundaryTrace extend_field_exterior(const BoundaryTrace& total_trace,
                                    const IncidentPulse& pulse, cd s,
                                    const MediumModel& medium, double z) {
    if (z > medium.h2 && z < medium.h1)
        fail("height_inside_strip", "extension height must lie outside [h2, h1]");
    const std::size_t n = total_trace.size();
    auto coeffs = total_trace.coefficients();

    if (z >= medium.h1) {
        if (total_trace.side != 1) fail("side_tag", "upper extension needs a Gamma_1 trace");
        const cd inc_h1 = incident_field_s(pulse, s, medium.h1, medium.h1);
        coeffs[0] -= inc_h1; // incident lives in mode 0 only
        for (std::size_t k = 0; k < n; ++k) {
            const cd b = beta_symbol(medium, pulse.c1(), 1, mode_of_bin(k, n), s);
            coeffs[k] *= std::exp(b * (z - medium.h1));
        }
        coeffs[0] += incident_field_s(pulse, s, z, medium.h1);
    } else {
        if (total_trace.side != 2) fail("side_tag", "lower extension needs a Gamma_2 trace");
        for (std::size_t k = 0; k < n; ++k) {
            const cd b = beta_symbol(medium, pulse.c1(), 2, mode_of_bin(k, n), s);
            coeffs[k] *= std::exp(-b * (z - medium.h2));
        }
    }
    return BoundaryTrace::from_coefficients(total_trace.side, total_trace.period, coeffs);
}

} // namespace gratetd
