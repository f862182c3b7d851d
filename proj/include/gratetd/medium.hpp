#ifndef GRATETD_MEDIUM_HPP
#define GRATETD_MEDIUM_HPP

#include <span>
#include <string>
#include <vector>

namespace gratetd {

enum class Polarization { TE, TM };

/// Periodic medium on the strip [0, period] x [h2, h1]: cellwise-constant
/// permittivity/permeability samples on an nx-by-nz grid plus the exterior
/// constants above (eps1, mu1) and below (eps2, mu2). The x index wraps
/// periodically. Immutable after construction; share freely across threads.
struct MediumModel {
    double period = 1.0;
    double h1 = 0.5;
    double h2 = -0.5;
    int nx = 1;
    int nz = 1;
    std::vector<double> eps_cells; // nx*nz, cell (i,k) at k*nx+i, k = 0 at h2
    std::vector<double> mu_cells;
    double eps1 = 1.0, mu1 = 1.0;
    double eps2 = 1.0, mu2 = 1.0;
    Polarization polarization = Polarization::TE;

    double eps(int i, int k) const { return eps_cells[cell(i, k)]; }
    double mu(int i, int k) const { return mu_cells[cell(i, k)]; }
    std::size_t cell(int i, int k) const {
        const int iw = ((i % nx) + nx) % nx;
        return static_cast<std::size_t>(k) * nx + iw;
    }

    double dx() const { return period / nx; }
    double dz() const { return (h1 - h2) / nz; }
    double cell_x_mid(int i) const { return (i + 0.5) * dx(); }
    double cell_z_mid(int k) const { return h2 + (k + 0.5) * dz(); }

    // Extrema over the strip cells and the exterior constants.
    double eps_min() const;
    double eps_max() const;
    double mu_min() const;
    double mu_max() const;

    bool x_independent() const;
};

struct Layer {
    double z_top; // layer spans from the next layer's z_top (or h2) up to z_top
    double eps;
    double mu;
};

struct ExteriorMedia {
    double eps1 = 1.0, mu1 = 1.0;
    double eps2 = 1.0, mu2 = 1.0;
};

/// Stack of horizontal layers given top-down; layers.front().z_top must be h1.
MediumModel build_layered(std::span<const Layer> layers, double period, double h1,
                          double h2, int nx, int nz, const ExteriorMedia& ext,
                          Polarization pol = Polarization::TE);

/// Binary grating: per-column interface height profile (nx samples at column
/// midpoints); cells above the profile take (eps_above, mu_above), cells below
/// (eps_below, mu_below). Profile values must lie strictly inside (h2, h1).
MediumModel build_binary_grating(std::span<const double> profile, double eps_above,
                                 double mu_above, double eps_below, double mu_below,
                                 double period, double h1, double h2, int nx, int nz,
                                 const ExteriorMedia& ext,
                                 Polarization pol = Polarization::TE);

/// Names of all violated invariants; empty means the model is admissible.
/// Possible entries: "positivity", "epsmu_below_freespace", "exterior_constancy".
std::vector<std::string> validate(const MediumModel& medium);

/// Exchange the roles of eps and mu (fields and exterior constants) and flip
/// the polarization tag. Involution; preserves the product eps*mu cellwise.
MediumModel swap_polarization(const MediumModel& medium);

} // namespace gratetd

#endif
