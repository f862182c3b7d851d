#include "gratetd/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gratetd/errors.hpp"

namespace gratetd {

namespace {

double span_min(std::span<const double> v) {
    return *std::min_element(v.begin(), v.end());
}
double span_max(std::span<const double> v) {
    return *std::max_element(v.begin(), v.end());
}

void check_geometry(double period, double h1, double h2, int nx, int nz) {
    if (!(period > 0.0)) fail("period_nonpositive", "period must be > 0");
    if (!(h2 < h1)) fail("strip_bounds", "strip requires h2 < h1");
    if (nx < 1 || nz < 1) fail("grid_dims", "grid dims must be positive");
}

void throw_first_violation(const MediumModel& m) {
    const auto report = validate(m);
    if (!report.empty()) fail(report.front(), "medium invariant violated: " + report.front());
}

} // namespace

double MediumModel::eps_min() const {
    return std::min({span_min(eps_cells), eps1, eps2});
}
double MediumModel::eps_max() const {
    return std::max({span_max(eps_cells), eps1, eps2});
}
double MediumModel::mu_min() const {
    return std::min({span_min(mu_cells), mu1, mu2});
}
double MediumModel::mu_max() const {
    return std::max({span_max(mu_cells), mu1, mu2});
}

bool MediumModel::x_independent() const {
    for (int k = 0; k < nz; ++k)
        for (int i = 1; i < nx; ++i)
            if (eps(i, k) != eps(0, k) || mu(i, k) != mu(0, k)) return false;
    return true;
}

MediumModel build_layered(std::span<const Layer> layers, double period, double h1,
                          double h2, int nx, int nz, const ExteriorMedia& ext,
                          Polarization pol) {
    check_geometry(period, h1, h2, nx, nz);
    if (layers.empty()) fail("layers_empty", "at least one layer is required");
    const double tol = 1e-12 * (h1 - h2);
    if (std::abs(layers.front().z_top - h1) > tol)
        fail("layer_bounds", "first layer must start at h1");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].z_top > h1 + tol || layers[l].z_top < h2 - tol)
            fail("layer_bounds", "layer boundaries must lie inside [h2, h1]");
        if (l > 0 && !(layers[l].z_top < layers[l - 1].z_top))
            fail("layer_order", "layer boundaries must be strictly decreasing");
        if (!(layers[l].eps > 0.0) || !(layers[l].mu > 0.0))
            fail("positivity", "layer eps and mu must be positive");
    }

    MediumModel m;
    m.period = period;
    m.h1 = h1;
    m.h2 = h2;
    m.nx = nx;
    m.nz = nz;
    m.eps1 = ext.eps1;
    m.mu1 = ext.mu1;
    m.eps2 = ext.eps2;
    m.mu2 = ext.mu2;
    m.polarization = pol;
    m.eps_cells.assign(static_cast<std::size_t>(nx) * nz, 0.0);
    m.mu_cells.assign(static_cast<std::size_t>(nx) * nz, 0.0);

    for (int k = 0; k < nz; ++k) {
        const double zm = m.cell_z_mid(k);
        // first layer whose z_top is above the cell midpoint, scanning bottom-up
        std::size_t pick = 0;
        for (std::size_t l = 0; l < layers.size(); ++l)
            if (zm <= layers[l].z_top) pick = l;
        for (int i = 0; i < nx; ++i) {
            m.eps_cells[m.cell(i, k)] = layers[pick].eps;
            m.mu_cells[m.cell(i, k)] = layers[pick].mu;
        }
    }
    throw_first_violation(m);
    return m;
}

MediumModel build_binary_grating(std::span<const double> profile, double eps_above,
                                 double mu_above, double eps_below, double mu_below,
                                 double period, double h1, double h2, int nx, int nz,
                                 const ExteriorMedia& ext, Polarization pol) {
    check_geometry(period, h1, h2, nx, nz);
    if (static_cast<int>(profile.size()) != nx)
        fail("profile_size", "profile must have one sample per column");
    for (double z : profile)
        if (!(z > h2) || !(z < h1))
            fail("profile_out_of_range", "interface profile must lie strictly inside (h2, h1)");
    if (!(eps_above > 0.0) || !(mu_above > 0.0) || !(eps_below > 0.0) || !(mu_below > 0.0))
        fail("positivity", "grating eps and mu must be positive");

    MediumModel m;
    m.period = period;
    m.h1 = h1;
    m.h2 = h2;
    m.nx = nx;
    m.nz = nz;
    m.eps1 = ext.eps1;
    m.mu1 = ext.mu1;
    m.eps2 = ext.eps2;
    m.mu2 = ext.mu2;
    m.polarization = pol;
    m.eps_cells.assign(static_cast<std::size_t>(nx) * nz, 0.0);
    m.mu_cells.assign(static_cast<std::size_t>(nx) * nz, 0.0);

    for (int i = 0; i < nx; ++i) {
        for (int k = 0; k < nz; ++k) {
            const bool below = m.cell_z_mid(k) < profile[i];
            m.eps_cells[m.cell(i, k)] = below ? eps_below : eps_above;
            m.mu_cells[m.cell(i, k)] = below ? mu_below : mu_above;
        }
    }
    throw_first_violation(m);
    return m;
}

std::vector<std::string> validate(const MediumModel& m) {
    std::vector<std::string> report;

    bool positive = m.eps1 > 0.0 && m.mu1 > 0.0 && m.eps2 > 0.0 && m.mu2 > 0.0;
    for (double v : m.eps_cells) positive = positive && v > 0.0 && std::isfinite(v);
    for (double v : m.mu_cells) positive = positive && v > 0.0 && std::isfinite(v);
    if (!positive) report.push_back("positivity");

    const double floor = m.eps1 * m.mu1;
    bool product_ok = m.eps2 * m.mu2 >= floor * (1.0 - 1e-14);
    for (std::size_t c = 0; c < m.eps_cells.size(); ++c)
        product_ok = product_ok && m.eps_cells[c] * m.mu_cells[c] >= floor * (1.0 - 1e-14);
    if (!product_ok) report.push_back("epsmu_below_freespace");

    bool constancy = true;
    for (int i = 0; i < m.nx; ++i) {
        constancy = constancy && m.eps(i, m.nz - 1) == m.eps1 && m.mu(i, m.nz - 1) == m.mu1;
        constancy = constancy && m.eps(i, 0) == m.eps2 && m.mu(i, 0) == m.mu2;
    }
    if (!constancy) report.push_back("exterior_constancy");

    return report;
}

MediumModel swap_polarization(const MediumModel& medium) {
    MediumModel out = medium;
    out.eps_cells = medium.mu_cells;
    out.mu_cells = medium.eps_cells;
    out.eps1 = medium.mu1;
    out.mu1 = medium.eps1;
    out.eps2 = medium.mu2;
    out.mu2 = medium.eps2;
    out.polarization = medium.polarization == Polarization::TE ? Polarization::TM
                                                               : Polarization::TE;
    return out;
}

} // namespace gratetd
