#include "gratetd/oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gratetd/errors.hpp"

namespace gratetd {
namespace oracle {

cd homogeneous_reference(const IncidentPulse& pulse, cd s, double z, double h1) {
    return incident_field_s(pulse, s, z, h1);
}

cd LayerReference::eval(double z) const {
    if (z >= h0)
        return up_hi * std::exp(beta_hi * (z - h1)) + down_hi * std::exp(-beta_hi * (z - h1));
    return up_lo * std::exp(beta_lo * (z - h2)) + down_lo * std::exp(-beta_lo * (z - h2));
}

cd LayerReference::eval_dz(double z) const {
    if (z >= h0)
        return beta_hi * (up_hi * std::exp(beta_hi * (z - h1)) -
                          down_hi * std::exp(-beta_hi * (z - h1)));
    return beta_lo * (up_lo * std::exp(beta_lo * (z - h2)) -
                      down_lo * std::exp(-beta_lo * (z - h2)));
}

LayerReference flat_layer_reference(const IncidentPulse& pulse, cd s,
                                    const MediumModel& medium) {
    if (!medium.x_independent())
        fail("not_single_interface", "flat_layer_reference needs an x-independent medium");

    // locate the unique interface (the mesh row where (eps, mu) changes)
    int k0 = -1;
    for (int k = 0; k + 1 < medium.nz; ++k) {
        if (medium.eps(0, k) != medium.eps(0, k + 1) || medium.mu(0, k) != medium.mu(0, k + 1)) {
            if (k0 >= 0) fail("not_single_interface", "more than one interface found");
            k0 = k;
        }
    }
    LayerReference ref;
    ref.s = s;
    ref.mode = 0;
    ref.h1 = medium.h1;
    ref.h2 = medium.h2;
    ref.h0 = k0 < 0 ? medium.h2 : medium.h2 + (k0 + 1) * (medium.h1 - medium.h2) / medium.nz;
    ref.mu_hi = medium.mu1;
    ref.mu_lo = k0 < 0 ? medium.mu1 : medium.mu(0, 0);
    const double eps_lo = k0 < 0 ? medium.eps1 : medium.eps(0, 0);

    const double c1 = pulse.c1();
    ref.beta_hi = beta_symbol(s, 0.0, c1, medium.eps1, medium.mu1);
    ref.beta_lo = beta_symbol(s, 0.0, c1, eps_lo, ref.mu_lo);
    const cd rho = rho_hat_coefficient(pulse, s);

    // rows: Gamma_1 TBC, Gamma_2 TBC, continuity of U, continuity of mu^-1 dU/dz
    Eigen::Matrix<cd, 4, 4> m = Eigen::Matrix<cd, 4, 4>::Zero();
    Eigen::Vector<cd, 4> r = Eigen::Vector<cd, 4>::Zero();
    const cd b1 = ref.beta_hi, b2 = ref.beta_lo;
    // unknowns: [up_hi, down_hi, up_lo, down_lo]
    // d_z U = b1 U + rho at h1
    m(0, 0) = b1 - b1;
    m(0, 1) = -b1 - b1;
    r(0) = rho;
    // -d_z U = b2 U at h2
    m(1, 2) = -b2 - b2;
    m(1, 3) = b2 - b2;
    // continuity at h0
    const cd eu = std::exp(b1 * (ref.h0 - ref.h1));
    const cd eui = std::exp(-b1 * (ref.h0 - ref.h1));
    const cd el = std::exp(b2 * (ref.h0 - ref.h2));
    const cd eli = std::exp(-b2 * (ref.h0 - ref.h2));
    m(2, 0) = eu;
    m(2, 1) = eui;
    m(2, 2) = -el;
    m(2, 3) = -eli;
    // flux continuity
    m(3, 0) = b1 * eu / ref.mu_hi;
    m(3, 1) = -b1 * eui / ref.mu_hi;
    m(3, 2) = -b2 * el / ref.mu_lo;
    m(3, 3) = b2 * eli / ref.mu_lo;

    Eigen::FullPivLU<Eigen::Matrix<cd, 4, 4>> lu(m);
    if (!lu.isInvertible())
        fail("layer_system_singular", "flat-layer interface system is singular");
    const Eigen::Vector<cd, 4> a = lu.solve(r);
    ref.up_hi = a(0);
    ref.down_hi = a(1);
    ref.up_lo = a(2);
    ref.down_lo = a(3);

    // interface-referenced amplitude ratios (outgoing over incoming upstairs)
    const cd incoming = ref.down_hi * eui;
    ref.reflection = incoming != cd(0.0, 0.0) ? ref.up_hi * eu / incoming : cd(0.0, 0.0);
    ref.transmission = ref.up_lo * el + ref.down_lo * eli;
    if (incoming != cd(0.0, 0.0)) ref.transmission /= incoming;
    return ref;
}

BoundaryTrace dense_dtn_reference(const BoundaryTrace& trace, const DtnSymbolTable& table) {
    const std::size_t n = trace.size();
    if (n != table.beta.size()) fail("trace_size_mismatch", "trace/table size mismatch");
    const double two_pi = 2.0 * std::numbers::pi;

    // coefficients by direct summation
    std::vector<cd> coeffs(n, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const int mode = mode_of_bin(k, n);
        cd acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            acc += trace.values[i] *
                   std::polar(1.0, -two_pi * mode * static_cast<double>(i) / static_cast<double>(n));
        coeffs[k] = acc / static_cast<double>(n) * table.beta[k];
    }
    // nodal values by direct summation
    BoundaryTrace out;
    out.side = trace.side;
    out.period = trace.period;
    out.values.assign(n, cd(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        cd acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const int mode = mode_of_bin(k, n);
            acc += coeffs[k] *
                   std::polar(1.0, two_pi * mode * static_cast<double>(i) / static_cast<double>(n));
        }
        out.values[i] = acc;
    }
    return out;
}

ManufacturedLoads mms_reference(const ManufacturedField& w, const MediumModel& medium,
                                const StripMesh& mesh, cd s, double c1) {
    ManufacturedLoads out;

    // F = (eps - c1^2/mu) s w - (s mu)^-1 (wxx + wzz) + 2 c1 mu^-1 wx,
    // evaluated with the enclosing cell's constants.
    out.volume = [&medium, w, s, c1](double x, double z) {
        const int i = std::min(medium.nx - 1,
                               std::max(0, static_cast<int>(x / medium.dx())));
        const int k = std::min(medium.nz - 1,
                               std::max(0, static_cast<int>((z - medium.h2) / medium.dz())));
        const double eps = medium.eps(i, k);
        const double mu = medium.mu(i, k);
        return (eps - c1 * c1 / mu) * s * w.w(x, z) - w.laplacian(x, z) / (s * mu) +
               2.0 * c1 / mu * w.wx(x, z);
    };

    // g_j = d_nu w - B_j w on the boundary grids
    for (int side = 1; side <= 2; ++side) {
        const double zb = side == 1 ? mesh.h1 : mesh.h2;
        BoundaryTrace tw;
        tw.side = side;
        tw.period = mesh.period;
        tw.values.resize(static_cast<std::size_t>(mesh.nx));
        BoundaryTrace tdn = tw;
        for (int i = 0; i < mesh.nx; ++i) {
            tw.values[i] = w.w(mesh.x(i), zb);
            tdn.values[i] = (side == 1 ? 1.0 : -1.0) * w.wz(mesh.x(i), zb);
        }
        const auto table = make_symbol_table(medium, c1, side, mesh.nx, s);
        const auto bw = apply_dtn(tw, table);
        BoundaryTrace g = tdn;
        for (int i = 0; i < mesh.nx; ++i) g.values[i] -= bw.values[i];
        (side == 1 ? out.gamma1 : out.gamma2) = g;
    }

    out.nodal.resize(static_cast<std::size_t>(mesh.ndof()));
    for (int k = 0; k <= mesh.nz; ++k)
        for (int i = 0; i < mesh.nx; ++i)
            out.nodal[mesh.node(i, k)] = w.w(mesh.x(i), mesh.z(k));
    return out;
}

namespace {

std::vector<ConvergenceRow> tabulate(std::vector<std::pair<double, double>> runs) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        ConvergenceRow row{runs[r].first, runs[r].second, 0.0};
        if (r > 0)
            row.observed_order = std::log(runs[r - 1].second / runs[r].second) /
                                 std::log(runs[r - 1].first / runs[r].first);
        rows.push_back(row);
    }
    return rows;
}

} // namespace

std::vector<ConvergenceRow> convergence_homogeneous(const IncidentPulse& pulse, cd s,
                                                    std::span<const int> sizes,
                                                    double period, double h1, double h2) {
    std::vector<std::pair<double, double>> runs;
    for (int n : sizes) {
        ExteriorMedia ext{pulse.eps1, pulse.mu1, pulse.eps1, pulse.mu1};
        const Layer layer{h1, pulse.eps1, pulse.mu1};
        const auto medium = build_layered(std::span(&layer, 1), period, h1, h2, n, n, ext);
        const auto mesh = build_mesh(medium, n, n);
        const auto field = solve_rp(medium, mesh, pulse, s);
        double num = 0.0, den = 0.0;
        for (int k = 0; k <= mesh.nz; ++k) {
            const cd exact = homogeneous_reference(pulse, s, mesh.z(k), h1);
            for (int i = 0; i < mesh.nx; ++i) {
                num += std::norm(field.values[mesh.node(i, k)] - exact);
                den += std::norm(exact);
            }
        }
        runs.emplace_back(mesh.dz(), std::sqrt(num / den));
    }
    return tabulate(std::move(runs));
}

std::vector<ConvergenceRow> convergence_two_layer(const IncidentPulse& pulse, cd s,
                                                  std::span<const int> sizes,
                                                  double period, double h1, double h2,
                                                  double h0, double eps_lo, double mu_lo) {
    std::vector<std::pair<double, double>> runs;
    for (int n : sizes) {
        ExteriorMedia ext{pulse.eps1, pulse.mu1, eps_lo, mu_lo};
        const std::vector<Layer> layers = {{h1, pulse.eps1, pulse.mu1}, {h0, eps_lo, mu_lo}};
        const auto medium = build_layered(layers, period, h1, h2, n, n, ext);
        const auto mesh = build_mesh(medium, n, n);
        const auto ref = flat_layer_reference(pulse, s, medium);
        const auto field = solve_rp(medium, mesh, pulse, s);
        double num = 0.0, den = 0.0;
        for (int k = 0; k <= mesh.nz; ++k) {
            const cd exact = ref.eval(mesh.z(k));
            for (int i = 0; i < mesh.nx; ++i) {
                num += std::norm(field.values[mesh.node(i, k)] - exact);
                den += std::norm(exact);
            }
        }
        runs.emplace_back(mesh.dz(), std::sqrt(num / den));
    }
    return tabulate(std::move(runs));
}

} // namespace oracle
} // namespace gratetd
