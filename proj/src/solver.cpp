#include "gratetd/solver.hpp"

#include <array>
#include <cmath>

#include <Eigen/SparseLU>

#include "gratetd/errors.hpp"

namespace gratetd {

namespace {

// 1D element matrices on an interval of length h, hat basis {1 - x/h, x/h}.
struct Elem1D {
    std::array<std::array<double, 2>, 2> mass;  // int phi_a phi_b
    std::array<std::array<double, 2>, 2> stiff; // int phi_a' phi_b'
    std::array<std::array<double, 2>, 2> dmix;  // int phi_a phi_b'
};

Elem1D elem1d(double h) {
    Elem1D e;
    e.mass = {{{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}}};
    e.stiff = {{{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}}};
    e.dmix = {{{-0.5, 0.5}, {-0.5, 0.5}}};
    return e;
}

// Element contribution of the volume part of the form for trial b, test a
// (a, b are local tensor indices ax + 2*az).
struct CellForm {
    cd grad_coef;  // (s mu)^-1
    cd mass_coef;  // (eps - c1^2/mu) s
    double skew_coef; // c1 / mu
};

cd cell_entry(const Elem1D& ex, const Elem1D& ez, const CellForm& f, int a, int b) {
    const int ax = a & 1, az = a >> 1, bx = b & 1, bz = b >> 1;
    const double grad = ex.stiff[ax][bx] * ez.mass[az][bz] + ex.mass[ax][bx] * ez.stiff[az][bz];
    const double mass = ex.mass[ax][bx] * ez.mass[az][bz];
    // c1/mu * (int (d_x u) conj(v) - int u d_x conj(v)) over the cell
    const double skew = (ex.dmix[ax][bx] - ex.dmix[bx][ax]) * ez.mass[az][bz];
    return f.grad_coef * grad + f.mass_coef * mass + f.skew_coef * cd(skew, 0.0);
}

CellForm cell_form(const MediumModel& medium, cd s, double c1, int i, int k) {
    const double eps = medium.eps(i, k);
    const double mu = medium.mu(i, k);
    return {1.0 / (s * mu), (eps - c1 * c1 / mu) * s, c1 / mu};
}

// Circulant kernel of the uniform-weight DtN pairing: G[d] = (1/nx) sum_n
// beta_n exp(i alpha_n (x_i - x_{i'})) for d = (i - i') mod nx.
std::vector<cd> dtn_kernel(const DtnSymbolTable& table) {
    std::vector<cd> g(table.beta);
    fft_radix2(g, true); // inverse FFT carries the 1/nx factor
    return g;
}

} // namespace

SDomainSystem assemble_system(const MediumModel& medium, const StripMesh& mesh, cd s,
                              double c1, const AssemblyLoads& loads) {
    if (!(s.real() > 0.0)) fail("laplace_domain", "assemble_system requires Re s > 0");
    if (mesh.nx != medium.nx || mesh.nz != medium.nz)
        fail("grid_mismatch", "mesh and medium grids differ");

    const int nx = mesh.nx, nz = mesh.nz;
    const int ndof = mesh.ndof();
    const Elem1D ex = elem1d(mesh.dx());
    const Elem1D ez = elem1d(mesh.dz());

    std::vector<Eigen::Triplet<cd>> trips;
    trips.reserve(static_cast<std::size_t>(16) * nx * nz + 2 * static_cast<std::size_t>(nx) * nx);

    for (int k = 0; k < nz; ++k) {
        for (int i = 0; i < nx; ++i) {
            const CellForm f = cell_form(medium, s, c1, i, k);
            const std::array<int, 4> nodes = {mesh.node(i, k), mesh.node(i + 1, k),
                                              mesh.node(i, k + 1), mesh.node(i + 1, k + 1)};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    trips.emplace_back(nodes[a], nodes[b], cell_entry(ex, ez, f, a, b));
        }
    }

    // DtN blocks: subtract (dx / (s mu_j)) G[(i - i') mod nx] on each boundary row.
    for (int side = 1; side <= 2; ++side) {
        const auto table = make_symbol_table(medium, c1, side, nx, s);
        const auto g = dtn_kernel(table);
        const int krow = side == 1 ? nz : 0;
        const cd w = -mesh.dx() / (s * table.mu_j);
        for (int i = 0; i < nx; ++i)
            for (int i2 = 0; i2 < nx; ++i2)
                trips.emplace_back(mesh.node(i, krow), mesh.node(i2, krow),
                                   w * g[static_cast<std::size_t>(((i - i2) % nx + nx) % nx)]);
    }

    SDomainSystem sys;
    sys.s = s;
    sys.nx = nx;
    sys.nz = nz;
    sys.matrix.resize(ndof, ndof);
    sys.matrix.setFromTriplets(trips.begin(), trips.end());
    sys.rhs = Eigen::VectorXcd::Zero(ndof);

    if (loads.gamma1) {
        if (static_cast<int>(loads.gamma1->size()) != nx)
            fail("trace_size_mismatch", "Gamma_1 load size mismatch");
        const cd w = mesh.dx() / (s * medium.mu1);
        for (int i = 0; i < nx; ++i) sys.rhs[mesh.node(i, nz)] += w * loads.gamma1->values[i];
    }
    if (loads.gamma2) {
        if (static_cast<int>(loads.gamma2->size()) != nx)
            fail("trace_size_mismatch", "Gamma_2 load size mismatch");
        const cd w = mesh.dx() / (s * medium.mu2);
        for (int i = 0; i < nx; ++i) sys.rhs[mesh.node(i, 0)] += w * loads.gamma2->values[i];
    }
    if (loads.volume) {
        // 2x2 Gauss per cell
        const double gq = 1.0 / std::sqrt(3.0);
        const double wq = mesh.dx() * mesh.dz() / 4.0;
        for (int k = 0; k < nz; ++k) {
            for (int i = 0; i < nx; ++i) {
                for (int qx = 0; qx < 2; ++qx) {
                    for (int qz = 0; qz < 2; ++qz) {
                        const double rx = 0.5 + (qx ? 0.5 : -0.5) * gq; // in [0,1]
                        const double rz = 0.5 + (qz ? 0.5 : -0.5) * gq;
                        const double xq = mesh.x(i) + rx * mesh.dx();
                        const double zq = mesh.z(k) + rz * mesh.dz();
                        const cd fv = loads.volume(xq, zq) * wq;
                        const std::array<double, 4> shp = {(1 - rx) * (1 - rz), rx * (1 - rz),
                                                           (1 - rx) * rz, rx * rz};
                        const std::array<int, 4> nodes = {mesh.node(i, k), mesh.node(i + 1, k),
                                                          mesh.node(i, k + 1),
                                                          mesh.node(i + 1, k + 1)};
                        for (int a = 0; a < 4; ++a) sys.rhs[nodes[a]] += fv * shp[a];
                    }
                }
            }
        }
    }
    return sys;
}

cd sesquilinear_apply(const SDomainField& u, const SDomainField& v,
                      const MediumModel& medium, const StripMesh& mesh, cd s,
                      double c1) {
    if (u.values.size() != v.values.size() ||
        static_cast<int>(u.values.size()) != mesh.ndof())
        fail("mesh_mismatch", "fields must live on the same mesh");

    const int nx = mesh.nx, nz = mesh.nz;
    const Elem1D ex = elem1d(mesh.dx());
    const Elem1D ez = elem1d(mesh.dz());

    cd acc(0.0, 0.0);
    for (int k = 0; k < nz; ++k) {
        for (int i = 0; i < nx; ++i) {
            const CellForm f = cell_form(medium, s, c1, i, k);
            const std::array<int, 4> nodes = {mesh.node(i, k), mesh.node(i + 1, k),
                                              mesh.node(i, k + 1), mesh.node(i + 1, k + 1)};
            for (int a = 0; a < 4; ++a) {
                const cd vc = std::conj(v.values[nodes[a]]);
                for (int b = 0; b < 4; ++b)
                    acc += vc * cell_entry(ex, ez, f, a, b) * u.values[nodes[b]];
            }
        }
    }
    // boundary pairing: -(dx / (s mu_j)) sum_i (B_j u)(x_i) conj(v(x_i))
    for (int side = 1; side <= 2; ++side) {
        const auto table = make_symbol_table(medium, c1, side, nx, s);
        const auto bu = apply_dtn(trace_of(u, mesh, side), table);
        const auto tv = trace_of(v, mesh, side);
        cd pair(0.0, 0.0);
        for (int i = 0; i < nx; ++i) pair += bu.values[i] * std::conj(tv.values[i]);
        acc -= mesh.dx() / (s * table.mu_j) * pair;
    }
    return acc;
}

SDomainField solve_system(const SDomainSystem& system) {
    Eigen::SparseLU<Eigen::SparseMatrix<cd>> lu;
    lu.compute(system.matrix);
    if (lu.info() != Eigen::Success)
        fail("solver_failure", "sparse factorization failed");
    const Eigen::VectorXcd x = lu.solve(system.rhs);

    const double bnorm = system.rhs.norm();
    if (bnorm > 0.0) {
        const double res = (system.matrix * x - system.rhs).norm() / bnorm;
        if (!(res <= 1e-10))
            fail("solver_failure",
                 "relative residual " + std::to_string(res) + " exceeds 1e-10");
    }

    SDomainField field;
    field.s = system.s;
    field.role = FieldRole::Total;
    field.values.assign(x.data(), x.data() + x.size());
    return field;
}

SDomainField solve_rp(const MediumModel& medium, const StripMesh& mesh,
                      const IncidentPulse& pulse, cd s) {
    const BoundaryTrace load = rho_hat(pulse, s, mesh.nx, mesh.period);
    AssemblyLoads loads;
    loads.gamma1 = &load;
    const SDomainSystem sys = assemble_system(medium, mesh, s, pulse.c1(), loads);
    SDomainField field = solve_system(sys);
    field.role = FieldRole::Total;
    return field;
}

namespace {

template <typename Scalar>
double mass_energy_impl(const StripMesh& mesh, std::span<const Scalar> nodal,
                        const std::function<double(int, int)>& w) {
    const Elem1D ex = elem1d(mesh.dx());
    const Elem1D ez = elem1d(mesh.dz());
    double acc = 0.0;
    for (int k = 0; k < mesh.nz; ++k) {
        for (int i = 0; i < mesh.nx; ++i) {
            const std::array<int, 4> nodes = {mesh.node(i, k), mesh.node(i + 1, k),
                                              mesh.node(i, k + 1), mesh.node(i + 1, k + 1)};
            double cellacc = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double m = ex.mass[a & 1][b & 1] * ez.mass[a >> 1][b >> 1];
                    if constexpr (std::is_same_v<Scalar, cd>)
                        cellacc += m * (std::conj(nodal[nodes[a]]) * nodal[nodes[b]]).real();
                    else
                        cellacc += m * nodal[nodes[a]] * nodal[nodes[b]];
                }
            acc += (w ? w(i, k) : 1.0) * cellacc;
        }
    }
    return acc;
}

template <typename Scalar>
double grad_energy_impl(const StripMesh& mesh, std::span<const Scalar> nodal,
                        const std::function<double(int, int)>& w) {
    const Elem1D ex = elem1d(mesh.dx());
    const Elem1D ez = elem1d(mesh.dz());
    double acc = 0.0;
    for (int k = 0; k < mesh.nz; ++k) {
        for (int i = 0; i < mesh.nx; ++i) {
            const std::array<int, 4> nodes = {mesh.node(i, k), mesh.node(i + 1, k),
                                              mesh.node(i, k + 1), mesh.node(i + 1, k + 1)};
            double cellacc = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double g = ex.stiff[a & 1][b & 1] * ez.mass[a >> 1][b >> 1] +
                                     ex.mass[a & 1][b & 1] * ez.stiff[a >> 1][b >> 1];
                    if constexpr (std::is_same_v<Scalar, cd>)
                        cellacc += g * (std::conj(nodal[nodes[a]]) * nodal[nodes[b]]).real();
                    else
                        cellacc += g * nodal[nodes[a]] * nodal[nodes[b]];
                }
            acc += (w ? w(i, k) : 1.0) * cellacc;
        }
    }
    return acc;
}

} // namespace

double fe_mass_energy(const StripMesh& mesh, std::span<const cd> nodal,
                      const std::function<double(int, int)>& w) {
    return mass_energy_impl<cd>(mesh, nodal, w);
}
double fe_grad_energy(const StripMesh& mesh, std::span<const cd> nodal,
                      const std::function<double(int, int)>& w) {
    return grad_energy_impl<cd>(mesh, nodal, w);
}
double fe_mass_energy(const StripMesh& mesh, std::span<const double> nodal,
                      const std::function<double(int, int)>& w) {
    return mass_energy_impl<double>(mesh, nodal, w);
}
double fe_grad_energy(const StripMesh& mesh, std::span<const double> nodal,
                      const std::function<double(int, int)>& w) {
    return grad_energy_impl<double>(mesh, nodal, w);
}
double fe_l2_norm_sq(const StripMesh& mesh, std::span<const cd> nodal) {
    return fe_mass_energy(mesh, nodal, nullptr);
}
double fe_grad_norm_sq(const StripMesh& mesh, std::span<const cd> nodal) {
    return fe_grad_energy(mesh, nodal, nullptr);
}

} // namespace gratetd
