#ifndef GRATETD_SOLVER_HPP
#define GRATETD_SOLVER_HPP

#include <functional>
#include <optional>

#include <Eigen/SparseCore>

#include "gratetd/dtn.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/mesh.hpp"
#include "gratetd/pulse.hpp"

namespace gratetd {

/// Optional right-hand-side data beyond the physical Gamma_1 load:
/// manufactured-solution tests add a Gamma_2 mismatch trace and a volume
/// source F paired as plain int F conj(v).
struct AssemblyLoads {
    const BoundaryTrace* gamma1 = nullptr; // paired as <(s mu1)^-1 g, v>
    const BoundaryTrace* gamma2 = nullptr; // paired as <(s mu2)^-1 g, v>
    std::function<cd(double, double)> volume; // test-only manufactured source
};

/// Assembled Galerkin system at one Laplace frequency. The matrix carries the
/// volume terms of the sesquilinear form in the skew first-order arrangement
/// plus the dense DtN boundary blocks (diagonal in the boundary DFT basis).
struct SDomainSystem {
    cd s;
    int nx = 0, nz = 0;
    Eigen::SparseMatrix<cd> matrix;
    Eigen::VectorXcd rhs;
};

SDomainSystem assemble_system(const MediumModel& medium, const StripMesh& mesh, cd s,
                              double c1, const AssemblyLoads& loads);

/// Matrix-free evaluation of the discrete sesquilinear form a_h(u, v):
/// volume terms cell by cell with exact integration of the bilinear basis
/// against the cellwise-constant coefficients, boundary terms through the
/// uniform-weight DFT pairing. Conjugate-linear in v.
cd sesquilinear_apply(const SDomainField& u, const SDomainField& v,
                      const MediumModel& medium, const StripMesh& mesh, cd s,
                      double c1);

/// Direct sparse factorization; enforces a relative residual <= 1e-10
/// (throws "solver_failure" with the achieved residual otherwise).
SDomainField solve_system(const SDomainSystem& system);

/// Assemble the physical load from the incident pulse and solve the reduced
/// problem; the returned field is the total field.
SDomainField solve_rp(const MediumModel& medium, const StripMesh& mesh,
                      const IncidentPulse& pulse, cd s);

// Exact L2 integrals of the discrete bilinear field (optionally with a
// cellwise weight) and of its gradient. These are the norms appearing in the
// discrete coercivity statement.
double fe_mass_energy(const StripMesh& mesh, std::span<const cd> nodal,
                      const std::function<double(int, int)>& cell_weight);
double fe_grad_energy(const StripMesh& mesh, std::span<const cd> nodal,
                      const std::function<double(int, int)>& cell_weight);
double fe_mass_energy(const StripMesh& mesh, std::span<const double> nodal,
                      const std::function<double(int, int)>& cell_weight);
double fe_grad_energy(const StripMesh& mesh, std::span<const double> nodal,
                      const std::function<double(int, int)>& cell_weight);
double fe_l2_norm_sq(const StripMesh& mesh, std::span<const cd> nodal);
double fe_grad_norm_sq(const StripMesh& mesh, std::span<const cd> nodal);

} // namespace gratetd

#endif
