#ifndef GRATETD_ORACLE_HPP
#define GRATETD_ORACLE_HPP

#include <functional>
#include <vector>

#include "gratetd/dtn.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/mesh.hpp"
#include "gratetd/pulse.hpp"
#include "gratetd/solver.hpp"

namespace gratetd {
namespace oracle {

/// With the exterior constants filling the whole strip the total field equals
/// the incident field; this is the analytic reference for convergence studies.
cd homogeneous_reference(const IncidentPulse& pulse, cd s, double z, double h1);

/// Closed-form mode solution for an x-independent medium with one interior
/// interface: two exponential amplitudes per layer determined by the two
/// transparent boundary rows and continuity of the field and of mu^-1 dU/dz.
struct LayerReference {
    cd s;
    int mode = 0;
    double h0 = 0.0; // interface height
    double h1 = 0.5, h2 = -0.5;
    double mu_hi = 1.0, mu_lo = 1.0;
    cd beta_hi, beta_lo;
    cd up_hi, down_hi, up_lo, down_lo; // amplitudes of e^{+b(z-h1)}, e^{-b(z-h1)}, ...
    cd reflection;                     // interface-referenced outgoing/incoming ratio
    cd transmission;                   // transmitted amplitude at the interface

    cd eval(double z) const;
    cd eval_dz(double z) const;
};

LayerReference flat_layer_reference(const IncidentPulse& pulse, cd s,
                                    const MediumModel& medium);

/// DtN action by explicit O(nx^2) summation over modes and nodes; shares no
/// code with the FFT path.
BoundaryTrace dense_dtn_reference(const BoundaryTrace& trace, const DtnSymbolTable& table);

/// Manufactured-solution data: analytic field w with the derivatives needed to
/// evaluate the residual volume source and the boundary mismatch traces.
struct ManufacturedField {
    std::function<cd(double, double)> w;
    std::function<cd(double, double)> wx;        // d/dx
    std::function<cd(double, double)> wz;        // d/dz
    std::function<cd(double, double)> laplacian; // wxx + wzz
};

struct ManufacturedLoads {
    std::function<cd(double, double)> volume; // residual source F
    BoundaryTrace gamma1;                     // d_nu w - B_1 w on Gamma_1
    BoundaryTrace gamma2;                     // d_nu w - B_2 w on Gamma_2
    std::vector<cd> nodal;                    // w sampled on the mesh nodes
};

ManufacturedLoads mms_reference(const ManufacturedField& w, const MediumModel& medium,
                                const StripMesh& mesh, cd s, double c1);

struct ConvergenceRow {
    double h;
    double error;
    double observed_order; // 0 for the first row
};

/// Relative nodal L2 error of solve_rp against the homogeneous reference on a
/// sequence of n x n meshes.
std::vector<ConvergenceRow> convergence_homogeneous(const IncidentPulse& pulse, cd s,
                                                    std::span<const int> sizes,
                                                    double period, double h1, double h2);

/// Same against the flat-layer reference (x-independent two-layer medium).
std::vector<ConvergenceRow> convergence_two_layer(const IncidentPulse& pulse, cd s,
                                                  std::span<const int> sizes,
                                                  double period, double h1, double h2,
                                                  double h0, double eps_lo, double mu_lo);

} // namespace oracle
} // namespace gratetd

#endif
