#ifndef GRATETD_DTN_HPP
#define GRATETD_DTN_HPP

#include <vector>

#include "gratetd/fourier.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/mesh.hpp"
#include "gratetd/pulse.hpp"

namespace gratetd {

/// Mode symbol beta_j^(n)(s) = sqrt(eps_j mu_j s^2 + (alpha_n + i c1 s)^2)
/// on the branch with Re beta < 0 (outgoing in the exterior half-planes).
/// Throws "laplace_domain" for Re s <= 0 and "branch_degenerate" if the
/// strict sign cannot be established (never for admissible inputs).
cd beta_symbol(cd s, double alpha_n, double c1, double eps_j, double mu_j);

/// Convenience overload resolving (eps_j, mu_j) from the side tag and
/// alpha_n = 2 pi n / period.
cd beta_symbol(const MediumModel& medium, double c1, int side, int n, cd s);

/// Per-(s, side) table of symbols for every representable DFT mode of an
/// nx-point boundary grid. Immutable; share across threads.
struct DtnSymbolTable {
    cd s;
    int side = 1;
    double period = 1.0;
    double mu_j = 1.0;
    std::vector<cd> beta; // bin-indexed (bin k holds mode mode_of_bin(k, nx))

    double alpha(std::size_t bin) const;
};

DtnSymbolTable make_symbol_table(const MediumModel& medium, double c1, int side,
                                 int nx, cd s);

/// Diagonal action in the boundary DFT basis: coefficient n multiplies by
/// beta_j^(n). Linear in the trace.
BoundaryTrace apply_dtn(const BoundaryTrace& trace, const DtnSymbolTable& table);

/// Weighted trace norm (sum_n (|s|^2 + alpha_n^2)^lambda |u_n|^2)^(1/2)
/// over the trace's DFT coefficients (no period factor).
double hs_boundary_norm(const BoundaryTrace& trace, cd s, double lambda);

/// Weighted volume norm of a discrete strip field via per-z-line DFT:
/// (sum_n (|s|^2+alpha_n^2) int |u_n|^2 dz + sum_n int |u_n'|^2 dz)^(1/2)
/// scaled by the period, with exact integration of the piecewise-linear
/// z-profiles. Equals (||grad u||^2 + ||s u||^2)^(1/2) in the spectral-in-x
/// reading of the nodal data.
double hsp_volume_norm(const SDomainField& field, const StripMesh& mesh, cd s);

/// Same quantity computed nodally (spectral x-derivative at the nodes plus
/// trapezoid in x); agrees with hsp_volume_norm to roundoff by Parseval.
double hsp_volume_norm_nodal(const SDomainField& field, const StripMesh& mesh, cd s);

/// Evaluate the total field at an exterior height z (z > h1 or z < h2) from
/// its boundary trace: scattered coefficients propagate with the outgoing
/// exponentials, the incident part is re-added analytically above the strip.
BoundaryTrace extend_field_exterior(const BoundaryTrace& total_trace,
                                    const IncidentPulse& pulse, cd s,
                                    const MediumModel& medium, double z);

} // namespace gratetd

#endif
