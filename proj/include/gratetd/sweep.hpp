#ifndef GRATETD_SWEEP_HPP
#define GRATETD_SWEEP_HPP

#include <span>
#include <vector>

#include "gratetd/mesh.hpp"
#include "gratetd/pulse.hpp"
#include "gratetd/solver.hpp"

namespace gratetd {

/// Discretization of the inversion contour Re s = s1: uniform samples
/// s = s1 + i k ds2 for k = 0..ns-1 (negative frequencies by conjugation)
/// and a uniform time grid t_k = k dt on [0, t_final].
struct SweepPlan {
    double s1 = 0.4;
    double smax = 0.0;    // largest sampled |s2|
    int ns = 0;           // number of nonnegative-s2 samples
    double t_final = 10.0;
    int nt = 0;
    double aliasing = 3.0;

    double ds2() const { return ns > 1 ? smax / (ns - 1) : 0.0; }
    double dt() const { return nt > 1 ? t_final / (nt - 1) : 0.0; }
    cd s_at(int k) const { return {s1, k * ds2()}; }

    void validate() const; // aliasing guard and s1*T representability
};

/// Choose contour parameters for a pulse: s1 = kappa/T, smax from the decay
/// bound |f(s1 + i smax)| <= delta |f(s1)|, ds2 from the aliasing guard
/// 2 pi / ds2 >= aliasing * T, dt <= pi / smax.
SweepPlan plan_sweep(const IncidentPulse& pulse, double t_final, double delta,
                     double kappa = 4.0, double aliasing = 3.0);

/// Solve the reduced problem at every contour sample (s2 >= 0). Results are
/// slot-ordered by frequency index regardless of the number of threads.
std::vector<SDomainField> run_sweep(const MediumModel& medium, const StripMesh& mesh,
                                    const IncidentPulse& pulse, const SweepPlan& plan,
                                    int threads = 1);

/// Damped-contour trapezoid inversion of scalar samples u(s1 + i s2_k)
/// (k = 0 term halved) evaluated on the plan's time grid; exactly real.
std::vector<double> invert_scalar(std::span<const cd> samples, const SweepPlan& plan);

TimeSeriesField invert_to_time(const std::vector<SDomainField>& sweep,
                               const SweepPlan& plan);

/// Relative discrepancy between the damped time-side energy integral and the
/// contour-side integral (both trapezoid; L2(Omega) norms via the exact
/// bilinear mass).
double parseval_residual(const std::vector<SDomainField>& sweep,
                         const TimeSeriesField& series, const SweepPlan& plan,
                         const StripMesh& mesh);

} // namespace gratetd

#endif
