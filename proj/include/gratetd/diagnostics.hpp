#ifndef GRATETD_DIAGNOSTICS_HPP
#define GRATETD_DIAGNOSTICS_HPP

#include <array>
#include <string>
#include <vector>

#include "gratetd/dtn.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/mesh.hpp"
#include "gratetd/pulse.hpp"

namespace gratetd {

/// One verified inequality: pass means lhs <= constant * rhs within tol
/// (the constant is the explicit proof constant where one exists, or the
/// committed regression baseline for the time-domain estimates).
struct EstimateReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    bool pass = true;
    std::string context;
};

std::string format_report_line(const EstimateReport& r);

// Explicit constants from the trace/DtN continuity proofs.
double trace_constant_c1(const StripMesh& mesh, double s1);          // C1
double dtn_constant_c2(const MediumModel& medium, double c1);        // C2
double coercivity_constant(const MediumModel& medium, double theta); // C

/// Energy ||(eps - c1^2/mu)^(1/2) dU/dt||^2 + ||mu^(-1/2) grad U||^2 per time
/// step; time derivatives by second-order differences (one-sided at the ends).
std::vector<double> energy_e1(const TimeSeriesField& series, const StripMesh& mesh,
                              const MediumModel& medium, double c1);

/// Same with one extra time derivative on both terms.
std::vector<double> energy_e2(const TimeSeriesField& series, const StripMesh& mesh,
                              const MediumModel& medium, double c1);

/// Trace inequality ||tr u||_{1/2} <= C1 ||u||_{H1_sp} on both boundaries.
std::array<EstimateReport, 2> check_lemma_tt(const SDomainField& u, const StripMesh& mesh,
                                             cd s);

/// DtN continuity ||B_j u||_{-1/2} <= C2 ||u||_{1/2}.
EstimateReport check_lemma_dtn(const BoundaryTrace& trace, cd s,
                               const MediumModel& medium, double c1);

/// Nonpositivity of Re <(s mu_j)^-1 B_j u, u>; the context records the largest
/// per-mode residual of the closed-form identity for s1 a + s2 b.
EstimateReport check_lemma_tp(const BoundaryTrace& trace, cd s,
                              const MediumModel& medium, double c1);

/// Explicit-constant solution bound
/// hsp(u) <= (C1/(C mu1)) (|s|/s1) ||rho||_{-1/2}.
EstimateReport check_vp_bound(const SDomainField& u, const BoundaryTrace& rho,
                              const StripMesh& mesh, cd s, const MediumModel& medium,
                              double theta);

struct StabilityBaselines {
    double st = 0.0;  // committed ratio; 0 = record-only
    double es1 = 0.0;
    double es2 = 0.0;
};

/// Empirical ratios for the time-domain stability estimates. The left-hand
/// sides are field norms of the reconstructed series; the right-hand sides are
/// the load-data norms (|s_ref| = 1 weight, so ||rho(t)||_{-1/2} reduces to
/// |rho(t)| sqrt(period)). Pass compares against the committed baselines with
/// a 1.5x allowance; a zero baseline records the ratio without judging it.
std::vector<EstimateReport> stability_report(const TimeSeriesField& series,
                                             const IncidentPulse& pulse,
                                             const MediumModel& medium,
                                             const StripMesh& mesh, double t_final,
                                             const StabilityBaselines& baselines = {});

} // namespace gratetd

#endif
