#include "gratetd/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "gratetd/errors.hpp"
#include "gratetd/solver.hpp"

namespace gratetd {

namespace {

std::string shortest(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

// d/dt of a nodal time series by central differences, one-sided at the ends.
std::vector<double> time_derivative(const TimeSeriesField& series) {
    const int nt = series.nt, nd = series.ndof;
    std::vector<double> out(series.values.size());
    const double inv2 = 1.0 / (2.0 * series.dt);
    const double inv = 1.0 / series.dt;
    for (int kt = 0; kt < nt; ++kt) {
        double* o = out.data() + static_cast<std::size_t>(kt) * nd;
        if (kt == 0) {
            const double* a = series.frame(0);
            const double* b = series.frame(1);
            for (int j = 0; j < nd; ++j) o[j] = (b[j] - a[j]) * inv;
        } else if (kt == nt - 1) {
            const double* a = series.frame(nt - 2);
            const double* b = series.frame(nt - 1);
            for (int j = 0; j < nd; ++j) o[j] = (b[j] - a[j]) * inv;
        } else {
            const double* a = series.frame(kt - 1);
            const double* b = series.frame(kt + 1);
            for (int j = 0; j < nd; ++j) o[j] = (b[j] - a[j]) * inv2;
        }
    }
    return out;
}

TimeSeriesField wrap(const TimeSeriesField& like, std::vector<double> vals) {
    TimeSeriesField f;
    f.nt = like.nt;
    f.dt = like.dt;
    f.ndof = like.ndof;
    f.values = std::move(vals);
    return f;
}

double trapezoid(const std::vector<double>& vals, double dt) {
    if (vals.size() < 2) return 0.0;
    double acc = 0.5 * (vals.front() + vals.back());
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) acc += vals[i];
    return acc * dt;
}

} // namespace

std::string format_report_line(const EstimateReport& r) {
    return r.name + " " + (r.pass ? "pass" : "fail") + " " + shortest(r.lhs) + " " +
           shortest(r.rhs) + " " + shortest(r.constant) +
           (r.context.empty() ? "" : " " + r.context);
}

double trace_constant_c1(const StripMesh& mesh, double s1) {
    const double depth = mesh.h1 - mesh.h2;
    return std::sqrt(std::max(1.0 + 1.0 / (depth * s1),
                              1.0 + mesh.period / (2.0 * std::numbers::pi * depth)));
}

double dtn_constant_c2(const MediumModel& medium, double c1) {
    return std::sqrt(std::max(2.0, 2.0 * c1 * c1 + medium.eps_max() * medium.mu_max()));
}

double coercivity_constant(const MediumModel& medium, double theta) {
    const double sin2 = std::sin(theta) * std::sin(theta);
    return std::min(1.0, medium.eps1 * medium.mu1 * sin2) / medium.mu_max();
}

std::vector<double> energy_e1(const TimeSeriesField& series, const StripMesh& mesh,
                              const MediumModel& medium, double c1) {
    if (series.nt < 3) fail("series_too_short", "energy_e1 needs at least 3 time steps");
    const auto dudt = time_derivative(series);
    auto wmass = [&](int i, int k) {
        return medium.eps(i, k) - c1 * c1 / medium.mu(i, k);
    };
    auto wmu = [&](int i, int k) { return 1.0 / medium.mu(i, k); };

    std::vector<double> e(static_cast<std::size_t>(series.nt));
    for (int kt = 0; kt < series.nt; ++kt) {
        const std::span<const double> dvel(
            dudt.data() + static_cast<std::size_t>(kt) * series.ndof,
            static_cast<std::size_t>(series.ndof));
        const std::span<const double> u(series.frame(kt),
                                        static_cast<std::size_t>(series.ndof));
        e[static_cast<std::size_t>(kt)] =
            fe_mass_energy(mesh, dvel, wmass) + fe_grad_energy(mesh, u, wmu);
    }
    return e;
}

std::vector<double> energy_e2(const TimeSeriesField& series, const StripMesh& mesh,
                              const MediumModel& medium, double c1) {
    if (series.nt < 3) fail("series_too_short", "energy_e2 needs at least 3 time steps");
    const auto d1 = time_derivative(series);
    const auto d2 = time_derivative(wrap(series, d1));
    auto wmass = [&](int i, int k) {
        return medium.eps(i, k) - c1 * c1 / medium.mu(i, k);
    };
    auto wmu = [&](int i, int k) { return 1.0 / medium.mu(i, k); };

    std::vector<double> e(static_cast<std::size_t>(series.nt));
    for (int kt = 0; kt < series.nt; ++kt) {
        const std::span<const double> acc(
            d2.data() + static_cast<std::size_t>(kt) * series.ndof,
            static_cast<std::size_t>(series.ndof));
        const std::span<const double> vel(
            d1.data() + static_cast<std::size_t>(kt) * series.ndof,
            static_cast<std::size_t>(series.ndof));
        e[static_cast<std::size_t>(kt)] =
            fe_mass_energy(mesh, acc, wmass) + fe_grad_energy(mesh, vel, wmu);
    }
    return e;
}

std::array<EstimateReport, 2> check_lemma_tt(const SDomainField& u, const StripMesh& mesh,
                                             cd s) {
    const double c1c = trace_constant_c1(mesh, s.real());
    const double vol = hsp_volume_norm(u, mesh, s);
    std::array<EstimateReport, 2> out;
    for (int side = 1; side <= 2; ++side) {
        EstimateReport r;
        r.name = "lemma_tt";
        r.constant = c1c;
        r.lhs = hs_boundary_norm(trace_of(u, mesh, side), s, 0.5);
        r.rhs = vol;
        r.pass = r.lhs <= c1c * vol * (1.0 + 1e-12) + 1e-300;
        r.context = "side=" + std::to_string(side) + ",s=" + shortest(s.real()) + "+" +
                    shortest(s.imag()) + "i";
        out[static_cast<std::size_t>(side - 1)] = r;
    }
    return out;
}

EstimateReport check_lemma_dtn(const BoundaryTrace& trace, cd s,
                               const MediumModel& medium, double c1) {
    EstimateReport r;
    r.name = "lemma_dtn";
    r.constant = dtn_constant_c2(medium, c1);
    const auto table = make_symbol_table(medium, c1, trace.side, static_cast<int>(trace.size()), s);
    r.lhs = hs_boundary_norm(apply_dtn(trace, table), s, -0.5);
    r.rhs = hs_boundary_norm(trace, s, 0.5);
    r.pass = r.lhs <= r.constant * r.rhs * (1.0 + 1e-12) + 1e-300;
    r.context = "side=" + std::to_string(trace.side);
    return r;
}

EstimateReport check_lemma_tp(const BoundaryTrace& trace, cd s,
                              const MediumModel& medium, double c1) {
    const std::size_t n = trace.size();
    const auto coeffs = trace.coefficients();
    const double mu_j = trace.side == 1 ? medium.mu1 : medium.mu2;
    const double eps_j = trace.side == 1 ? medium.eps1 : medium.eps2;

    double quad = 0.0;      // Re <(s mu_j)^-1 B_j u, u>
    double norm_sq = 0.0;   // L2(Gamma) norm of the trace
    double max_ident = 0.0; // worst per-mode residual of the s1 a + s2 b identity
    for (std::size_t k = 0; k < n; ++k) {
        const double alpha = 2.0 * std::numbers::pi * mode_of_bin(k, n) / trace.period;
        const cd beta = beta_symbol(s, alpha, c1, eps_j, mu_j);
        const double a = beta.real(), b = beta.imag();
        const double s1 = s.real(), s2 = s.imag();
        quad += (s1 * a + s2 * b) / (std::norm(s) * mu_j) * std::norm(coeffs[k]) * trace.period;
        norm_sq += std::norm(coeffs[k]) * trace.period;

        const double lhs = s1 * a + s2 * b;
        const double rhs = s1 / (2.0 * a) *
                           (a * a + b * b + (eps_j * mu_j - c1 * c1) * (s1 * s1 + s2 * s2) +
                            alpha * alpha);
        max_ident = std::max(max_ident, std::abs(lhs - rhs) /
                                            std::max({std::abs(lhs), std::abs(rhs), 1e-300}));
    }

    EstimateReport r;
    r.name = "lemma_tp";
    r.lhs = quad;
    r.rhs = norm_sq;
    r.constant = 1e-14;
    r.pass = quad <= 1e-14 * norm_sq;
    r.context = "side=" + std::to_string(trace.side) + ",tp5_resid=" + shortest(max_ident);
    return r;
}

EstimateReport check_vp_bound(const SDomainField& u, const BoundaryTrace& rho,
                              const StripMesh& mesh, cd s, const MediumModel& medium,
                              double theta) {
    EstimateReport r;
    r.name = "theorem_vp";
    const double c1c = trace_constant_c1(mesh, s.real());
    const double coer = coercivity_constant(medium, theta);
    r.constant = c1c / (coer * medium.mu1);
    r.lhs = hsp_volume_norm(u, mesh, s);
    r.rhs = std::abs(s) / s.real() * hs_boundary_norm(rho, s, -0.5);
    r.pass = r.lhs <= r.constant * r.rhs * (1.0 + 1e-12) + 1e-300;
    r.context = "s=" + shortest(s.real()) + "+" + shortest(s.imag()) + "i";
    return r;
}

std::vector<EstimateReport> stability_report(const TimeSeriesField& series,
                                             const IncidentPulse& pulse,
                                             const MediumModel& medium,
                                             const StripMesh& mesh, double t_final,
                                             const StabilityBaselines& baselines) {
    if (pulse.shape == PulseShape::Tabulated)
        fail("tabulated_derivative_unavailable",
             "stability_report needs the analytic load derivatives");

    const double c1 = pulse.c1();
    const double sqrt_period = std::sqrt(mesh.period);
    const int nt = series.nt;
    const double dt = series.dt;

    // data norms: ||rho^{(k)}(t)||_{H^-1/2} = |rho^{(k)}(t)| sqrt(period)
    // with the |s_ref| = 1 weight (mode 0 only).
    std::vector<double> r0(nt), r1(nt), r2(nt);
    for (int kt = 0; kt < nt; ++kt) {
        const double t = kt * dt;
        r0[kt] = std::abs(rho_time(pulse, t, 0)) * sqrt_period;
        r1[kt] = std::abs(rho_time(pulse, t, 1)) * sqrt_period;
        r2[kt] = std::abs(rho_time(pulse, t, 2)) * sqrt_period;
    }
    const double rho_l1 = trapezoid(r0, dt);
    const double drho_l1 = trapezoid(r1, dt);
    const double drho_max = *std::max_element(r1.begin(), r1.end());
    const double d2rho_l1 = trapezoid(r2, dt);

    // field norms
    const auto dudt = time_derivative(series);
    std::vector<double> u_l2(nt), grad_l2(nt), du_l2(nt), dgrad_l2(nt);
    for (int kt = 0; kt < nt; ++kt) {
        const std::span<const double> u(series.frame(kt),
                                        static_cast<std::size_t>(series.ndof));
        const std::span<const double> du(
            dudt.data() + static_cast<std::size_t>(kt) * series.ndof,
            static_cast<std::size_t>(series.ndof));
        u_l2[kt] = std::sqrt(fe_mass_energy(mesh, u, nullptr));
        grad_l2[kt] = std::sqrt(fe_grad_energy(mesh, u, nullptr));
        du_l2[kt] = std::sqrt(fe_mass_energy(mesh, du, nullptr));
        dgrad_l2[kt] = std::sqrt(fe_grad_energy(mesh, du, nullptr));
    }

    auto ratio_report = [&](std::string name, double lhs, double rhs, double baseline) {
        EstimateReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.constant = baseline;
        const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
        r.pass = baseline > 0.0 ? ratio <= 1.5 * baseline : true;
        r.context = "ratio=" + shortest(ratio) + ",sref=1";
        return r;
    };

    std::vector<EstimateReport> out;
    {
        double lhs = 0.0;
        for (int kt = 0; kt < nt; ++kt) lhs = std::max(lhs, du_l2[kt] + dgrad_l2[kt]);
        out.push_back(ratio_report("stability_st", lhs, rho_l1 + drho_max + d2rho_l1,
                                   baselines.st));
    }
    {
        const double lhs = *std::max_element(u_l2.begin(), u_l2.end()) +
                           *std::max_element(grad_l2.begin(), grad_l2.end());
        out.push_back(ratio_report("stability_es1", lhs, t_final * rho_l1 + drho_l1,
                                   baselines.es1));
    }
    {
        std::vector<double> usq(nt), gsq(nt);
        for (int kt = 0; kt < nt; ++kt) {
            usq[kt] = u_l2[kt] * u_l2[kt];
            gsq[kt] = grad_l2[kt] * grad_l2[kt];
        }
        const double lhs = std::sqrt(trapezoid(usq, dt)) + std::sqrt(trapezoid(gsq, dt));
        const double rhs = std::pow(t_final, 1.5) * rho_l1 + std::sqrt(t_final) * drho_l1;
        out.push_back(ratio_report("stability_es2", lhs, rhs, baselines.es2));
    }
    return out;
}

} // namespace gratetd
