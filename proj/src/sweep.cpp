#include "gratetd/sweep.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "gratetd/errors.hpp"

namespace gratetd {

void SweepPlan::validate() const {
    if (!(s1 > 0.0)) fail("plan_s1", "contour abscissa s1 must be > 0");
    if (ns < 2 || nt < 2) fail("plan_counts", "plan needs ns >= 2 and nt >= 2");
    if (!(smax > 0.0) || !(t_final > 0.0)) fail("plan_range", "smax and T must be > 0");
    if (2.0 * std::numbers::pi / ds2() < aliasing * t_final * (1.0 - 1e-12))
        fail("plan_aliasing", "aliasing guard violated: 2 pi / ds2 < aliasing * T");
    if (s1 * t_final > 20.0 + 1e-12)
        fail("plan_damping", "s1 * T must stay <= 20 for representable reweighting");
}

SweepPlan plan_sweep(const IncidentPulse& pulse, double t_final, double delta,
                     double kappa, double aliasing) {
    if (!(t_final > 0.0)) fail("plan_range", "T must be > 0");
    if (!(delta > 0.0) || !(delta < 1.0)) fail("plan_tolerance", "delta must lie in (0, 1)");
    if (!(aliasing >= 1.2)) fail("plan_aliasing", "aliasing factor must be >= 1.2");

    SweepPlan plan;
    plan.t_final = t_final;
    plan.aliasing = aliasing;
    plan.s1 = kappa / t_final;

    if (pulse.shape == PulseShape::PolyExp) {
        // root of |f(s1 + iS)| = delta |f(s1)| for the closed-form transform
        const double a = plan.s1 + 1.0 / pulse.sigma;
        const double grow = std::pow(delta, -2.0 / (pulse.order + 1)) - 1.0;
        plan.smax = a * std::sqrt(std::max(grow, 0.0));
    } else {
        // bisection on the numerically evaluated transform magnitude
        const double ref = std::abs(pulse_laplace(pulse, cd(plan.s1, 0.0)));
        if (!(ref > 0.0)) fail("plan_tolerance", "tabulated pulse has zero transform at s1");
        double lo = 0.0, hi = 1.0;
        const double cap = 1e6;
        while (std::abs(pulse_laplace(pulse, cd(plan.s1, hi))) > delta * ref) {
            hi *= 2.0;
            if (hi > cap)
                fail("plan_tolerance_unreachable",
                     "tabulated pulse decays too slowly for the requested tolerance");
        }
        for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (std::abs(pulse_laplace(pulse, cd(plan.s1, mid))) > delta * ref ? lo : hi) = mid;
        }
        plan.smax = hi;
    }
    if (!(plan.smax > 0.0)) plan.smax = plan.s1;

    const double ds2_max = 2.0 * std::numbers::pi / (aliasing * t_final);
    plan.ns = static_cast<int>(std::ceil(plan.smax / ds2_max)) + 1;
    plan.nt = static_cast<int>(std::ceil(t_final * plan.smax / std::numbers::pi)) + 1;
    plan.validate();
    return plan;
}

std::vector<SDomainField> run_sweep(const MediumModel& medium, const StripMesh& mesh,
                                    const IncidentPulse& pulse, const SweepPlan& plan,
                                    int threads) {
    plan.validate();
    std::vector<SDomainField> out(static_cast<std::size_t>(plan.ns));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;

    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= plan.ns || failed.load()) return;
            try {
                out[static_cast<std::size_t>(k)] = solve_rp(medium, mesh, pulse, plan.s_at(k));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!failed.exchange(true))
                    first_error = "sweep solve failed at k=" + std::to_string(k) + ": " + e.what();
                return;
            }
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) fail("sweep_failure", first_error);
    return out;
}

std::vector<double> invert_scalar(std::span<const cd> samples, const SweepPlan& plan) {
    if (static_cast<int>(samples.size()) != plan.ns)
        fail("plan_mismatch", "sample count differs from the plan");
    const double ds2 = plan.ds2();
    std::vector<double> out(static_cast<std::size_t>(plan.nt));
    for (int kt = 0; kt < plan.nt; ++kt) {
        const double t = kt * plan.dt();
        cd acc = 0.5 * samples[0];
        for (int k = 1; k < plan.ns; ++k)
            acc += samples[static_cast<std::size_t>(k)] *
                   std::polar(1.0, k * ds2 * t); // e^{i s2_k t}
        out[static_cast<std::size_t>(kt)] = std::exp(plan.s1 * t) / std::numbers::pi * ds2 * acc.real();
    }
    return out;
}

TimeSeriesField invert_to_time(const std::vector<SDomainField>& sweep,
                               const SweepPlan& plan) {
    if (static_cast<int>(sweep.size()) != plan.ns)
        fail("plan_mismatch", "sweep length differs from the plan");
    const int ndof = static_cast<int>(sweep.front().values.size());
    const double ds2 = plan.ds2();

    TimeSeriesField series;
    series.nt = plan.nt;
    series.dt = plan.dt();
    series.ndof = ndof;
    series.values.assign(static_cast<std::size_t>(plan.nt) * ndof, 0.0);

    std::vector<cd> acc(static_cast<std::size_t>(ndof));
    for (int kt = 0; kt < plan.nt; ++kt) {
        const double t = kt * series.dt;
        for (int j = 0; j < ndof; ++j) acc[j] = 0.5 * sweep[0].values[j];
        for (int k = 1; k < plan.ns; ++k) {
            const cd ph = std::polar(1.0, k * ds2 * t);
            const auto& vals = sweep[static_cast<std::size_t>(k)].values;
            for (int j = 0; j < ndof; ++j) acc[j] += vals[j] * ph;
        }
        const double scale = std::exp(plan.s1 * t) / std::numbers::pi * ds2;
        double* frame = series.values.data() + static_cast<std::size_t>(kt) * ndof;
        for (int j = 0; j < ndof; ++j) frame[j] = scale * acc[j].real();
    }
    return series;
}

double parseval_residual(const std::vector<SDomainField>& sweep,
                         const TimeSeriesField& series, const SweepPlan& plan,
                         const StripMesh& mesh) {
    if (static_cast<int>(sweep.size()) != plan.ns || series.nt != plan.nt)
        fail("plan_mismatch", "sweep/series do not match the plan");

    // time side: int_0^T exp(-2 s1 t) ||U||^2 dt
    double tside = 0.0;
    for (int kt = 0; kt < series.nt; ++kt) {
        const std::span<const double> frame(series.frame(kt), static_cast<std::size_t>(series.ndof));
        const double val = std::exp(-2.0 * plan.s1 * kt * series.dt) *
                           fe_mass_energy(mesh, frame, nullptr);
        tside += (kt == 0 || kt == series.nt - 1 ? 0.5 : 1.0) * val;
    }
    tside *= series.dt;

    // contour side: (1/pi) int_0^S ||U(s1 + i s2)||^2 ds2
    double fside = 0.0;
    for (int k = 0; k < plan.ns; ++k) {
        const double val = fe_l2_norm_sq(mesh, sweep[static_cast<std::size_t>(k)].values);
        fside += (k == 0 || k == plan.ns - 1 ? 0.5 : 1.0) * val;
    }
    fside *= plan.ds2() / std::numbers::pi;

    const double denom = std::max(std::abs(fside), 1e-300);
    return std::abs(tside - fside) / denom;
}

} // namespace gratetd
