#include "gratetd/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gratetd/errors.hpp"

namespace gratetd {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// Exact integral of exp(-s t) * (linear interpolant) over [t0, t1].
cd laplace_linear_piece(cd s, double t0, double t1, double f0, double f1) {
    const double h = t1 - t0;
    const double slope = (f1 - f0) / h;
    // int exp(-s t) (f0 + slope (t - t0)) dt
    const cd e0 = std::exp(-s * t0);
    const cd e1 = std::exp(-s * t1);
    return (e0 * f0 - e1 * f1) / s + slope * (e0 - e1) / (s * s);
}

} // namespace

double IncidentPulse::light_speed() const { return 1.0 / std::sqrt(eps1 * mu1); }
double IncidentPulse::c1() const { return std::cos(theta) / light_speed(); }
double IncidentPulse::c2() const { return std::sin(theta) / light_speed(); }

IncidentPulse IncidentPulse::poly_exp(int order, double sigma, double amplitude,
                                      double delay, double theta, double eps1,
                                      double mu1, IncidenceDirection dir) {
    if (order < 0) fail("pulse_order", "pulse order must be >= 0");
    if (!(sigma > 0.0)) fail("pulse_sigma", "pulse timescale sigma must be > 0");
    if (!(delay >= 0.0)) fail("pulse_delay", "pulse delay must be >= 0");
    if (!(theta > 0.0) || !(theta < std::numbers::pi))
        fail("theta_out_of_range", "incidence angle theta must lie strictly inside (0, pi)");
    if (!(eps1 > 0.0) || !(mu1 > 0.0)) fail("positivity", "free-space eps1, mu1 must be > 0");
    IncidentPulse p;
    p.shape = PulseShape::PolyExp;
    p.order = order;
    p.sigma = sigma;
    p.amplitude = amplitude;
    p.delay = delay;
    p.theta = theta;
    p.direction = dir;
    p.eps1 = eps1;
    p.mu1 = mu1;
    return p;
}

IncidentPulse IncidentPulse::tabulated(std::vector<std::pair<double, double>> table,
                                       double delay, double theta, double eps1,
                                       double mu1, IncidenceDirection dir) {
    if (table.size() < 2) fail("pulse_table", "tabulated pulse needs at least two samples");
    for (std::size_t i = 1; i < table.size(); ++i)
        if (!(table[i].first > table[i - 1].first))
            fail("pulse_table", "tabulated pulse times must be strictly increasing");
    IncidentPulse p = poly_exp(4, 1.0, 1.0, delay, theta, eps1, mu1, dir);
    p.shape = PulseShape::Tabulated;
    p.table = std::move(table);
    return p;
}

double pulse_eval(const IncidentPulse& pulse, double tau, int k) {
    if (k < 0 || k > 3) fail("pulse_derivative_order", "pulse_eval supports derivatives up to order 3");
    if (tau <= 0.0) return 0.0;

    if (pulse.shape == PulseShape::Tabulated) {
        if (k > 0)
            fail("tabulated_derivative_unavailable",
                 "derivatives are not available for tabulated pulses");
        const auto& tb = pulse.table;
        // zero outside the tabulated support
        if (tau <= tb.front().first || tau >= tb.back().first) return 0.0;
        auto it = std::upper_bound(tb.begin(), tb.end(), tau,
                                   [](double t, const auto& p) { return t < p.first; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (tau - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    }

    const int m = pulse.order;
    const double si = 1.0 / pulse.sigma;
    const double scale = pulse.amplitude * std::pow(si, m);
    const double e = std::exp(-tau * si);

    auto tp = [&](int p) { return p < 0 ? 0.0 : std::pow(tau, p); };
    switch (k) {
        case 0:
            return scale * tp(m) * e;
        case 1:
            return scale * e * (m * tp(m - 1) - si * tp(m));
        case 2:
            return scale * e *
                   (m * (m - 1) * tp(m - 2) - 2.0 * m * si * tp(m - 1) + si * si * tp(m));
        default: // k == 3
            return scale * e *
                   (m * (m - 1) * (m - 2) * tp(m - 3) - 3.0 * m * (m - 1) * si * tp(m - 2) +
                    3.0 * m * si * si * tp(m - 1) - si * si * si * tp(m));
    }
}

cd pulse_laplace(const IncidentPulse& pulse, cd s) {
    if (!(s.real() > 0.0)) fail("laplace_domain", "pulse_laplace requires Re s > 0");
    if (pulse.shape == PulseShape::PolyExp) {
        const int m = pulse.order;
        const double si = 1.0 / pulse.sigma;
        return pulse.amplitude * factorial(m) * std::pow(si, m) *
               std::pow(s + si, -(m + 1));
    }
    // tabulated: exact transform of the linear interpolant, zero outside the table
    cd acc(0.0, 0.0);
    const auto& tb = pulse.table;
    for (std::size_t i = 0; i + 1 < tb.size(); ++i) {
        const double t0 = std::max(tb[i].first, 0.0);
        const double t1 = tb[i + 1].first;
        if (t1 <= 0.0) continue;
        double f0 = tb[i].second;
        if (t0 != tb[i].first) { // clip the interval at tau = 0
            const double w = (t0 - tb[i].first) / (t1 - tb[i].first);
            f0 = tb[i].second + w * (tb[i + 1].second - tb[i].second);
        }
        acc += laplace_linear_piece(s, t0, t1, f0, tb[i + 1].second);
    }
    return acc;
}

cd laplace_by_quadrature(const std::function<double(double)>& g, cd s, double t_end,
                         double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double t) { return std::exp(-s.real() * t) * std::cos(s.imag() * t) * g(t); };
    auto im = [&](double t) { return -std::exp(-s.real() * t) * std::sin(s.imag() * t) * g(t); };
    const double vr = gauss_kronrod<double, 61>::integrate(re, 0.0, t_end, 15, rel_tol);
    const double vi = gauss_kronrod<double, 61>::integrate(im, 0.0, t_end, 15, rel_tol);
    return {vr, vi};
}

cd incident_field_s(const IncidentPulse& pulse, cd s, double z, double h1) {
    const double c2 = pulse.c2();
    const cd phase = pulse.direction == IncidenceDirection::Down
                         ? std::exp(s * (c2 * (z - h1)))
                         : std::exp(-s * (c2 * (z - h1)));
    return std::exp(-s * pulse.delay) * phase * pulse_laplace(pulse, s);
}

cd incident_trace_s(const IncidentPulse& pulse, cd s, double z, double h1) {
    if (!(s.real() > 0.0)) fail("laplace_domain", "incident_trace_s requires Re s > 0");
    if (z > h1) fail("height_above_strip", "incident_trace_s requires z <= h1");
    return incident_field_s(pulse, s, z, h1);
}

cd rho_hat_coefficient(const IncidentPulse& pulse, cd s) {
    if (!(s.real() > 0.0)) fail("laplace_domain", "rho_hat requires Re s > 0");
    if (pulse.direction == IncidenceDirection::Paper) return {0.0, 0.0};
    return 2.0 * pulse.c2() * s * std::exp(-s * pulse.delay) * pulse_laplace(pulse, s);
}

BoundaryTrace rho_hat(const IncidentPulse& pulse, cd s, int nx, double period) {
    BoundaryTrace t;
    t.side = 1;
    t.period = period;
    t.values.assign(static_cast<std::size_t>(nx), rho_hat_coefficient(pulse, s));
    return t;
}

double rho_time(const IncidentPulse& pulse, double t, int deriv) {
    if (deriv < 0 || deriv > 2) fail("pulse_derivative_order", "rho_time supports derivatives 0..2");
    if (pulse.direction == IncidenceDirection::Paper) return 0.0;
    return 2.0 * pulse.c2() * pulse_eval(pulse, t - pulse.delay, deriv + 1);
}

} // namespace gratetd
