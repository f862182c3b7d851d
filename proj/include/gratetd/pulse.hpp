#ifndef GRATETD_PULSE_HPP
#define GRATETD_PULSE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "gratetd/fourier.hpp"
#include "gratetd/medium.hpp"

namespace gratetd {

enum class PulseShape { PolyExp, Tabulated };

// "Down" is the default downward-propagating convention f(t - td - c2 (h1 - z)).
// "Paper" keeps the upward-propagating literal form, whose boundary load rho
// vanishes identically.
enum class IncidenceDirection { Down, Paper };

/// Causal incident plane-wave pulse. The default shape is
/// f(tau) = A (tau/sigma)^m exp(-tau/sigma) for tau > 0, zero otherwise,
/// which has the closed-form Laplace transform A m! sigma^-m (s + 1/sigma)^-(m+1).
struct IncidentPulse {
    PulseShape shape = PulseShape::PolyExp;
    int order = 4;          // m; simulation configs require m >= 3 (C^2 at tau = 0)
    double sigma = 1.0;     // timescale > 0
    double amplitude = 1.0;
    double delay = 0.0;     // t_d >= 0
    double theta = 1.5707963267948966; // radians, strictly inside (0, pi)
    IncidenceDirection direction = IncidenceDirection::Down;
    double eps1 = 1.0, mu1 = 1.0; // free-space constants defining c, c1, c2
    std::vector<std::pair<double, double>> table; // tabulated (tau, f) samples

    double light_speed() const; // c = 1/sqrt(eps1*mu1)
    double c1() const;          // cos(theta)/c
    double c2() const;          // sin(theta)/c  (> 0 on (0, pi))

    static IncidentPulse poly_exp(int order, double sigma, double amplitude,
                                  double delay, double theta, double eps1 = 1.0,
                                  double mu1 = 1.0,
                                  IncidenceDirection dir = IncidenceDirection::Down);
    static IncidentPulse tabulated(std::vector<std::pair<double, double>> table,
                                   double delay, double theta, double eps1 = 1.0,
                                   double mu1 = 1.0,
                                   IncidenceDirection dir = IncidenceDirection::Down);
};

/// k-th derivative of the pulse profile at tau (k <= 3); exactly zero for tau <= 0.
double pulse_eval(const IncidentPulse& pulse, double tau, int k = 0);

/// Laplace transform of the profile at s (Re s > 0). Closed form for the
/// polynomial-exponential shape; per-interval exact quadrature of the linear
/// interpolant for tabulated pulses.
cd pulse_laplace(const IncidentPulse& pulse, cd s);

/// Adaptive Gauss-Kronrod evaluation of int_0^inf exp(-s t) g(t) dt, used as
/// the independent quadrature oracle for the closed forms above.
cd laplace_by_quadrature(const std::function<double(double)>& g, cd s,
                         double t_end, double rel_tol = 1e-12);

/// Transformed incident field at height z <= h1 in the s-domain.
cd incident_trace_s(const IncidentPulse& pulse, cd s, double z, double h1);

// Unguarded evaluation at any height (the exterior extension needs z > h1).
cd incident_field_s(const IncidentPulse& pulse, cd s, double z, double h1);

/// n = 0 Fourier coefficient of the boundary load rho on Gamma_1:
/// 2 c2 s exp(-s t_d) f(s) in the downward convention, 0 in the paper one.
cd rho_hat_coefficient(const IncidentPulse& pulse, cd s);

/// Full nodal load trace on Gamma_1 (x-independent).
BoundaryTrace rho_hat(const IncidentPulse& pulse, cd s, int nx, double period);

/// Time-domain load rho(t) = 2 c2 f'(t - t_d) and its time derivatives
/// (deriv in {0, 1, 2}); identically zero in the paper convention.
double rho_time(const IncidentPulse& pulse, double t, int deriv = 0);

} // namespace gratetd

#endif
