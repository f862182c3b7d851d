"""Time-domain scattering by periodic gratings via exact transparent
boundary conditions: Python bindings for the C++ core."""

import os
import sys


def _load_core():
    try:
        from . import _core  # packaged wheel layout
        return _core
    except ImportError:
        ext_dir = os.environ.get("GRATETD_EXT_DIR")
        if not ext_dir:
            raise
        sys.path.insert(0, ext_dir)
        try:
            import _core
        finally:
            sys.path.remove(ext_dir)
        return _core


_core = _load_core()

MediumModel = _core.MediumModel
IncidentPulse = _core.IncidentPulse
SweepPlan = _core.SweepPlan
GratetdError = _core.GratetdError

build_layered = _core.build_layered
build_binary_grating = _core.build_binary_grating
validate = _core.validate
swap_polarization = _core.swap_polarization
poly_exp_pulse = _core.poly_exp_pulse
pulse_eval = _core.pulse_eval
pulse_laplace = _core.pulse_laplace
incident_trace_s = _core.incident_trace_s
rho_hat_coefficient = _core.rho_hat_coefficient
rho_time = _core.rho_time
beta_symbol = _core.beta_symbol
apply_dtn = _core.apply_dtn
hs_boundary_norm = _core.hs_boundary_norm
hsp_volume_norm = _core.hsp_volume_norm
solve_rp = _core.solve_rp
plan_sweep = _core.plan_sweep
simulate = _core.simulate
homogeneous_reference = _core.homogeneous_reference

__version__ = _core.__version__

__all__ = [
    "MediumModel", "IncidentPulse", "SweepPlan", "GratetdError",
    "build_layered", "build_binary_grating", "validate", "swap_polarization",
    "poly_exp_pulse", "pulse_eval", "pulse_laplace", "incident_trace_s",
    "rho_hat_coefficient", "rho_time", "beta_symbol", "apply_dtn",
    "hs_boundary_norm", "hsp_volume_norm", "solve_rp", "plan_sweep",
    "simulate", "homogeneous_reference",
]
