#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gratetd/diagnostics.hpp"
#include "gratetd/dtn.hpp"
#include "gratetd/errors.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/oracle.hpp"
#include "gratetd/pulse.hpp"
#include "gratetd/solver.hpp"
#include "gratetd/sweep.hpp"

namespace py = pybind11;
using namespace gratetd;

namespace {

py::array_t<double> cells_array(const MediumModel& m, const std::vector<double>& cells) {
    py::array_t<double> out({m.nz, m.nx});
    auto r = out.mutable_unchecked<2>();
    for (int k = 0; k < m.nz; ++k)
        for (int i = 0; i < m.nx; ++i) r(k, i) = cells[m.cell(i, k)];
    return out;
}

std::vector<cd> trace_values(const py::array_t<std::complex<double>>& values) {
    if (values.ndim() != 1) throw py::value_error("trace must be one-dimensional");
    std::vector<cd> v(static_cast<std::size_t>(values.shape(0)));
    auto r = values.unchecked<1>();
    for (py::ssize_t i = 0; i < values.shape(0); ++i) v[static_cast<std::size_t>(i)] = r(i);
    return v;
}

py::array_t<std::complex<double>> field_array(const SDomainField& f, const StripMesh& mesh) {
    py::array_t<std::complex<double>> out({mesh.nz + 1, mesh.nx});
    auto r = out.mutable_unchecked<2>();
    for (int k = 0; k <= mesh.nz; ++k)
        for (int i = 0; i < mesh.nx; ++i) r(k, i) = f.values[mesh.node(i, k)];
    return out;
}

SDomainField field_from_array(const py::array_t<std::complex<double>>& arr,
                              const StripMesh& mesh, cd s) {
    if (arr.ndim() != 2 || arr.shape(0) != mesh.nz + 1 || arr.shape(1) != mesh.nx)
        throw py::value_error("field must have shape (nz + 1, nx)");
    SDomainField f;
    f.s = s;
    f.values.resize(static_cast<std::size_t>(mesh.ndof()));
    auto r = arr.unchecked<2>();
    for (int k = 0; k <= mesh.nz; ++k)
        for (int i = 0; i < mesh.nx; ++i) f.values[mesh.node(i, k)] = r(k, i);
    return f;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Time-domain scattering by periodic gratings via exact "
              "transparent boundary conditions (Laplace-domain sweep core).";

    py::register_exception<Error>(m, "GratetdError");

    py::class_<MediumModel>(m, "MediumModel", "Periodic medium on the strip.")
        .def_readonly("period", &MediumModel::period)
        .def_readonly("h1", &MediumModel::h1)
        .def_readonly("h2", &MediumModel::h2)
        .def_readonly("nx", &MediumModel::nx)
        .def_readonly("nz", &MediumModel::nz)
        .def_readonly("eps1", &MediumModel::eps1)
        .def_readonly("mu1", &MediumModel::mu1)
        .def_readonly("eps2", &MediumModel::eps2)
        .def_readonly("mu2", &MediumModel::mu2)
        .def_property_readonly("polarization",
                               [](const MediumModel& mm) {
                                   return mm.polarization == Polarization::TE ? "te" : "tm";
                               })
        .def_property_readonly(
            "eps", [](const MediumModel& mm) { return cells_array(mm, mm.eps_cells); },
            "cellwise permittivity, shape (nz, nx)")
        .def_property_readonly(
            "mu", [](const MediumModel& mm) { return cells_array(mm, mm.mu_cells); })
        .def("__repr__", [](const MediumModel& mm) {
            return "<MediumModel " + std::to_string(mm.nx) + "x" + std::to_string(mm.nz) +
                   " period=" + std::to_string(mm.period) + ">";
        });

    m.def(
        "build_layered",
        [](const std::vector<std::tuple<double, double, double>>& layers, double period,
           double h1, double h2, int nx, int nz, double eps1, double mu1, double eps2,
           double mu2, const std::string& polarization) {
            std::vector<Layer> ls;
            ls.reserve(layers.size());
            for (const auto& [z, e, u] : layers) ls.push_back({z, e, u});
            return build_layered(ls, period, h1, h2, nx, nz,
                                 ExteriorMedia{eps1, mu1, eps2, mu2},
                                 polarization == "tm" ? Polarization::TM : Polarization::TE);
        },
        py::arg("layers"), py::arg("period"), py::arg("h1"), py::arg("h2"), py::arg("nx"),
        py::arg("nz"), py::arg("eps1") = 1.0, py::arg("mu1") = 1.0, py::arg("eps2") = 1.0,
        py::arg("mu2") = 1.0, py::arg("polarization") = "te",
        "Stack of horizontal layers given top-down as (z_top, eps, mu) tuples.");

    m.def(
        "build_binary_grating",
        [](const py::array_t<double>& profile, double eps_above, double mu_above,
           double eps_below, double mu_below, double period, double h1, double h2, int nx,
           int nz, double eps1, double mu1, double eps2, double mu2,
           const std::string& polarization) {
            if (profile.ndim() != 1 || profile.shape(0) != nx)
                throw py::value_error("profile needs one sample per column");
            std::vector<double> p(static_cast<std::size_t>(nx));
            auto r = profile.unchecked<1>();
            for (int i = 0; i < nx; ++i) p[static_cast<std::size_t>(i)] = r(i);
            return build_binary_grating(p, eps_above, mu_above, eps_below, mu_below, period,
                                        h1, h2, nx, nz, ExteriorMedia{eps1, mu1, eps2, mu2},
                                        polarization == "tm" ? Polarization::TM
                                                             : Polarization::TE);
        },
        py::arg("profile"), py::arg("eps_above"), py::arg("mu_above"), py::arg("eps_below"),
        py::arg("mu_below"), py::arg("period"), py::arg("h1"), py::arg("h2"), py::arg("nx"),
        py::arg("nz"), py::arg("eps1") = 1.0, py::arg("mu1") = 1.0, py::arg("eps2") = 1.0,
        py::arg("mu2") = 1.0, py::arg("polarization") = "te");

    m.def("validate", &validate, py::arg("medium"),
          "Names of violated invariants; empty means admissible.");
    m.def("swap_polarization", &swap_polarization, py::arg("medium"));

    py::class_<IncidentPulse>(m, "IncidentPulse")
        .def_readonly("order", &IncidentPulse::order)
        .def_readonly("sigma", &IncidentPulse::sigma)
        .def_readonly("amplitude", &IncidentPulse::amplitude)
        .def_readonly("delay", &IncidentPulse::delay)
        .def_readonly("theta", &IncidentPulse::theta)
        .def_property_readonly("c1", &IncidentPulse::c1)
        .def_property_readonly("c2", &IncidentPulse::c2);

    m.def(
        "poly_exp_pulse",
        [](int order, double sigma, double amplitude, double delay, double theta,
           double eps1, double mu1, const std::string& direction) {
            return IncidentPulse::poly_exp(order, sigma, amplitude, delay, theta, eps1, mu1,
                                           direction == "paper" ? IncidenceDirection::Paper
                                                                : IncidenceDirection::Down);
        },
        py::arg("order") = 4, py::arg("sigma") = 1.0, py::arg("amplitude") = 1.0,
        py::arg("delay") = 1.0, py::arg("theta") = 1.0471975511965976, py::arg("eps1") = 1.0,
        py::arg("mu1") = 1.0, py::arg("direction") = "down");

    m.def("pulse_eval", &pulse_eval, py::arg("pulse"), py::arg("tau"), py::arg("k") = 0);
    m.def("pulse_laplace", &pulse_laplace, py::arg("pulse"), py::arg("s"));
    m.def("incident_trace_s", &incident_trace_s, py::arg("pulse"), py::arg("s"), py::arg("z"),
          py::arg("h1"));
    m.def("rho_hat_coefficient", &rho_hat_coefficient, py::arg("pulse"), py::arg("s"));
    m.def("rho_time", &rho_time, py::arg("pulse"), py::arg("t"), py::arg("deriv") = 0);

    m.def(
        "beta_symbol",
        [](cd s, double alpha, double c1, double eps_j, double mu_j) {
            return beta_symbol(s, alpha, c1, eps_j, mu_j);
        },
        py::arg("s"), py::arg("alpha"), py::arg("c1"), py::arg("eps_j"), py::arg("mu_j"),
        "Outgoing mode symbol (Re < 0 branch).");

    m.def(
        "apply_dtn",
        [](const py::array_t<std::complex<double>>& values, int side,
           const MediumModel& medium, double c1, cd s) {
            BoundaryTrace t;
            t.side = side;
            t.period = medium.period;
            t.values = trace_values(values);
            const auto table =
                make_symbol_table(medium, c1, side, static_cast<int>(t.values.size()), s);
            const auto out = apply_dtn(t, table);
            return py::array_t<std::complex<double>>(
                static_cast<py::ssize_t>(out.values.size()), out.values.data());
        },
        py::arg("values"), py::arg("side"), py::arg("medium"), py::arg("c1"), py::arg("s"));

    m.def(
        "hs_boundary_norm",
        [](const py::array_t<std::complex<double>>& values, double period, cd s, double lam) {
            BoundaryTrace t;
            t.side = 1;
            t.period = period;
            t.values = trace_values(values);
            return hs_boundary_norm(t, s, lam);
        },
        py::arg("values"), py::arg("period"), py::arg("s"), py::arg("lam"));

    m.def(
        "hsp_volume_norm",
        [](const py::array_t<std::complex<double>>& field, const MediumModel& medium, cd s) {
            const auto mesh = build_mesh(medium, medium.nx, medium.nz);
            return hsp_volume_norm(field_from_array(field, mesh, s), mesh, s);
        },
        py::arg("field"), py::arg("medium"), py::arg("s"));

    m.def(
        "solve_rp",
        [](const MediumModel& medium, const IncidentPulse& pulse, cd s) {
            const auto mesh = build_mesh(medium, medium.nx, medium.nz);
            return field_array(solve_rp(medium, mesh, pulse, s), mesh);
        },
        py::arg("medium"), py::arg("pulse"), py::arg("s"),
        "Total field at one Laplace frequency, shape (nz + 1, nx).");

    py::class_<SweepPlan>(m, "SweepPlan")
        .def_readonly("s1", &SweepPlan::s1)
        .def_readonly("smax", &SweepPlan::smax)
        .def_readonly("ns", &SweepPlan::ns)
        .def_readonly("t_final", &SweepPlan::t_final)
        .def_readonly("nt", &SweepPlan::nt)
        .def_property_readonly("ds2", &SweepPlan::ds2)
        .def_property_readonly("dt", &SweepPlan::dt);

    m.def("plan_sweep", &plan_sweep, py::arg("pulse"), py::arg("t_final"),
          py::arg("delta") = 1e-8, py::arg("kappa") = 4.0, py::arg("aliasing") = 3.0);

    m.def(
        "simulate",
        [](const MediumModel& medium, const IncidentPulse& pulse, const SweepPlan& plan,
           int threads) {
            const auto mesh = build_mesh(medium, medium.nx, medium.nz);
            const auto sweep = run_sweep(medium, mesh, pulse, plan, threads);
            const auto series = invert_to_time(sweep, plan);
            const auto e1 = energy_e1(series, mesh, medium, pulse.c1());
            const auto e2 = energy_e2(series, mesh, medium, pulse.c1());
            const double residual = parseval_residual(sweep, series, plan, mesh);

            py::array_t<double> u({series.nt, mesh.nz + 1, mesh.nx});
            auto r = u.mutable_unchecked<3>();
            for (int kt = 0; kt < series.nt; ++kt)
                for (int k = 0; k <= mesh.nz; ++k)
                    for (int i = 0; i < mesh.nx; ++i)
                        r(kt, k, i) = series.at(kt, mesh.node(i, k));
            py::array_t<double> t(series.nt);
            auto tr = t.mutable_unchecked<1>();
            for (int kt = 0; kt < series.nt; ++kt) tr(kt) = series.time(kt);

            py::dict out;
            out["t"] = t;
            out["u"] = u;
            out["e1"] = py::array_t<double>(static_cast<py::ssize_t>(e1.size()), e1.data());
            out["e2"] = py::array_t<double>(static_cast<py::ssize_t>(e2.size()), e2.data());
            out["parseval_residual"] = residual;
            return out;
        },
        py::arg("medium"), py::arg("pulse"), py::arg("plan"), py::arg("threads") = 1,
        "Run the frequency sweep and invert to the time domain.");

    m.def(
        "homogeneous_reference",
        [](const IncidentPulse& pulse, cd s, double z, double h1) {
            return oracle::homogeneous_reference(pulse, s, z, h1);
        },
        py::arg("pulse"), py::arg("s"), py::arg("z"), py::arg("h1"));

    m.attr("__version__") = "0.1.0";
}
