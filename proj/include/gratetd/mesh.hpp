#ifndef GRATETD_MESH_HPP
#define GRATETD_MESH_HPP

#include <vector>

#include "gratetd/fourier.hpp"
#include "gratetd/medium.hpp"

namespace gratetd {

/// Uniform tensor mesh on the strip, periodic in x. Nodes (i, k) with
/// i in [0, nx) and k in [0, nz]; global index k*nx + i (k = 0 on Gamma_2).
/// One bilinear element per medium cell.
struct StripMesh {
    int nx = 1;
    int nz = 1;
    double period = 1.0;
    double h1 = 0.5;
    double h2 = -0.5;

    double dx() const { return period / nx; }
    double dz() const { return (h1 - h2) / nz; }
    int ndof() const { return nx * (nz + 1); }
    int node(int i, int k) const { return k * nx + ((i % nx) + nx) % nx; }
    double x(int i) const { return i * dx(); }
    double z(int k) const { return h2 + k * dz(); }
};

StripMesh build_mesh(const MediumModel& medium, int nx, int nz);

enum class FieldRole { Total, Scattered, Incident };

/// Complex nodal field on the strip mesh at one Laplace frequency.
struct SDomainField {
    cd s;
    FieldRole role = FieldRole::Total;
    std::vector<cd> values; // ndof, node-major (k*nx + i)
};

BoundaryTrace trace_of(const SDomainField& field, const StripMesh& mesh, int side);

/// Real nodal field on a uniform time grid (row t, column node).
struct TimeSeriesField {
    int nt = 0;
    double dt = 0.0;
    int ndof = 0;
    std::vector<double> values; // nt*ndof

    double at(int kt, int node) const {
        return values[static_cast<std::size_t>(kt) * ndof + node];
    }
    const double* frame(int kt) const {
        return values.data() + static_cast<std::size_t>(kt) * ndof;
    }
    double time(int kt) const { return kt * dt; }
};

} // namespace gratetd

#endif
