#include "gratetd/mesh.hpp"

#include "gratetd/errors.hpp"

namespace gratetd {

StripMesh build_mesh(const MediumModel& medium, int nx, int nz) {
    if (!is_power_of_two(static_cast<std::size_t>(nx)))
        fail("nx_not_power_of_two", "nx must be a power of two");
    if (nz < 1) fail("grid_dims", "nz must be >= 1");
    if (nx != medium.nx || nz != medium.nz)
        fail("grid_mismatch", "mesh dims must match the medium grid");
    StripMesh mesh;
    mesh.nx = nx;
    mesh.nz = nz;
    mesh.period = medium.period;
    mesh.h1 = medium.h1;
    mesh.h2 = medium.h2;
    return mesh;
}

BoundaryTrace trace_of(const SDomainField& field, const StripMesh& mesh, int side) {
    if (side != 1 && side != 2) fail("side_tag", "side must be 1 or 2");
    BoundaryTrace t;
    t.side = side;
    t.period = mesh.period;
    const int k = side == 1 ? mesh.nz : 0;
    t.values.assign(field.values.begin() + static_cast<std::size_t>(k) * mesh.nx,
                    field.values.begin() + static_cast<std::size_t>(k + 1) * mesh.nx);
    return t;
}

} // namespace gratetd
