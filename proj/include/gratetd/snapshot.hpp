#ifndef GRATETD_SNAPSHOT_HPP
#define GRATETD_SNAPSHOT_HPP

#include <span>
#include <string>
#include <vector>

#include "gratetd/mesh.hpp"

namespace gratetd {

/// Field snapshot file: the 4-byte magic "FLD1" and a newline, one text header
/// line "nx nz period h1 h2 t", then nx*(nz+1) little-endian IEEE doubles in
/// node-major order (index k*nx + i). Round trips are bit-identical.
struct FieldSnapshot {
    int nx = 0;
    int nz = 0;
    double period = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double t = 0.0;
    std::vector<double> data;
};

void write_snapshot(const std::string& path, const FieldSnapshot& snap);
FieldSnapshot read_snapshot(const std::string& path);

/// Check a snapshot header against a mesh; throws "mesh_mismatch".
void require_mesh_match(const FieldSnapshot& snap, const StripMesh& mesh);

/// CSV with header "t,name1,name2,..." and 17-significant-digit values,
/// locale independent.
void write_trace_csv(const std::string& path, std::span<const double> times,
                     std::span<const std::string> names,
                     std::span<const std::vector<double>> columns);

} // namespace gratetd

#endif
