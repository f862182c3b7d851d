#include "gratetd/snapshot.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gratetd/errors.hpp"

namespace gratetd {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot payload assumes a little-endian host");

std::string shortest(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

} // namespace

void write_snapshot(const std::string& path, const FieldSnapshot& snap) {
    if (snap.data.size() != static_cast<std::size_t>(snap.nx) * (snap.nz + 1))
        fail("snapshot_shape", "snapshot payload size does not match the header dims");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("io_failure", "cannot open snapshot for writing: " + path);
    out << "FLD1\n"
        << snap.nx << ' ' << snap.nz << ' ' << shortest(snap.period) << ' '
        << shortest(snap.h1) << ' ' << shortest(snap.h2) << ' ' << shortest(snap.t)
        << '\n';
    out.write(reinterpret_cast<const char*>(snap.data.data()),
              static_cast<std::streamsize>(snap.data.size() * sizeof(double)));
    if (!out) fail("io_failure", "short write to snapshot: " + path);
}

FieldSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("io_failure", "cannot open snapshot: " + path);
    std::string magic;
    if (!std::getline(in, magic) || magic != "FLD1")
        fail("snapshot_magic", "bad snapshot magic in " + path);
    std::string header;
    if (!std::getline(in, header)) fail("snapshot_truncated", "missing snapshot header");
    FieldSnapshot snap;
    std::stringstream hs(header);
    if (!(hs >> snap.nx >> snap.nz >> snap.period >> snap.h1 >> snap.h2 >> snap.t))
        fail("snapshot_header", "malformed snapshot header: " + header);
    if (snap.nx < 1 || snap.nz < 1) fail("snapshot_header", "bad snapshot dims");
    snap.data.resize(static_cast<std::size_t>(snap.nx) * (snap.nz + 1));
    in.read(reinterpret_cast<char*>(snap.data.data()),
            static_cast<std::streamsize>(snap.data.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != snap.data.size() * sizeof(double))
        fail("snapshot_truncated", "snapshot payload shorter than the header promises");
    return snap;
}

void require_mesh_match(const FieldSnapshot& snap, const StripMesh& mesh) {
    if (snap.nx != mesh.nx || snap.nz != mesh.nz || snap.period != mesh.period ||
        snap.h1 != mesh.h1 || snap.h2 != mesh.h2)
        fail("mesh_mismatch", "snapshot header does not match the mesh");
}

void write_trace_csv(const std::string& path, std::span<const double> times,
                     std::span<const std::string> names,
                     std::span<const std::vector<double>> columns) {
    if (names.size() != columns.size())
        fail("trace_shape", "one name per column is required");
    for (const auto& col : columns)
        if (col.size() != times.size())
            fail("trace_shape", "trace columns must share the time grid length");

    std::ofstream out(path, std::ios::trunc);
    if (!out) fail("io_failure", "cannot open trace CSV for writing: " + path);
    out << 't';
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < times.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.17g", times[r]);
        out << buf;
        for (const auto& col : columns) {
            std::snprintf(buf, sizeof(buf), "%.17g", col[r]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) fail("io_failure", "short write to trace CSV: " + path);
}

} // namespace gratetd
