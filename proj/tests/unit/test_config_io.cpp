#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gratetd/cli.hpp"
#include "gratetd/config.hpp"
#include "gratetd/errors.hpp"
#include "gratetd/rng.hpp"
#include "gratetd/snapshot.hpp"

using namespace gratetd;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& body)
        : path(fs::temp_directory_path() / name) {
        std::ofstream out(path, std::ios::trunc);
        out << body;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("minimal config gets defaults for the remaining sections") {
    TempFile f("gratetd_min.cfg", "[medium]\nkind = homogeneous\n[pulse]\norder = 5\n");
    const auto cfg = parse_config(f.path.string());
    CHECK(cfg.grid.nx == 64);
    CHECK(cfg.grid.nz == 64);
    CHECK(cfg.sweep.kappa == 4.0);
    CHECK(cfg.time.t_final == 10.0);
    CHECK(cfg.pulse.order == 5);
}

TEST_CASE("theta on the interval boundary is rejected with the constraint name") {
    TempFile f("gratetd_theta.cfg", "[pulse]\ntheta = 0\n");
    try {
        parse_config(f.path.string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "theta_out_of_range");
        CHECK(std::string(e.what()).find("(0, pi)") != std::string::npos);
    }
}

TEST_CASE("duplicate and unknown keys are rejected") {
    TempFile dup("gratetd_dup.cfg", "[grid]\nnx = 32\nnx = 64\n");
    try {
        parse_config(dup.path.string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "duplicate_key");
    }
    TempFile unk("gratetd_unk.cfg", "[grid]\nnq = 32\n");
    try {
        parse_config(unk.path.string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "unknown_key");
    }
}

TEST_CASE("layered and lamellar configs build valid media") {
    TempFile f("gratetd_lay.cfg",
               "[medium]\nkind = layered\neps2 = 4\n"
               "layers = 0.5:1:1; 0:4:1\n[grid]\nnx = 8\nnz = 8\n");
    const auto cfg = parse_config(f.path.string());
    const auto medium = make_medium(cfg);
    CHECK(validate(medium).empty());
    CHECK(medium.eps(0, 0) == 4.0);

    TempFile g("gratetd_lam.cfg",
               "[medium]\nkind = lamellar\neps2 = 3\neps_below = 3\n"
               "[grid]\nnx = 8\nnz = 8\n");
    const auto cfg2 = parse_config(g.path.string());
    const auto lam = make_medium(cfg2);
    CHECK(validate(lam).empty());
    CHECK_FALSE(lam.x_independent());
}

TEST_CASE("snapshot round trip is bit-identical") {
    Rng rng(4);
    FieldSnapshot snap;
    snap.nx = 8;
    snap.nz = 4;
    snap.period = 1.0;
    snap.h1 = 0.5;
    snap.h2 = -0.5;
    snap.t = 1.25;
    snap.data.resize(8 * 5);
    for (auto& v : snap.data) v = rng.uniform(-10.0, 10.0);

    const auto path = fs::temp_directory_path() / "gratetd_snap.fld";
    write_snapshot(path.string(), snap);
    const auto first = read_all(path);
    const auto back = read_snapshot(path.string());
    CHECK(back.nx == snap.nx);
    CHECK(back.t == snap.t);
    CHECK(back.data == snap.data); // bitwise equality of every payload double

    write_snapshot(path.string(), back);
    CHECK(read_all(path) == first);
    fs::remove(path);
}

TEST_CASE("snapshot corruption is reported by name") {
    FieldSnapshot snap;
    snap.nx = 4;
    snap.nz = 2;
    snap.period = 1.0;
    snap.h1 = 0.5;
    snap.h2 = -0.5;
    snap.t = 0.0;
    snap.data.assign(12, 1.0);
    const auto path = fs::temp_directory_path() / "gratetd_trunc.fld";
    write_snapshot(path.string(), snap);

    // truncate the payload
    fs::resize_file(path, fs::file_size(path) - 16);
    try {
        read_snapshot(path.string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "snapshot_truncated");
    }

    std::ofstream bad(path, std::ios::trunc);
    bad << "NOPE\n1 1 1 1 -1 0\n";
    bad.close();
    try {
        read_snapshot(path.string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "snapshot_magic");
    }
    fs::remove(path);

    StripMesh mesh;
    mesh.nx = 8;
    mesh.nz = 2;
    mesh.period = 1.0;
    mesh.h1 = 0.5;
    mesh.h2 = -0.5;
    try {
        require_mesh_match(snap, mesh);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "mesh_mismatch");
    }
}

TEST_CASE("trace CSV layout and determinism") {
    const auto path = fs::temp_directory_path() / "gratetd_trace.csv";
    const std::vector<double> t = {0.0, 0.5, 1.0};
    const std::vector<std::string> names = {"e1", "e2"};
    const std::vector<std::vector<double>> cols = {{1.0, 2.0, 3.0}, {0.1, 0.2, 0.3}};
    write_trace_csv(path.string(), t, names, cols);
    const auto first = read_all(path);
    CHECK(first.substr(0, 8) == "t,e1,e2\n");
    write_trace_csv(path.string(), t, names, cols);
    CHECK(read_all(path) == first);

    // header-only file for an empty series list
    const std::vector<double> no_t;
    const std::vector<std::string> one_name = {"a"};
    const std::vector<std::vector<double>> one_empty = {{}};
    write_trace_csv(path.string(), no_t, one_name, one_empty);
    CHECK(read_all(path) == "t,a\n");
    fs::remove(path);
}

TEST_CASE("cli entry: unknown subcommand and missing config exit with code 2") {
    CHECK(cli_main({"frobnicate"}) == 2);
    CHECK(cli_main({"validate"}) == 2); // --config is required
}
