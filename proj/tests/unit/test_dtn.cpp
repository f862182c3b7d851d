#include <doctest.h>

#include <cmath>
#include <numbers>
#include <span>

#include "gratetd/dtn.hpp"
#include "gratetd/errors.hpp"
#include "gratetd/oracle.hpp"
#include "gratetd/rng.hpp"

using namespace gratetd;

namespace {

MediumModel unit_medium(double period, int n = 8) {
    const Layer layer{0.5, 1.0, 1.0};
    return build_layered(std::span(&layer, 1), period, 0.5, -0.5, n, n, ExteriorMedia{});
}

} // namespace

TEST_CASE("mode symbols: closed-form reference values") {
    // theta = pi/2: c1 = 0, beta^2 = s^2 at mode 0
    CHECK(std::abs(beta_symbol(cd(1.0, 0.0), 0.0, 0.0, 1.0, 1.0) - cd(-1.0, 0.0)) < 1e-15);
    // theta = pi/3, s = 2: mode 0 symbol equals -c2 s = -sqrt(3)
    const double c1 = std::cos(std::numbers::pi / 3.0);
    CHECK(beta_symbol(cd(2.0, 0.0), 0.0, c1, 1.0, 1.0).real() ==
          doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
    // period 2 pi, n = 1, s = 1: beta^2 = 1 + 1
    CHECK(beta_symbol(cd(1.0, 0.0), 1.0, 0.0, 1.0, 1.0).real() ==
          doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_symbol(cd(-1.0, 2.0), 0.0, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("closed-form identity for s1 a + s2 b at a frozen point") {
    // period 2 pi, mode 1, s = 1 + i, theta = pi/2
    const cd beta = beta_symbol(cd(1.0, 1.0), 1.0, 0.0, 1.0, 1.0);
    CHECK(beta.real() == doctest::Approx(-1.2720196495140690).epsilon(1e-12));
    CHECK(beta.imag() == doctest::Approx(-0.78615137775742328).epsilon(1e-12));
    const double lhs = 1.0 * beta.real() + 1.0 * beta.imag();
    const double rhs = 1.0 / (2.0 * beta.real()) *
                       (std::norm(beta) + 1.0 * (1.0 + 1.0) + 1.0);
    CHECK(lhs == doctest::Approx(-2.0581710272714921).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(lhs).epsilon(1e-12));
}

TEST_CASE("DtN acts diagonally on modes") {
    const auto medium = unit_medium(2.0 * std::numbers::pi);
    const int nx = 8;
    const auto table = make_symbol_table(medium, 0.0, 1, nx, cd(1.0, 0.0));

    BoundaryTrace zero;
    zero.side = 1;
    zero.period = medium.period;
    zero.values.assign(nx, cd(0.0, 0.0));
    const auto bz = apply_dtn(zero, table);
    for (const auto& v : bz.values) CHECK(std::abs(v) == 0.0);

    BoundaryTrace mode;
    mode.side = 1;
    mode.period = medium.period;
    mode.values.resize(nx);
    for (int i = 0; i < nx; ++i)
        mode.values[i] = std::polar(1.0, 2.0 * std::numbers::pi * i / nx); // n = 1
    const auto bm = apply_dtn(mode, table);
    const auto coeffs = bm.coefficients();
    for (int k = 0; k < nx; ++k) {
        const cd expected = mode_of_bin(k, nx) == 1 ? table.beta[1] : cd(0.0, 0.0);
        CHECK(std::abs(coeffs[k] - expected) < 1e-13);
    }
}

TEST_CASE("DtN matches the dense summation oracle") {
    Rng rng(11);
    const auto medium = unit_medium(1.0);
    for (const int nx : {8, 64, 256}) {
        const cd s(rng.uniform(0.2, 4.0), rng.uniform(-8.0, 8.0));
        const auto table = make_symbol_table(medium, 0.3, 2, nx, s);
        BoundaryTrace t;
        t.side = 2;
        t.period = 1.0;
        t.values.resize(static_cast<std::size_t>(nx));
        for (auto& v : t.values) v = rng.complex_box(1.0);
        const auto fast = apply_dtn(t, table);
        const auto dense = oracle::dense_dtn_reference(t, table);
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < nx; ++i) {
            scale = std::max(scale, std::abs(dense.values[i]));
            diff = std::max(diff, std::abs(dense.values[i] - fast.values[i]));
        }
        CHECK(diff / scale < 1e-12);
    }
}

TEST_CASE("weighted trace norm reference values") {
    BoundaryTrace one;
    one.side = 1;
    one.period = 1.0;
    one.values.assign(8, cd(1.0, 0.0));
    CHECK(hs_boundary_norm(one, cd(3.0, 4.0), 0.5) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-14)); // (25)^(1/4) squared sum
    BoundaryTrace zero = one;
    zero.values.assign(8, cd(0.0, 0.0));
    CHECK(hs_boundary_norm(zero, cd(3.0, 4.0), 0.5) == 0.0);
}

TEST_CASE("weighted volume norm reference value and identity") {
    const auto medium = unit_medium(2.0 * std::numbers::pi, 16);
    const auto mesh = build_mesh(medium, 16, 16);

    SDomainField one;
    one.s = cd(1.0, 0.0);
    one.values.assign(static_cast<std::size_t>(mesh.ndof()), cd(1.0, 0.0));
    // |s|^2 * area = 2 pi
    CHECK(hsp_volume_norm(one, mesh, cd(0.6, 0.8)) ==
          doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));

    SDomainField zero = one;
    zero.values.assign(zero.values.size(), cd(0.0, 0.0));
    CHECK(hsp_volume_norm(zero, mesh, cd(1.0, 0.0)) == 0.0);

    Rng rng(3);
    SDomainField rand = one;
    for (auto& v : rand.values) v = rng.complex_box(1.0);
    const cd s(0.7, -2.3);
    const double a = hsp_volume_norm(rand, mesh, s);
    const double b = hsp_volume_norm_nodal(rand, mesh, s);
    CHECK(std::abs(a - b) / a < 1e-12);
}

TEST_CASE("exterior extension propagates and re-adds the incident part") {
    const auto medium = unit_medium(1.0);
    const auto pulse = IncidentPulse::poly_exp(4, 1.0, 1.0, 0.2, 1.0);
    const cd s(0.8, 2.0);
    const int nx = 8;

    // homogeneous medium: total trace = incident trace, extension = incident at z
    BoundaryTrace total;
    total.side = 1;
    total.period = 1.0;
    total.values.assign(nx, incident_trace_s(pulse, s, medium.h1, medium.h1));
    const double z_up = medium.h1 + 0.7;
    const auto up = extend_field_exterior(total, pulse, s, medium, z_up);
    for (const auto& v : up.values)
        CHECK(std::abs(v - incident_field_s(pulse, s, z_up, medium.h1)) < 1e-13);

    // zero propagation distance returns the input unchanged
    const auto same = extend_field_exterior(total, pulse, s, medium, medium.h1);
    for (int i = 0; i < nx; ++i) CHECK(std::abs(same.values[i] - total.values[i]) < 1e-13);

    CHECK_THROWS_AS(extend_field_exterior(total, pulse, s, medium, 0.0), Error);

    // scattered-coefficient decay below the strip
    Rng rng(5);
    BoundaryTrace bottom;
    bottom.side = 2;
    bottom.period = 1.0;
    bottom.values.resize(nx);
    for (auto& v : bottom.values) v = rng.complex_box(1.0);
    const auto down = extend_field_exterior(bottom, pulse, s, medium, medium.h2 - 0.4);
    const auto c_in = bottom.coefficients();
    const auto c_out = down.coefficients();
    for (int k = 0; k < nx; ++k) CHECK(std::abs(c_out[k]) <= std::abs(c_in[k]) + 1e-15);
}
