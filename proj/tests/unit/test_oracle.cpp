#include <doctest.h>

#include <cmath>
#include <numbers>
#include <span>

#include "gratetd/errors.hpp"
#include "gratetd/oracle.hpp"

using namespace gratetd;

namespace {

MediumModel two_layer(double eps_lo, double mu_lo, int n = 16) {
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.0, eps_lo, mu_lo}};
    ExteriorMedia ext{1.0, 1.0, eps_lo, mu_lo};
    return build_layered(layers, 1.0, 0.5, -0.5, n, n, ext);
}

} // namespace

TEST_CASE("homogeneous reference satisfies both transparent conditions") {
    const auto pulse = IncidentPulse::poly_exp(4, 1.0, 1.0, 0.2, 1.1);
    const double h1 = 0.5, h2 = -0.5;
    const cd s(0.7, 3.0);
    const cd at_h1 = oracle::homogeneous_reference(pulse, s, h1, h1);
    CHECK(std::abs(at_h1 - std::exp(-s * 0.2) * pulse_laplace(pulse, s)) < 1e-14);

    // lower condition: -dU/dz = beta_2 U with beta_2 = -c2 s (matched media)
    const double c2 = pulse.c2();
    const cd u_h2 = oracle::homogeneous_reference(pulse, s, h2, h1);
    const cd dz_h2 = s * c2 * u_h2; // d/dz of exp(s c2 (z - h1))
    const cd beta2 = beta_symbol(s, 0.0, pulse.c1(), 1.0, 1.0);
    CHECK(std::abs(-dz_h2 - beta2 * u_h2) / std::abs(u_h2) < 1e-13);
}

TEST_CASE("flat-layer reference: no contrast collapses to the incident field") {
    const auto pulse = IncidentPulse::poly_exp(4, 1.0, 1.0, 0.2, 1.0);
    const auto medium = two_layer(1.0, 1.0);
    const cd s(0.5, 2.0);
    const auto ref = oracle::flat_layer_reference(pulse, s, medium);
    CHECK(std::abs(ref.reflection) < 1e-13);
    for (const double z : {0.5, 0.25, 0.0, -0.3, -0.5}) {
        const cd expect = oracle::homogeneous_reference(pulse, s, z, 0.5);
        CHECK(std::abs(ref.eval(z) - expect) / std::abs(expect) < 1e-12);
    }
}

TEST_CASE("flat-layer reference: normal-incidence contrast ratio") {
    // eps below = 4 at normal incidence: |R| = |b1 - b2| / |b1 + b2| = 1/3
    const auto pulse =
        IncidentPulse::poly_exp(4, 1.0, 1.0, 0.0, std::numbers::pi / 2.0);
    const auto medium = two_layer(4.0, 1.0);
    const auto ref = oracle::flat_layer_reference(pulse, cd(2.0, 0.0), medium);
    CHECK(std::abs(ref.reflection) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("flat-layer reference: interface and boundary residuals vanish") {
    const auto pulse = IncidentPulse::poly_exp(4, 0.8, 1.3, 0.4, 0.9);
    for (const auto& params : {std::pair{2.0, 1.0}, std::pair{4.0, 1.5}, std::pair{1.5, 2.0}}) {
        const auto medium = two_layer(params.first, params.second);
        for (const cd s : {cd(0.4, 5.0), cd(1.3, -2.0), cd(3.0, 11.0)}) {
            const auto ref = oracle::flat_layer_reference(pulse, s, medium);
            const double h0 = ref.h0;
            const double delta = 1e-9;
            // continuity of U and mu^-1 dU/dz across the interface
            const cd above = ref.eval(h0 + delta);
            const cd below = ref.eval(h0 - delta);
            CHECK(std::abs(above - below) / std::abs(above) < 1e-6);
            const cd flux_hi = ref.eval_dz(h0 + delta) / ref.mu_hi;
            const cd flux_lo = ref.eval_dz(h0 - delta) / ref.mu_lo;
            CHECK(std::abs(flux_hi - flux_lo) / std::abs(flux_hi) < 1e-6);

            // boundary rows
            const cd rho = rho_hat_coefficient(pulse, s);
            const cd res_top =
                ref.eval_dz(0.5) - (ref.beta_hi * ref.eval(0.5) + rho);
            const cd res_bot = -ref.eval_dz(-0.5) - ref.beta_lo * ref.eval(-0.5);
            const double scale = std::abs(rho) + std::abs(ref.eval(0.5));
            CHECK(std::abs(res_top) / scale < 1e-12);
            CHECK(std::abs(res_bot) / scale < 1e-12);
        }
    }
}

TEST_CASE("flat-layer reference exact-residual form at the interface") {
    // evaluate the continuity residuals exactly (no finite differencing)
    const auto pulse = IncidentPulse::poly_exp(4, 1.0, 1.0, 0.1, 1.2);
    const auto medium = two_layer(3.0, 1.4);
    const cd s(0.9, 4.0);
    const auto ref = oracle::flat_layer_reference(pulse, s, medium);
    const cd hi = ref.up_hi * std::exp(ref.beta_hi * (ref.h0 - ref.h1)) +
                  ref.down_hi * std::exp(-ref.beta_hi * (ref.h0 - ref.h1));
    const cd lo = ref.up_lo * std::exp(ref.beta_lo * (ref.h0 - ref.h2)) +
                  ref.down_lo * std::exp(-ref.beta_lo * (ref.h0 - ref.h2));
    CHECK(std::abs(hi - lo) / std::abs(hi) < 1e-12);
}

TEST_CASE("two-layer convergence against the reference") {
    const auto pulse = IncidentPulse::poly_exp(4, 1.0, 1.0, 0.3, std::numbers::pi / 3.0);
    const std::vector<int> sizes = {8, 16, 32};
    const auto rows = oracle::convergence_two_layer(pulse, cd(0.4, 5.0), sizes, 1.0, 0.5,
                                                    -0.5, 0.0, 2.0, 1.0);
    CHECK(rows[1].observed_order > 1.9);
    CHECK(rows[2].observed_order > 1.9);
    CHECK(rows[2].observed_order < 2.3);
}

TEST_CASE("dense DtN reference basics") {
    const Layer layer{0.5, 1.0, 1.0};
    const auto medium =
        build_layered(std::span(&layer, 1), 1.0, 0.5, -0.5, 8, 8, ExteriorMedia{});
    const auto table = make_symbol_table(medium, 0.2, 1, 8, cd(1.0, 1.0));

    BoundaryTrace zero;
    zero.side = 1;
    zero.period = 1.0;
    zero.values.assign(8, cd(0.0, 0.0));
    for (const auto& v : oracle::dense_dtn_reference(zero, table).values)
        CHECK(std::abs(v) == 0.0);

    BoundaryTrace mode;
    mode.side = 1;
    mode.period = 1.0;
    mode.values.resize(8);
    for (int i = 0; i < 8; ++i)
        mode.values[i] = std::polar(1.0, 2.0 * std::numbers::pi * 2.0 * i / 8.0);
    const auto out = oracle::dense_dtn_reference(mode, table);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(out.values[i] - table.beta[2] * mode.values[i]) < 1e-12);
}
