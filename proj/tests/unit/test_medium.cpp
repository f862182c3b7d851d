#include <doctest.h>

#include <algorithm>
#include <span>
#include <vector>

#include "gratetd/errors.hpp"
#include "gratetd/medium.hpp"

using namespace gratetd;

namespace {

MediumModel identity_medium(int n = 8) {
    const Layer layer{0.5, 1.0, 1.0};
    return build_layered(std::span(&layer, 1), 1.0, 0.5, -0.5, n, n, ExteriorMedia{});
}

} // namespace

TEST_CASE("homogeneous identity medium validates") {
    const auto m = identity_medium();
    CHECK(validate(m).empty());
    CHECK(m.eps_min() == 1.0);
    CHECK(m.eps_max() == 1.0);
    CHECK(m.x_independent());
}

TEST_CASE("two-layer construction reads back the lower layer at the bottom") {
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.0, 4.0, 1.0}};
    ExteriorMedia ext;
    ext.eps2 = 4.0;
    const auto m = build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ext);
    CHECK(validate(m).empty());
    CHECK(m.eps(0, 0) == 4.0); // cell adjacent to the bottom boundary
    CHECK(m.eps(0, m.nz - 1) == 1.0);
}

TEST_CASE("layer below the free-space product is rejected by name") {
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.0, 0.5, 1.0}};
    CHECK_THROWS_AS(build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ExteriorMedia{}), Error);
    try {
        build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ExteriorMedia{});
    } catch (const Error& e) {
        CHECK(e.code() == "epsmu_below_freespace");
    }
}

TEST_CASE("non-monotone layer boundaries are rejected") {
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.2, 2.0, 1.0}, {0.3, 3.0, 1.0}};
    try {
        build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ExteriorMedia{});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "layer_order");
    }
}

TEST_CASE("flat grating profile reproduces the two-layer build") {
    ExteriorMedia ext;
    ext.eps2 = 4.0;
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.0, 4.0, 1.0}};
    const auto layered = build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ext);

    const std::vector<double> profile(8, 0.0);
    const auto grating =
        build_binary_grating(profile, 1.0, 1.0, 4.0, 1.0, 1.0, 0.5, -0.5, 8, 8, ext);
    CHECK(grating.eps_cells == layered.eps_cells);
    CHECK(grating.mu_cells == layered.mu_cells);
}

TEST_CASE("lamellar duty cycle 0.5 raises exactly half the columns") {
    ExteriorMedia ext;
    ext.eps2 = 2.0;
    std::vector<double> profile(8);
    for (int i = 0; i < 8; ++i) profile[i] = (i + 0.5) / 8.0 < 0.5 ? 0.25 : -0.25;
    const auto m = build_binary_grating(profile, 1.0, 1.0, 2.0, 1.0, 1.0, 0.5, -0.5,
                                        8, 16, ext);
    int raised = 0;
    for (int i = 0; i < 8; ++i)
        if (m.eps(i, 8) == 2.0) ++raised; // cell just above z = 0
    CHECK(raised == 4);
}

TEST_CASE("profile touching the strip top is rejected") {
    const std::vector<double> profile(8, 0.5);
    try {
        build_binary_grating(profile, 1.0, 1.0, 2.0, 1.0, 1.0, 0.5, -0.5, 8, 8,
                             ExteriorMedia{1, 1, 2, 1});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "profile_out_of_range");
    }
}

TEST_CASE("validate reports mutated models by invariant name") {
    auto m = identity_medium();
    m.eps_cells[3] = 0.0;
    const auto report = validate(m);
    CHECK(std::find(report.begin(), report.end(), "positivity") != report.end());

    auto m2 = identity_medium();
    m2.eps_cells[m2.cell(0, m2.nz - 1)] = 2.0; // top boundary cell no longer eps1
    const auto report2 = validate(m2);
    CHECK(std::find(report2.begin(), report2.end(), "exterior_constancy") != report2.end());
}

TEST_CASE("polarization swap is an involution preserving eps*mu") {
    const std::vector<Layer> layers = {{0.5, 1.0, 1.0}, {0.0, 2.0, 1.5}};
    ExteriorMedia ext{1.0, 1.0, 2.0, 1.5};
    const auto m = build_layered(layers, 1.0, 0.5, -0.5, 8, 8, ext);

    const auto sw = swap_polarization(m);
    CHECK(sw.polarization == Polarization::TM);
    CHECK(sw.eps(0, 0) == m.mu(0, 0));
    CHECK(sw.mu(0, 0) == m.eps(0, 0));
    for (std::size_t c = 0; c < m.eps_cells.size(); ++c)
        CHECK(sw.eps_cells[c] * sw.mu_cells[c] == m.eps_cells[c] * m.mu_cells[c]);

    const auto back = swap_polarization(sw);
    CHECK(back.eps_cells == m.eps_cells);
    CHECK(back.mu_cells == m.mu_cells);
    CHECK(back.polarization == m.polarization);

    const auto id = identity_medium();
    const auto id_sw = swap_polarization(id);
    CHECK(id_sw.eps_cells == id.eps_cells); // fixed point up to the tag
    CHECK(id_sw.polarization == Polarization::TM);
}
